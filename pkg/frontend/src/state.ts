// Editor state and pure transition functions. All numeric work happens in
// the service; this module only validates input syntax and tracks what the
// server last confirmed.

import type {
  ConstraintRow,
  InfeasibleBody,
  ProblemState,
  Scale,
  SolveResult,
} from "./types.js";

export interface WhatIfState {
  previews: ConstraintRow[];
  result: SolveResult | null;
  infeasible: InfeasibleBody | null;
}

export interface EditorState {
  problemId: string | null;
  scale: Scale;
  n: number;
  labels: string[];
  autoReciprocal: boolean;
  /** entry text as last confirmed by the server, [row][col] */
  cells: string[][];
  constraints: ConstraintRow[];
  revision: number;
  dirty: boolean;
  solving: boolean;
  result: SolveResult | null;
  whatIf: WhatIfState | null;
  lastError: string | null;
}

const FRACTION = /^\d+(\/\d+)?$|^\d+\.\d+$/;
const SIGNED = /^-?\d+(\/\d+)?$|^-?\d+\.\d+$/;

/** Syntax check for one cell; parsing to numbers stays server-side.
 * Multiplicative entries are positive fractions/decimals; additive entries
 * are signed fractions/decimals or "-inf". Returns an error message or null. */
export function cellSyntaxError(text: string, scale: Scale): string | null {
  const t = text.trim();
  if (t === "") return "enter a value";
  if (scale === "max-plus") {
    if (t === "-inf" || SIGNED.test(t)) return null;
    return "expected a number, fraction like -3/2, or -inf";
  }
  if (!FRACTION.test(t)) return "expected a positive fraction like 3/4 or a decimal";
  if (/^0+(\.0+)?$/.test(t) || /^0+\//.test(t)) return "comparisons must be positive";
  return null;
}

export function constraintSyntaxError(text: string, scale: Scale): string | null {
  // constraints allow the semifield zero (= "no bound")
  const t = text.trim();
  if (t === "") return "enter a value";
  if (scale === "max-plus") {
    if (t === "-inf" || SIGNED.test(t)) return null;
    return "expected a number, fraction, or -inf";
  }
  if (!FRACTION.test(t) && t !== "0") return "expected a nonnegative fraction or decimal";
  return null;
}

export function initialState(scale: Scale = "max-times", n = 4): EditorState {
  return {
    problemId: null,
    scale,
    n,
    labels: Array.from({ length: n }, (_, i) => `alt${i + 1}`),
    autoReciprocal: true,
    cells: defaultCells(scale, n),
    constraints: [],
    revision: 0,
    dirty: true,
    solving: false,
    result: null,
    whatIf: null,
    lastError: null,
  };
}

export function defaultCells(scale: Scale, n: number): string[][] {
  const unit = scale === "max-plus" ? "0" : "1";
  return Array.from({ length: n }, () => Array<string>(n).fill(unit));
}

/** Fold the authoritative server state into the editor: grid text, the
 * constraint list, revision, and staleness all come from the service. */
export function applyServerState(state: EditorState, server: ProblemState): EditorState {
  const zero = server.scale === "max-plus" ? "-inf" : "0";
  const constraints: ConstraintRow[] = [];
  if (server.constraints) {
    server.constraints.forEach((row, i) =>
      row.forEach((value, j) => {
        if (value !== zero) constraints.push({ i, j, value });
      }),
    );
  }
  const matrix = server.matrices[0];
  if (!matrix) throw new Error("server state carries no matrix");
  const result = server.last_result
    ? { ...server.last_result }
    : state.result;
  return {
    ...state,
    problemId: server.id,
    scale: server.scale,
    n: server.labels.length,
    labels: [...server.labels],
    autoReciprocal: server.auto_reciprocal,
    cells: matrix.map((row) => [...row]),
    constraints,
    revision: server.revision,
    result,
    dirty: !result || server.last_result?.stale === true || result.revision !== server.revision,
    lastError: null,
  };
}

export function applySolveResult(state: EditorState, result: SolveResult): EditorState {
  return {
    ...state,
    result,
    solving: false,
    dirty: result.revision !== state.revision,
    lastError: null,
  };
}

/** Both cells visually linked under auto-reciprocal: the mirror text is
 * whatever the server wrote, so the caller re-fetches state after an edit;
 * here we only mark the pair for highlighting. */
export function reciprocalPartner(
  state: EditorState,
  i: number,
  j: number,
): [number, number] | null {
  return state.autoReciprocal && i !== j ? [j, i] : null;
}

export function markSolving(state: EditorState): EditorState {
  return { ...state, solving: true, lastError: null };
}

export function markError(state: EditorState, message: string): EditorState {
  return { ...state, solving: false, lastError: message };
}

export function setWhatIf(state: EditorState, whatIf: WhatIfState | null): EditorState {
  return { ...state, whatIf };
}

/** Ranking groups rendered as "alt1 > alt2 = alt3". */
export function formatRanking(groups: string[][]): string {
  return groups.map((g) => g.join(" = ")).join(" > ");
}
