// DOM rendering. Pure functions of the editor state plus handler callbacks;
// every displayed number is the server's exact string, verbatim.

import type { EditorState } from "./state.js";
import { formatRanking } from "./state.js";
import type { CandidateJson, InfeasibleBody, SolveResult } from "./types.js";

export interface Handlers {
  onCellEdit(i: number, j: number, text: string): void;
  onConstraintAdd(i: number, j: number, value: string): void;
  onSolve(): void;
  onWhatIfPreview(i: number, j: number, value: string): void;
  onWhatIfClear(): void;
  onNewProblem(n: number, scale: "max-times" | "max-plus", labels: string[]): void;
  onToggleAutoReciprocal(on: boolean): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: (Node | string)[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) {
    if (k === "class") node.className = v;
    else node.setAttribute(k, v);
  }
  node.append(...children);
  return node;
}

function worstTripleCells(result: SolveResult | null): Set<string> {
  const triple = result?.consistency.worst_triple;
  if (!triple) return new Set();
  const [i, k, j] = triple;
  return new Set([`${i},${j}`, `${i},${k}`, `${k},${j}`]);
}

export function renderGrid(state: EditorState, handlers: Handlers): HTMLElement {
  const highlight = worstTripleCells(state.result);
  const table = el("table", { class: "grid" });
  const head = el("tr", {}, el("th"));
  state.labels.forEach((lab) => head.append(el("th", {}, lab)));
  table.append(head);
  state.cells.forEach((row, i) => {
    const tr = el("tr", {}, el("th", {}, state.labels[i] ?? `alt${i + 1}`));
    row.forEach((value, j) => {
      const input = el("input", {
        class: "cell",
        value,
        "data-cell": `${i},${j}`,
      }) as HTMLInputElement;
      if (i === j) input.disabled = true;
      input.addEventListener("change", () => handlers.onCellEdit(i, j, input.value));
      const td = el("td", {}, input);
      if (highlight.has(`${i},${j}`)) td.classList.add("worst-triple");
      tr.append(td);
    });
    table.append(tr);
  });
  return table;
}

function constraintForm(
  state: EditorState,
  submit: (i: number, j: number, value: string) => void,
  idPrefix: string,
): HTMLElement {
  const options = state.labels
    .map((lab, idx) => `<option value="${idx}">${lab}</option>`)
    .join("");
  const selI = el("select", { id: `${idPrefix}-i` });
  selI.innerHTML = options;
  const selJ = el("select", { id: `${idPrefix}-j` });
  selJ.innerHTML = options;
  const value = el("input", { id: `${idPrefix}-value`, placeholder: "c" }) as HTMLInputElement;
  const button = el("button", {}, "add");
  button.addEventListener("click", () =>
    submit(
      Number((selI as HTMLSelectElement).value),
      Number((selJ as HTMLSelectElement).value),
      value.value,
    ),
  );
  return el(
    "div",
    { class: "constraint-form" },
    "score(",
    selI,
    ") ≥ c × score(",
    selJ,
    ") with c = ",
    value,
    button,
  );
}

export function renderConstraints(state: EditorState, handlers: Handlers): HTMLElement {
  const box = el("div", { class: "constraints" }, el("h3", {}, "score constraints"));
  const list = el("ul");
  const cycle = new Set(
    (state.whatIf?.infeasible?.cycle ?? []).map((v, idx, arr) =>
      idx < arr.length - 1 ? `${v},${arr[idx + 1]}` : "",
    ),
  );
  state.constraints.forEach((c) => {
    const item = el(
      "li",
      { "data-constraint": `${c.i},${c.j}` },
      `${state.labels[c.i]} ≥ ${c.value} × ${state.labels[c.j]}`,
    );
    if (cycle.has(`${c.j},${c.i}`) || cycle.has(`${c.i},${c.j}`)) {
      item.classList.add("in-cycle");
    }
    list.append(item);
  });
  box.append(list, constraintForm(state, handlers.onConstraintAdd, "constraint"));
  return box;
}

function candidateBlock(cand: CandidateJson, labels: string[]): HTMLElement {
  const box = el("div", { class: cand.is_uniform ? "candidate uniform" : "candidate" });
  const title = cand.is_uniform
    ? "uniform candidate (ranks all alternatives equal)"
    : `candidate from generator columns ${cand.columns.map((c) => c + 1).join(", ")}`;
  box.append(el("h4", {}, title));
  const scores = el("table", { class: "scores" });
  const head = el("tr");
  labels.forEach((lab) => head.append(el("th", {}, lab)));
  scores.append(head);
  const row = el("tr");
  cand.scores.forEach((s) => row.append(el("td", { class: "score" }, s)));
  scores.append(row);
  if (cand.normalized.sum_to_one) {
    const wrow = el("tr", { class: "weights" });
    cand.normalized.sum_to_one.forEach((w) => wrow.append(el("td", {}, w)));
    scores.append(wrow);
  }
  box.append(scores, el("p", { class: "ranking" }, formatRanking(cand.ranking)));
  return box;
}

export function renderResult(result: SolveResult | null, stale: boolean): HTMLElement {
  const box = el("div", { class: "result-panel" });
  if (!result) {
    box.append(el("p", { class: "placeholder" }, "no solve yet"));
    return box;
  }
  if (stale) box.append(el("p", { class: "stale" }, "edited since last solve; re-solve to refresh"));
  box.append(el("p", { class: "minimum" }, `minimum approximation error: ${result.minimum}`));
  box.append(el("p", { class: "headline-ranking" }, `ranking: ${formatRanking(result.ranking)}`));
  result.candidates.forEach((cand) => box.append(candidateBlock(cand, result.labels)));
  const c = result.consistency;
  const worst = c.worst_triple
    ? ` worst triple: (${c.worst_triple.map((i) => result.labels[i]).join(", ")})`
    : "";
  box.append(
    el(
      "p",
      { class: "consistency" },
      `reciprocal: ${c.is_reciprocal ? "yes" : "no"} (defect ${c.max_reciprocity_defect}), ` +
        `consistent: ${c.is_consistent ? "yes" : "no"} (defect ${c.max_transitivity_defect}).` +
        worst,
    ),
  );
  result.warnings.forEach((w) => box.append(el("p", { class: "warning" }, w)));
  return box;
}

export function renderInfeasible(body: InfeasibleBody, labels: string[]): HTMLElement {
  const box = el("div", { class: "infeasible" });
  box.append(el("h4", {}, "constraints admit no solution"));
  if (body.cycle) {
    const path = body.cycle.map((i) => labels[i] ?? String(i)).join(" → ");
    box.append(
      el(
        "p",
        { class: "cycle" },
        `violating cycle: ${path} (product ${body.cycle_value ?? "?"} exceeds the unit)`,
      ),
    );
  } else {
    box.append(el("p", {}, body.detail));
  }
  return box;
}

export function renderWhatIf(state: EditorState, handlers: Handlers): HTMLElement {
  const box = el("div", { class: "what-if" }, el("h3", {}, "what-if preview"));
  box.append(constraintForm(state, handlers.onWhatIfPreview, "whatif"));
  const w = state.whatIf;
  if (w) {
    const clear = el("button", {}, "clear preview");
    clear.addEventListener("click", handlers.onWhatIfClear);
    box.append(clear);
    const side = el("div", { class: "side-by-side" });
    side.append(
      el(
        "div",
        { class: "pane" },
        el("h4", {}, "current"),
        renderResult(state.result, false),
      ),
    );
    const preview = el("div", { class: "pane" }, el("h4", {}, "previewed"));
    if (w.infeasible) preview.append(renderInfeasible(w.infeasible, state.labels));
    else preview.append(renderResult(w.result, false));
    side.append(preview);
    box.append(side);
  }
  return box;
}

export function render(root: HTMLElement, state: EditorState, handlers: Handlers): void {
  root.replaceChildren();
  const status = state.solving
    ? "solving…"
    : state.dirty
      ? "edited; solve to refresh"
      : "up to date";
  const solveButton = el("button", { class: "solve" }, "solve");
  solveButton.addEventListener("click", handlers.onSolve);
  const auto = el("input", { type: "checkbox", id: "auto-reciprocal" }) as HTMLInputElement;
  auto.checked = state.autoReciprocal;
  auto.disabled = state.problemId !== null;
  auto.addEventListener("change", () => handlers.onToggleAutoReciprocal(auto.checked));
  root.append(
    el(
      "div",
      { class: "toolbar" },
      solveButton,
      el("span", { class: "status" }, status),
      el("label", {}, auto, " auto-reciprocal"),
      el("span", { class: "scale" }, `scale: ${state.scale}`),
    ),
  );
  if (state.lastError) root.append(el("p", { class: "error" }, state.lastError));
  root.append(renderGrid(state, handlers));
  root.append(renderConstraints(state, handlers));
  root.append(el("h3", {}, "result"), renderResult(state.result, state.dirty));
  root.append(renderWhatIf(state, handlers));
}
