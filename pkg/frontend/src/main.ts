// Bootstrap and event wiring: keeps one EditorState, funnels every change
// through the service, and re-renders from the server's confirmed state.

import { ApiError, InfeasibleError, RatingClient } from "./api.js";
import { render, type Handlers } from "./render.js";
import {
  applyServerState,
  applySolveResult,
  cellSyntaxError,
  constraintSyntaxError,
  defaultCells,
  initialState,
  markError,
  markSolving,
  setWhatIf,
  type EditorState,
} from "./state.js";

const client = new RatingClient(
  (window as { TROPRANK_API_BASE?: string }).TROPRANK_API_BASE ?? "",
);

let state: EditorState = initialState();
const root = document.getElementById("app") as HTMLElement;

function update(next: EditorState): void {
  state = next;
  render(root, state, handlers);
}

async function refreshFromServer(): Promise<void> {
  if (!state.problemId) return;
  update(applyServerState(state, await client.getProblem(state.problemId)));
}

async function ensureProblem(): Promise<string> {
  if (state.problemId) return state.problemId;
  const created = await client.createProblem({
    scale: state.scale,
    labels: state.labels,
    matrices: [state.cells],
    auto_reciprocal: state.autoReciprocal,
  });
  state = { ...state, problemId: created.id, revision: created.revision };
  return created.id;
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return err.detail;
  return err instanceof Error ? err.message : String(err);
}

const handlers: Handlers = {
  onCellEdit(i, j, text) {
    const syntax = cellSyntaxError(text, state.scale);
    if (syntax) {
      update(markError(state, `cell ${state.labels[i]}/${state.labels[j]}: ${syntax}`));
      return;
    }
    void (async () => {
      try {
        const id = await ensureProblem();
        await client.putEntry(id, i, j, text.trim());
        await refreshFromServer();
      } catch (err) {
        update(markError(state, describe(err)));
      }
    })();
  },

  onConstraintAdd(i, j, value) {
    const syntax = constraintSyntaxError(value, state.scale);
    if (syntax) {
      update(markError(state, `constraint: ${syntax}`));
      return;
    }
    void (async () => {
      try {
        const id = await ensureProblem();
        await client.putConstraint(id, i, j, value.trim());
        await refreshFromServer();
      } catch (err) {
        update(markError(state, describe(err)));
      }
    })();
  },

  onSolve() {
    void (async () => {
      update(markSolving(state));
      try {
        const id = await ensureProblem();
        const result = await client.solve(id);
        update(applySolveResult({ ...state, solving: false }, result));
      } catch (err) {
        if (err instanceof InfeasibleError) {
          update(
            setWhatIf(markError(state, err.detail), {
              previews: [],
              result: null,
              infeasible: err.body,
            }),
          );
          return;
        }
        update(markError(state, describe(err)));
      }
    })();
  },

  onWhatIfPreview(i, j, value) {
    const syntax = constraintSyntaxError(value, state.scale);
    if (syntax) {
      update(markError(state, `what-if: ${syntax}`));
      return;
    }
    void (async () => {
      try {
        const id = await ensureProblem();
        const server = await client.getProblem(id);
        const previews = [...(state.whatIf?.previews ?? []), { i, j, value: value.trim() }];
        try {
          const result = await client.whatIf(server, previews);
          update(setWhatIf(state, { previews, result, infeasible: null }));
        } catch (err) {
          if (err instanceof InfeasibleError) {
            update(setWhatIf(state, { previews, result: null, infeasible: err.body }));
            return;
          }
          throw err;
        }
      } catch (err) {
        update(markError(state, describe(err)));
      }
    })();
  },

  onWhatIfClear() {
    update(setWhatIf(state, null));
  },

  onNewProblem(n, scale, labels) {
    state = initialState(scale, n);
    state = { ...state, labels, cells: defaultCells(scale, n) };
    update(state);
  },

  onToggleAutoReciprocal(on) {
    if (state.problemId === null) update({ ...state, autoReciprocal: on });
  },
};

update(state);
