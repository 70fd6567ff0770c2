import type {
  InfeasibleBody,
  ProblemCreateRequest,
  ProblemCreateResponse,
  ProblemState,
  RevisionResponse,
  SolveResult,
} from "./types.js";

export class ApiError extends Error {
  constructor(
    public status: number,
    public detail: string,
  ) {
    super(`HTTP ${status}: ${detail}`);
  }
}

export class InfeasibleError extends ApiError {
  constructor(
    public body: InfeasibleBody,
  ) {
    super(422, body.detail);
  }
}

async function request<T>(base: string, path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(`${base}${path}`, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  if (!res.ok) {
    let detail = res.statusText;
    let body: unknown = null;
    try {
      body = await res.json();
      detail = (body as { detail?: string }).detail ?? detail;
    } catch {
      // non-JSON error body; keep the status text
    }
    if (res.status === 422 && body && typeof body === "object" && "cycle" in body) {
      throw new InfeasibleError(body as InfeasibleBody);
    }
    throw new ApiError(res.status, detail);
  }
  return res.json() as Promise<T>;
}

export class RatingClient {
  constructor(public base: string = "") {}

  createProblem(problem: ProblemCreateRequest): Promise<ProblemCreateResponse> {
    return request(this.base, "/api/problems", {
      method: "POST",
      body: JSON.stringify(problem),
    });
  }

  putEntry(
    id: string,
    i: number,
    j: number,
    value: string,
    matrix = 0,
  ): Promise<RevisionResponse> {
    return request(this.base, `/api/problems/${id}/entry`, {
      method: "PUT",
      body: JSON.stringify({ i, j, value, matrix }),
    });
  }

  putConstraint(id: string, i: number, j: number, value: string): Promise<RevisionResponse> {
    return request(this.base, `/api/problems/${id}/constraint`, {
      method: "PUT",
      body: JSON.stringify({ i, j, value }),
    });
  }

  solve(id: string): Promise<SolveResult> {
    return request(this.base, `/api/problems/${id}/solve`, { method: "POST" });
  }

  getProblem(id: string): Promise<ProblemState> {
    return request(this.base, `/api/problems/${id}`);
  }

  /** Side-by-side preview: solve a throwaway copy of the problem with extra
   * constraints, leaving the edited problem untouched. */
  async whatIf(
    state: ProblemState,
    previews: { i: number; j: number; value: string }[],
  ): Promise<SolveResult> {
    const n = state.labels.length;
    const zero = state.scale === "max-plus" ? "-inf" : "0";
    const constraints = state.constraints
      ? state.constraints.map((row) => [...row])
      : Array.from({ length: n }, () => Array<string>(n).fill(zero));
    for (const p of previews) {
      const row = constraints[p.i];
      if (!row) throw new ApiError(400, `constraint row ${p.i} out of range`);
      row[p.j] = p.value;
    }
    const copy = await this.createProblem({
      scale: state.scale,
      backend: state.backend as "exact" | "float",
      labels: state.labels,
      matrices: state.matrices,
      constraints,
      auto_reciprocal: false,
    });
    return this.solve(copy.id);
  }
}
