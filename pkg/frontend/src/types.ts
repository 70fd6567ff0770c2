// Wire types of the rating service API. Exact scalars travel as strings
// ("1/6", "12^(1/2)") and are rendered verbatim; the UI never does numerics.

export type Scale = "max-times" | "max-plus";

export interface ProblemCreateRequest {
  scale: Scale;
  backend?: "exact" | "float";
  labels?: string[];
  matrices: string[][][];
  constraints?: string[][] | null;
  auto_reciprocal?: boolean;
}

export interface ProblemCreateResponse {
  id: string;
  revision: number;
}

export interface RevisionResponse {
  revision: number;
}

export interface CandidateJson {
  scores: string[];
  columns: number[];
  is_uniform: boolean;
  normalized: {
    max_to_one: string[];
    sum_to_one: string[] | null;
  };
  ranking: string[][];
}

export interface ConsistencyJson {
  is_reciprocal: boolean;
  max_reciprocity_defect: string;
  is_consistent: boolean;
  max_transitivity_defect: string;
  worst_triple: [number, number, number] | null;
}

export interface SolveResult {
  scale: Scale;
  backend: string;
  labels: string[];
  minimum: string;
  candidates: CandidateJson[];
  ranking: string[][];
  consistency: ConsistencyJson;
  warnings: string[];
  revision: number;
  stale: boolean;
}

export interface ProblemState {
  id: string;
  scale: Scale;
  backend: string;
  labels: string[];
  auto_reciprocal: boolean;
  revision: number;
  matrices: string[][][];
  constraints: string[][] | null;
  last_result: (SolveResult & { stale: boolean }) | null;
}

export interface InfeasibleBody {
  detail: string;
  cycle: number[] | null;
  cycle_value: string | null;
}

export interface ConstraintRow {
  i: number;
  j: number;
  value: string;
}
