import { describe, expect, it } from "vitest";

import {
  applyServerState,
  applySolveResult,
  cellSyntaxError,
  constraintSyntaxError,
  formatRanking,
  initialState,
  reciprocalPartner,
} from "../src/state.js";
import type { ProblemState, SolveResult } from "../src/types.js";

describe("cell syntax validation", () => {
  it("accepts fractions, integers, decimals on the multiplicative scale", () => {
    for (const ok of ["3", "1/3", "0.25", "12/5"]) {
      expect(cellSyntaxError(ok, "max-times")).toBeNull();
    }
  });

  it("rejects non-numbers, negatives, and zero on the multiplicative scale", () => {
    for (const bad of ["abc", "-2", "0", "0.0", "0/3", ""]) {
      expect(cellSyntaxError(bad, "max-times")).not.toBeNull();
    }
  });

  it("accepts signed values and -inf on the additive scale", () => {
    for (const ok of ["-2", "3/2", "-1/2", "0", "-inf"]) {
      expect(cellSyntaxError(ok, "max-plus")).toBeNull();
    }
    expect(cellSyntaxError("nope", "max-plus")).not.toBeNull();
  });

  it("constraints may be zero (no bound) on the multiplicative scale", () => {
    expect(constraintSyntaxError("0", "max-times")).toBeNull();
    expect(constraintSyntaxError("2/3", "max-times")).toBeNull();
    expect(constraintSyntaxError("-1", "max-times")).not.toBeNull();
  });
});

const serverState: ProblemState = {
  id: "p1",
  scale: "max-times",
  backend: "exact",
  labels: ["a", "b"],
  auto_reciprocal: true,
  revision: 3,
  matrices: [
    [
      ["1", "5"],
      ["1/5", "1"],
    ],
  ],
  constraints: [
    ["0", "2"],
    ["0", "0"],
  ],
  last_result: null,
};

describe("applyServerState", () => {
  it("adopts the server grid, constraints, and revision", () => {
    const next = applyServerState(initialState(), serverState);
    expect(next.problemId).toBe("p1");
    expect(next.cells[0]?.[1]).toBe("5");
    expect(next.cells[1]?.[0]).toBe("1/5");
    expect(next.constraints).toEqual([{ i: 0, j: 1, value: "2" }]);
    expect(next.revision).toBe(3);
    expect(next.dirty).toBe(true); // nothing solved yet
  });

  it("keeps a fresh result clean and marks older ones dirty", () => {
    const result = {
      minimum: "2",
      revision: 3,
      stale: false,
      labels: ["a", "b"],
      candidates: [],
      ranking: [],
      consistency: {
        is_reciprocal: true,
        max_reciprocity_defect: "1",
        is_consistent: true,
        max_transitivity_defect: "1",
        worst_triple: null,
      },
      warnings: [],
      scale: "max-times",
      backend: "exact",
    } as SolveResult;
    const withResult = applyServerState(initialState(), {
      ...serverState,
      last_result: { ...result, stale: false },
    });
    expect(withResult.dirty).toBe(false);
    const staleState = applyServerState(initialState(), {
      ...serverState,
      revision: 4,
      last_result: { ...result, stale: true },
    });
    expect(staleState.dirty).toBe(true);
  });
});

describe("solve bookkeeping", () => {
  it("clears dirtiness when the result matches the revision", () => {
    let state = applyServerState(initialState(), serverState);
    state = applySolveResult(state, {
      minimum: "2",
      revision: 3,
      stale: false,
      labels: ["a", "b"],
      candidates: [],
      ranking: [["a"], ["b"]],
      consistency: {
        is_reciprocal: true,
        max_reciprocity_defect: "1",
        is_consistent: true,
        max_transitivity_defect: "1",
        worst_triple: null,
      },
      warnings: [],
      scale: "max-times",
      backend: "exact",
    });
    expect(state.dirty).toBe(false);
    expect(state.result?.minimum).toBe("2");
  });
});

describe("reciprocal linking", () => {
  it("points at the mirrored cell in auto mode, off-diagonal only", () => {
    const state = { ...initialState(), autoReciprocal: true };
    expect(reciprocalPartner(state, 0, 2)).toEqual([2, 0]);
    expect(reciprocalPartner(state, 1, 1)).toBeNull();
    expect(reciprocalPartner({ ...state, autoReciprocal: false }, 0, 2)).toBeNull();
  });
});

describe("ranking formatting", () => {
  it("joins ties with = and groups with >", () => {
    expect(formatRanking([["alt1"], ["alt2", "alt3", "alt4"]])).toBe(
      "alt1 > alt2 = alt3 = alt4",
    );
  });
});
