"""Rating alternatives from pairwise comparison matrices.

Maps comparison problems onto the approximation solvers: a single matrix,
several matrices approximated simultaneously, or one matrix with lower
bounds between scores (``x_i >= c_ij * x_j``).  Scores are the regular
vectors whose reciprocal rank-1 matrix sits closest to the data in the
Chebyshev-like distance; the solvers return the full solution space, from
which distinct candidates are extracted up to collinearity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction

from .approximation import (
    SolutionSpace,
    minimize_constrained,
    minimize_rayleigh,
)
from .errors import DomainError, UsageError
from .linalg import Matrix, Vector, conjugate_transpose
from .semifield import Backend, MaxTimesExact, Scalar, SemifieldTag

__all__ = [
    "NormalizeMode",
    "ConsistencyReport",
    "CandidateScores",
    "NormalizedScores",
    "RatingProblem",
    "RatingResult",
    "check_consistency",
    "symmetrize",
    "extract_candidates",
    "normalize",
    "rate_single",
    "rate_multi",
    "rate_constrained",
    "solve_problem",
    "ranking_groups",
]


class NormalizeMode(Enum):
    SUM_TO_ONE = "sum"
    MAX_TO_ONE = "max"


@dataclass(frozen=True)
class ConsistencyReport:
    """How far a comparison matrix strays from reciprocity and transitivity.

    Both defects equal the semifield unit exactly when the property holds;
    ``worst_triple`` is the (i, k, j) with the largest transitivity gap,
    or None for a consistent matrix.
    """

    is_reciprocal: bool
    max_reciprocity_defect: Scalar
    is_consistent: bool
    max_transitivity_defect: Scalar
    worst_triple: tuple[int, int, int] | None


@dataclass(frozen=True)
class CandidateScores:
    """One collinearity class of optimal score vectors.

    ``vector`` is the class representative scaled so its top score is the
    unit; ``columns`` lists the generator columns in the class;
    ``is_uniform`` flags the degenerate all-equal vector, which ranks every
    alternative the same and carries no preference information.
    """

    vector: Vector
    columns: tuple[int, ...]
    is_uniform: bool


@dataclass(frozen=True)
class NormalizedScores:
    """Normalization variants of one candidate.

    ``sum_to_one`` uses ordinary arithmetic addition and is None when the
    exact backend cannot represent it (irrational scores) or on the
    additive scale, where it is undefined.
    """

    max_to_one: Vector
    sum_to_one: Vector | None


@dataclass(frozen=True)
class RatingProblem:
    """A pairwise comparison problem: matrices, optional score constraints,
    alternative labels."""

    matrices: tuple[Matrix, ...]
    constraints: Matrix | None = None
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.matrices:
            raise UsageError("a rating problem needs at least one comparison matrix")
        first = self.matrices[0]
        if not first.is_square:
            raise UsageError("comparison matrices must be square")
        for m in self.matrices:
            if m.stype is not first.stype or (m.rows, m.cols) != (first.rows, first.cols):
                raise UsageError("all comparison matrices must share order and kind")
        if self.constraints is not None:
            if len(self.matrices) > 1:
                raise UsageError(
                    "score constraints combine with exactly one comparison matrix; "
                    "constrained simultaneous approximation is undefined"
                )
            c = self.constraints
            if c.stype is not first.stype or (c.rows, c.cols) != (first.rows, first.cols):
                raise UsageError("the constraint matrix must match the comparison matrix")
        labels = self.labels or tuple(f"alt{i + 1}" for i in range(first.rows))
        if len(labels) != first.rows:
            raise UsageError(f"expected {first.rows} labels, got {len(labels)}")
        object.__setattr__(self, "labels", tuple(labels))

    @property
    def order(self) -> int:
        return self.matrices[0].rows

    @property
    def scale(self) -> SemifieldTag:
        return self.matrices[0].stype.tag

    @property
    def backend(self) -> Backend:
        return self.matrices[0].stype.backend


@dataclass(frozen=True)
class RatingResult:
    """Solution of a rating problem: the attained approximation error, the
    candidate score vectors with normalizations, and diagnostics."""

    minimum: Scalar
    candidates: tuple[CandidateScores, ...]
    normalized: tuple[NormalizedScores, ...]
    diagnostics: ConsistencyReport
    solution_space: SolutionSpace
    labels: tuple[str, ...]
    warnings: tuple[str, ...] = field(default=())

    def ranking(self, candidate: int = 0) -> list[list[int]]:
        """Descending score groups (ties together) for one candidate."""
        return ranking_groups(self.candidates[candidate].vector)


def check_consistency(A: Matrix) -> ConsistencyReport:
    """Reciprocity and transitivity defects of a comparison matrix.

    The reciprocity defect is the worst deviation of a_ij * a_ji from the
    unit; the transitivity defect is the worst ratio between a_ij and the
    two-step comparison a_ik * a_kj, in whichever direction it exceeds one.
    A zero entry means the pair was never compared: pairs and triples
    touching one are skipped.  A zero diagonal entry (missing
    self-comparison) leaves the diagnostics undefined.
    """
    if not A.is_square:
        raise UsageError("consistency diagnostics need a square matrix")
    n = A.rows
    if any(A[i, i].is_zero for i in range(n)):
        raise DomainError("consistency diagnostics need nonzero diagonal entries")
    one = A.stype.one

    rec_defect = one
    for i in range(n):
        for j in range(n):
            if A[i, j].is_zero or A[j, i].is_zero:
                continue
            p = A[i, j] * A[j, i]
            rec_defect = rec_defect + p + p.inv()

    trans_defect = one
    worst = None
    for i in range(n):
        for k in range(n):
            for j in range(n):
                if A[i, j].is_zero or A[i, k].is_zero or A[k, j].is_zero:
                    continue
                r = A[i, j] * (A[i, k] * A[k, j]).inv()
                d = r + r.inv()
                if not d.leq(trans_defect):
                    trans_defect = d
                    worst = (i, k, j)

    is_reciprocal = rec_defect.approx_equal(one)
    is_consistent = trans_defect.approx_equal(one)
    return ConsistencyReport(
        is_reciprocal=is_reciprocal,
        max_reciprocity_defect=rec_defect,
        is_consistent=is_consistent,
        max_transitivity_defect=trans_defect,
        worst_triple=None if is_consistent else worst,
    )


def symmetrize(A: Matrix) -> Matrix:
    """Combine a comparison matrix with its conjugate transpose.

    The result B = A + conj(A) carries the symmetric objective
    x^- B x = rho(A, x x^-) and fixes one-sided judgments; reciprocal
    inputs come back unchanged.  B must end up with no zero entries (a
    pair compared in neither direction, or a zero diagonal, leaves the
    problem undefined).
    """
    if not A.is_square:
        raise UsageError("symmetrize needs a square matrix")
    B = A + conjugate_transpose(A)
    if not B.is_positive:
        raise DomainError(
            "comparison data leaves some pair without a nonzero entry in "
            "either direction; the combined matrix has zero entries"
        )
    return B


def _max_entry(x: Vector) -> Scalar:
    acc = x.entries[0]
    for e in x.entries[1:]:
        acc = acc + e
    return acc


def normalize(x: Vector, mode: NormalizeMode) -> Vector:
    """Rescale a regular score vector.

    MAX_TO_ONE divides by the top score (works on both scales).
    SUM_TO_ONE makes the ordinary arithmetic sum equal one; it is defined
    for the multiplicative scale only, and on the exact backend only when
    every score is rational.
    """
    if not x.is_regular:
        raise DomainError("normalization needs a regular vector")
    if mode is NormalizeMode.MAX_TO_ONE:
        return _max_entry(x).inv() * x
    if x.stype.tag is not SemifieldTag.MAX_TIMES:
        raise UsageError("sum-to-one weights are defined on the multiplicative scale only")
    if x.stype.backend is Backend.EXACT:
        if any(e.root != 1 for e in x.entries):
            raise DomainError(
                "sum-to-one weights are irrational here (scores carry roots); "
                "use max-to-one or the float backend"
            )
        total = sum(e.base for e in x.entries)
        return MaxTimesExact.of(Fraction(1) / total) * x
    total = sum(e.value for e in x.entries)
    return x.stype(1.0 / total) * x


def _sum_to_one_or_none(x: Vector) -> Vector | None:
    try:
        return normalize(x, NormalizeMode.SUM_TO_ONE)
    except (DomainError, UsageError):
        return None


def extract_candidates(generator: Matrix) -> list[CandidateScores]:
    """Group generator columns into collinearity classes.

    Each class is represented by its max-to-one scaling (collinear columns
    share one, and the zero pattern must match); the all-equal vector, when
    present, is flagged as uniform.
    """
    if not generator.is_square:
        raise UsageError("candidate extraction expects a square generator")
    exact = generator.stype.backend is Backend.EXACT
    classes: list[tuple[Vector, list[int]]] = []
    for j, col in enumerate(generator.columns()):
        top = _max_entry(col)
        if top.is_zero:
            raise DomainError(f"generator column {j} is all zero")
        rep = top.inv() * col
        for existing, members in classes:
            same = rep == existing if exact else rep.approx_equal(existing)
            if same:
                members.append(j)
                break
        else:
            classes.append((rep, [j]))
    one = generator.stype.one
    out = []
    for rep, members in classes:
        uniform = all(e == one for e in rep.entries) if exact else all(
            e.approx_equal(one) for e in rep.entries
        )
        out.append(CandidateScores(vector=rep, columns=tuple(members), is_uniform=uniform))
    return out


def ranking_groups(x: Vector) -> list[list[int]]:
    """Indices grouped by equal score, best group first."""
    exact = x.stype.backend is Backend.EXACT
    order = sorted(range(x.dim), key=lambda i: x[i], reverse=True)
    groups: list[list[int]] = [[order[0]]]
    for i in order[1:]:
        prev = x[groups[-1][0]]
        same = x[i] == prev if exact else x[i].approx_equal(prev)
        if same:
            groups[-1].append(i)
        else:
            groups.append([i])
    return groups


def _diagnostics_for(A: Matrix, B: Matrix, note: str | None) -> tuple[ConsistencyReport, list[str]]:
    warnings: list[str] = []
    if note:
        warnings.append(note)
    if A.is_positive:
        report = check_consistency(A)
    else:
        report = check_consistency(B)
        warnings.append(
            "input has zero entries; consistency diagnostics refer to the "
            "symmetrized combination"
        )
    if not report.is_reciprocal:
        warnings.append(
            "input is not reciprocal; scores approximate the symmetrized combination"
        )
    return report, warnings


def _build_result(
    space: SolutionSpace,
    diagnostics: ConsistencyReport,
    labels: tuple[str, ...],
    warnings: list[str],
) -> RatingResult:
    candidates = tuple(extract_candidates(space.generator))
    normalized = tuple(
        NormalizedScores(max_to_one=c.vector, sum_to_one=_sum_to_one_or_none(c.vector))
        for c in candidates
    )
    return RatingResult(
        minimum=space.optimum,
        candidates=candidates,
        normalized=normalized,
        diagnostics=diagnostics,
        solution_space=space,
        labels=labels,
        warnings=tuple(warnings),
    )


def _default_labels(n: int) -> tuple[str, ...]:
    return tuple(f"alt{i + 1}" for i in range(n))


def rate_single(A: Matrix, labels: tuple[str, ...] | None = None) -> RatingResult:
    """Scores from one comparison matrix: minimize rho(A, x x^-)."""
    B = symmetrize(A)
    space = minimize_rayleigh(B)
    diagnostics, warnings = _diagnostics_for(A, B, None)
    return _build_result(space, diagnostics, labels or _default_labels(A.rows), warnings)


def rate_multi(matrices, labels: tuple[str, ...] | None = None) -> RatingResult:
    """Scores approximating several comparison matrices at once: minimize
    the worst of the individual distances rho(A_i, x x^-)."""
    matrices = list(matrices)
    if not matrices:
        raise UsageError("rate_multi needs at least one matrix")
    first = matrices[0]
    for m in matrices:
        if m.stype is not first.stype or (m.rows, m.cols) != (first.rows, first.cols):
            raise UsageError("all comparison matrices must share order and kind")
    B = None
    for m in matrices:
        term = m + conjugate_transpose(m)
        B = term if B is None else B + term
    if not B.is_positive:
        raise DomainError("the combined comparison matrix has zero entries")
    space = minimize_rayleigh(B)
    note = (
        "diagnostics refer to the combined matrix of all inputs"
        if len(matrices) > 1
        else None
    )
    diagnostics, warnings = _diagnostics_for(B if len(matrices) > 1 else matrices[0], B, note)
    return _build_result(space, diagnostics, labels or _default_labels(first.rows), warnings)


def rate_constrained(
    A: Matrix, C: Matrix, labels: tuple[str, ...] | None = None
) -> RatingResult:
    """Scores from one matrix under lower-bound constraints C x <= x."""
    B = symmetrize(A)
    space = minimize_constrained(B, C)
    diagnostics, warnings = _diagnostics_for(A, B, None)
    return _build_result(space, diagnostics, labels or _default_labels(A.rows), warnings)


def solve_problem(problem: RatingProblem) -> RatingResult:
    """Dispatch a rating problem to the applicable procedure."""
    if problem.constraints is not None:
        return rate_constrained(problem.matrices[0], problem.constraints, problem.labels)
    if len(problem.matrices) > 1:
        return rate_multi(problem.matrices, problem.labels)
    return rate_single(problem.matrices[0], problem.labels)
