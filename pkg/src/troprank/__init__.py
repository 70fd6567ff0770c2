"""troprank: rating alternatives from pairwise comparisons by approximating
comparison matrices with reciprocal rank-1 matrices over the max-times or
max-plus semifield."""

from .approximation import (
    ObjectiveKind,
    SolutionSpace,
    enumerate_exponents,
    find_violating_cycle,
    mat_distance,
    minimize_constrained,
    minimize_rayleigh,
    rayleigh,
    vec_distance,
)
from .errors import (
    DomainError,
    InfeasibleConstraintsError,
    TroprankError,
    UsageError,
)
from .linalg import (
    Matrix,
    Vector,
    conjugate_transpose,
    eigenvectors,
    identity,
    kleene_star,
    rank_one,
    spectral_radius,
    spectral_radius_karp,
    spectral_radius_via_powers,
    total_trace,
    trace,
    zeros,
)
from .rating import (
    CandidateScores,
    ConsistencyReport,
    NormalizeMode,
    NormalizedScores,
    RatingProblem,
    RatingResult,
    check_consistency,
    extract_candidates,
    normalize,
    ranking_groups,
    rate_constrained,
    rate_multi,
    rate_single,
    solve_problem,
    symmetrize,
)
from .semifield import (
    Backend,
    MaxPlusExact,
    MaxPlusFloat,
    MaxTimesExact,
    MaxTimesFloat,
    Scalar,
    SemifieldTag,
    scalar_type,
)

__version__ = "0.1.0"
