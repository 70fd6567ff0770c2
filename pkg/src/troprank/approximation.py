"""Chebyshev-like distances and the two tropical approximation solvers.

Both solvers minimize the quotient x^- A x over regular vectors x; the
constrained variant additionally requires C x <= x.  Each returns a
:class:`SolutionSpace`: the optimal value together with a Kleene-star
generator matrix whose column span is the complete regular solution set.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterator

from .errors import DomainError, InfeasibleConstraintsError, UsageError
from .linalg import (
    Matrix,
    Vector,
    conjugate_transpose,
    identity,
    kleene_star,
    spectral_radius,
    total_trace,
    trace,
)
from .semifield import Scalar

__all__ = [
    "ObjectiveKind",
    "SolutionSpace",
    "vec_distance",
    "mat_distance",
    "rayleigh",
    "minimize_rayleigh",
    "enumerate_exponents",
    "minimize_constrained",
    "find_violating_cycle",
]


class ObjectiveKind(Enum):
    UNCONSTRAINED = "unconstrained"
    CONSTRAINED = "constrained"


@dataclass(frozen=True)
class SolutionSpace:
    """Optimal value plus a generator of all regular optimal vectors.

    The generator is a Kleene star (square, unit diagonal); x = generator @ u
    attains the optimum for every regular u.
    """

    optimum: Scalar
    generator: Matrix
    objective_kind: ObjectiveKind


def _require_regular(x: Vector, name: str) -> None:
    if not x.is_regular:
        raise DomainError(f"{name} must be regular (no zero entries)")


def vec_distance(x: Vector, y: Vector) -> Scalar:
    """Chebyshev-like distance between regular vectors: y^-x + x^-y.

    Sits at the unit exactly when x = y; on the max-plus scale this is the
    ordinary Chebyshev metric.
    """
    _require_regular(x, "x")
    _require_regular(y, "y")
    if x.stype is not y.stype or x.dim != y.dim:
        raise UsageError("vec_distance needs vectors of one kind and dimension")
    acc = x.stype.zero
    for xi, yi in zip(x, y):
        acc = acc + yi.inv() * xi + xi.inv() * yi
    return acc


def mat_distance(A: Matrix, B: Matrix) -> Scalar:
    """Chebyshev-like distance between positive matrices: the idempotent sum
    of the traces of conj(B) @ A and conj(A) @ B."""
    if (A.rows, A.cols) != (B.rows, B.cols) or A.stype is not B.stype:
        raise UsageError("mat_distance needs matrices of one kind and shape")
    if not A.is_positive or not B.is_positive:
        raise DomainError("mat_distance is defined for matrices without zero entries")
    return trace(conjugate_transpose(B) @ A) + trace(conjugate_transpose(A) @ B)


def rayleigh(A: Matrix, x: Vector) -> Scalar:
    """The quotient x^- A x for a regular vector x."""
    if not A.is_square or A.rows != x.dim:
        raise UsageError("rayleigh needs a square matrix matching the vector")
    _require_regular(x, "x")
    ax = A @ x
    acc = A.stype.zero
    for xi, axi in zip(x, ax):
        acc = acc + xi.inv() * axi
    return acc


def minimize_rayleigh(A: Matrix) -> SolutionSpace:
    """Unconstrained minimum of x^- A x over regular x.

    The minimum equals the spectral radius; the solution set is spanned by
    the Kleene star of A scaled by the inverse radius.
    """
    lam = spectral_radius(A)
    if lam.is_zero:
        raise DomainError("minimize_rayleigh needs a nonzero spectral radius")
    generator = kleene_star(lam.inv() * A)
    return SolutionSpace(lam, generator, ObjectiveKind.UNCONSTRAINED)


def enumerate_exponents(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All k-tuples of nonnegative integers with 1 <= sum <= n - k.

    These index the constraint-power products in the constrained optimum.
    """
    if not isinstance(n, int) or not isinstance(k, int) or not 1 <= k <= n - 1:
        raise UsageError(f"need 1 <= k <= n - 1, got n={n}, k={k}")

    def compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
        if parts == 1:
            yield (total,)
            return
        for head in range(total + 1):
            for tail in compositions(total - head, parts - 1):
                yield (head, *tail)

    for total in range(1, n - k + 1):
        yield from compositions(total, k)


def find_violating_cycle(C: Matrix) -> tuple[tuple[int, ...], Scalar] | None:
    """A cycle of C whose tropical product exceeds the unit, if one exists.

    Returns (vertex cycle with the start repeated last, cycle product).
    The shortest violating power is located first, which makes the
    reconstructed closed walk a simple cycle.
    """
    if not C.is_square:
        raise UsageError("cycle search needs a square matrix")
    n = C.rows
    one = C.stype.one
    powers = [identity(n, C.stype), C]
    for _ in range(n - 1):
        powers.append(powers[-1] @ C)
    for k in range(1, n + 1):
        pk = powers[k]
        start = next((i for i in range(n) if not pk[i, i].leq(one)), None)
        if start is None:
            continue
        # walk the argmax chain: after t steps at vertex v, the best
        # continuation weight is C[v, u] * C^(k-t-1)[u, start]
        cycle = [start]
        v = start
        for t in range(k - 1):
            remain = k - t - 1
            best_u, best_val = None, None
            for u in range(n):
                if C[v, u].is_zero or powers[remain][u, start].is_zero:
                    continue
                val = C[v, u] * powers[remain][u, start]
                if best_val is None or best_val.leq(val):
                    best_u, best_val = u, val
            v = best_u
            cycle.append(v)
        cycle.append(start)
        prod = C.stype.one
        for a, b in zip(cycle, cycle[1:]):
            prod = prod * C[a, b]
        return tuple(cycle), prod
    return None


def _check_constraint_trace(C: Matrix) -> None:
    t = total_trace(C)
    if t.leq(C.stype.one):
        return
    found = find_violating_cycle(C)
    cycle, value = found if found else (None, t)
    raise InfeasibleConstraintsError(
        f"constraints admit no regular solution: cycle {cycle} has product "
        f"{value}, above the unit",
        cycle=cycle,
        value=value,
    )


def minimize_constrained(A: Matrix, C: Matrix) -> SolutionSpace:
    """Minimum of x^- A x over regular x subject to C x <= x.

    The optimum combines the spectral radius with rooted traces of all
    interleaved products of A and constraint powers; the index tuples are
    exactly those of :func:`enumerate_exponents`, traversed depth-first so
    prefix products are shared.  The generator is the Kleene star of
    (optimum^-1 A + C).
    """
    if not A.is_square or not C.is_square or A.rows != C.rows:
        raise UsageError("minimize_constrained needs square matrices of one order")
    if A.stype is not C.stype:
        raise UsageError("comparison and constraint matrices must share one kind")
    lam = spectral_radius(A)
    if lam.is_zero:
        raise DomainError("minimize_constrained needs a nonzero spectral radius")
    _check_constraint_trace(C)

    n = A.rows
    # blocks[j] = A @ C^j; a product for the tuple (i1, ..., ik) is
    # blocks[i1] @ ... @ blocks[ik]
    blocks = []
    c_power = identity(n, C.stype)
    for _ in range(n):
        blocks.append(A @ c_power)
        c_power = c_power @ C

    optimum = lam

    def walk(prefix: Matrix, k: int, exponent_sum: int) -> None:
        nonlocal optimum
        if exponent_sum >= 1:
            optimum = optimum + trace(prefix) ** Fraction(1, k)
        budget = n - (k + 1) - exponent_sum
        if k + 1 <= n - 1 and budget >= 0:
            for j in range(budget + 1):
                walk(prefix @ blocks[j], k + 1, exponent_sum + j)

    for j in range(n):
        walk(blocks[j], 1, j)

    generator = kleene_star(optimum.inv() * A + C)
    return SolutionSpace(optimum, generator, ObjectiveKind.CONSTRAINED)
