"""Dense matrix and vector algebra over the idempotent semifields.

Matrices and vectors are immutable values holding scalars of one backend.
``A + B`` is the entrywise idempotent sum, ``A @ B`` the tropical matrix
product, ``c * A`` scaling by a scalar, and ``A ** k`` the k-fold product.

Exact-backend operations run as plain scalar loops; float-backend products
and the large-n spectral radius are dispatched to the numpy/numba kernels
in :mod:`troprank._kernels`.
"""

from __future__ import annotations

import math
import warnings
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from .errors import DomainError, UsageError
from .semifield import Backend, Scalar, SemifieldTag, scalar_type

__all__ = [
    "Vector",
    "Matrix",
    "identity",
    "zeros",
    "rank_one",
    "conjugate_transpose",
    "trace",
    "total_trace",
    "kleene_star",
    "spectral_radius",
    "spectral_radius_via_powers",
    "spectral_radius_karp",
    "eigenvectors",
]

# float matrices switch from the trace-power formula to the Karp dynamic
# program above this order
KARP_CUTOFF = 16


def _as_scalar_type(stype) -> type[Scalar]:
    if not (isinstance(stype, type) and issubclass(stype, Scalar)):
        raise UsageError(f"expected a scalar type, got {stype!r}")
    return stype


class Vector:
    """Column vector of semifield scalars."""

    __slots__ = ("entries", "stype")

    def __init__(self, entries: Iterable[Scalar], stype: type[Scalar] | None = None):
        entries = tuple(entries)
        if stype is None:
            if not entries:
                raise UsageError("empty vector needs an explicit scalar type")
            stype = type(entries[0])
        self.stype = _as_scalar_type(stype)
        for e in entries:
            if type(e) is not self.stype:
                raise UsageError(
                    f"vector entry {e!r} is not a {self.stype.__name__}"
                )
        if not entries:
            raise UsageError("vectors must have at least one entry")
        self.entries = entries

    @classmethod
    def build(cls, values: Sequence, stype: type[Scalar]) -> "Vector":
        """Coerce plain numbers / text literals into a vector."""
        return cls([stype.of(v) for v in values], stype)

    @property
    def dim(self) -> int:
        return len(self.entries)

    @property
    def is_regular(self) -> bool:
        """True when no entry is the semifield zero."""
        return not any(e.is_zero for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Scalar:
        return self.entries[i]

    def __add__(self, other: "Vector") -> "Vector":
        if not isinstance(other, Vector):
            return NotImplemented
        if other.stype is not self.stype or other.dim != self.dim:
            raise UsageError("vector addition needs matching kinds and dimensions")
        return Vector([a + b for a, b in zip(self.entries, other.entries)], self.stype)

    def __rmul__(self, scalar: Scalar) -> "Vector":
        if not isinstance(scalar, Scalar):
            return NotImplemented
        if type(scalar) is not self.stype:
            raise UsageError("scaling scalar kind does not match the vector")
        return Vector([scalar * e for e in self.entries], self.stype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Vector):
            return NotImplemented
        return self.stype is other.stype and self.entries == other.entries

    def __hash__(self):
        return hash((self.stype, self.entries))

    def approx_equal(self, other: "Vector", rel_tol: float = 1e-9) -> bool:
        return (
            self.stype is other.stype
            and self.dim == other.dim
            and all(a.approx_equal(b, rel_tol) for a, b in zip(self, other))
        )

    def to_floats(self) -> list[float]:
        return [e.to_float() for e in self.entries]

    def __repr__(self) -> str:
        return f"Vector[{', '.join(str(e) for e in self.entries)}]"


class Matrix:
    """Dense rectangular matrix of semifield scalars."""

    __slots__ = ("entries", "stype")

    def __init__(self, rows: Iterable[Iterable[Scalar]], stype: type[Scalar] | None = None):
        entries = tuple(tuple(row) for row in rows)
        if not entries:
            raise UsageError("matrices must have at least one row")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise UsageError("all matrix rows must have the same length")
        if stype is None:
            if width == 0:
                raise UsageError("empty matrix needs an explicit scalar type")
            stype = type(entries[0][0])
        self.stype = _as_scalar_type(stype)
        for row in entries:
            for e in row:
                if type(e) is not self.stype:
                    raise UsageError(f"matrix entry {e!r} is not a {self.stype.__name__}")
        self.entries = entries

    @classmethod
    def build(cls, values: Sequence[Sequence], stype: type[Scalar]) -> "Matrix":
        """Coerce plain numbers / text literals into a matrix."""
        return cls([[stype.of(v) for v in row] for row in values], stype)

    @classmethod
    def from_columns(
        cls, columns: Sequence[Vector | Sequence[Scalar]], stype: type[Scalar], n_rows: int | None = None
    ) -> "Matrix":
        cols = [list(c) for c in columns]
        if not cols:
            if n_rows is None:
                raise UsageError("a matrix with no columns needs an explicit row count")
            return cls([[] for _ in range(n_rows)], stype)
        return cls(list(map(list, zip(*cols))), stype)

    # -- shape ----------------------------------------------------------

    @property
    def rows(self) -> int:
        return len(self.entries)

    @property
    def cols(self) -> int:
        return len(self.entries[0])

    @property
    def is_square(self) -> bool:
        return self.rows == self.cols

    @property
    def is_positive(self) -> bool:
        """True when no entry is the semifield zero ("regular" matrix)."""
        return not any(e.is_zero for row in self.entries for e in row)

    def __getitem__(self, ij: tuple[int, int]) -> Scalar:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Vector:
        return Vector(self.entries[i], self.stype)

    def column(self, j: int) -> Vector:
        return Vector([row[j] for row in self.entries], self.stype)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.cols)]

    # -- algebra ----------------------------------------------------------

    def _require_same_kind(self, other: "Matrix") -> None:
        if self.stype is not other.stype:
            raise UsageError(
                f"mixed matrix kinds: {self.stype.__name__} and {other.stype.__name__}"
            )

    def __add__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        self._require_same_kind(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise UsageError(
                f"cannot add a {self.rows}x{self.cols} and a {other.rows}x{other.cols} matrix"
            )
        return Matrix(
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.entries, other.entries)
            ],
            self.stype,
        )

    def __matmul__(self, other):
        if isinstance(other, Vector):
            as_col = Matrix([[e] for e in other.entries], other.stype)
            return (self @ as_col).column(0)
        if not isinstance(other, Matrix):
            return NotImplemented
        self._require_same_kind(other)
        if self.cols != other.rows:
            raise UsageError(
                f"cannot multiply a {self.rows}x{self.cols} by a {other.rows}x{other.cols} matrix"
            )
        if self.stype.backend is Backend.FLOAT and self.cols > 0:
            return self._float_matmul(other)
        zero = self.stype.zero
        out = []
        for i in range(self.rows):
            arow = self.entries[i]
            out_row = []
            for j in range(other.cols):
                acc = zero
                for k in range(self.cols):
                    acc = acc + arow[k] * other.entries[k][j]
                out_row.append(acc)
            out.append(out_row)
        return Matrix(out, self.stype)

    def _float_matmul(self, other: "Matrix") -> "Matrix":
        a, b = self.to_float_array(), other.to_float_array()
        if self.stype.tag is SemifieldTag.MAX_PLUS:
            return from_float_array(_kernels.maxplus_matmul(a, b), self.stype)
        return from_float_array(_kernels.maxtimes_matmul(a, b), self.stype)

    def __rmul__(self, scalar: Scalar) -> "Matrix":
        if not isinstance(scalar, Scalar):
            return NotImplemented
        if type(scalar) is not self.stype:
            raise UsageError("scaling scalar kind does not match the matrix")
        return Matrix([[scalar * e for e in row] for row in self.entries], self.stype)

    def __pow__(self, k: int) -> "Matrix":
        if not isinstance(k, int) or k < 0:
            raise UsageError("matrix powers take a nonnegative integer exponent")
        if not self.is_square:
            raise UsageError("matrix powers need a square matrix")
        result = identity(self.rows, self.stype)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def transpose(self) -> "Matrix":
        return Matrix(list(map(list, zip(*self.entries))), self.stype)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.stype is other.stype and self.entries == other.entries

    def __hash__(self):
        return hash((self.stype, self.entries))

    def approx_equal(self, other: "Matrix", rel_tol: float = 1e-9) -> bool:
        return (
            self.stype is other.stype
            and (self.rows, self.cols) == (other.rows, other.cols)
            and all(
                a.approx_equal(b, rel_tol)
                for ra, rb in zip(self.entries, other.entries)
                for a, b in zip(ra, rb)
            )
        )

    # -- conversions ------------------------------------------------------

    def to_float_array(self) -> np.ndarray:
        return np.array(
            [[e.to_float() for e in row] for row in self.entries], dtype=np.float64
        )

    def __repr__(self) -> str:
        body = "; ".join(", ".join(str(e) for e in row) for row in self.entries)
        return f"Matrix[{body}]"


def from_float_array(arr: np.ndarray, stype: type[Scalar]) -> Matrix:
    return Matrix([[stype(v) for v in row] for row in arr.tolist()], stype)


def identity(n: int, stype: type[Scalar]) -> Matrix:
    one, zero = stype.one, stype.zero
    return Matrix(
        [[one if i == j else zero for j in range(n)] for i in range(n)], stype
    )


def zeros(rows: int, cols: int, stype: type[Scalar]) -> Matrix:
    zero = stype.zero
    return Matrix([[zero] * cols for _ in range(rows)], stype)


def rank_one(x: Vector) -> Matrix:
    """The reciprocal rank-1 matrix with entries x_i / x_j."""
    if not x.is_regular:
        raise DomainError("rank-one reciprocal matrix needs a regular vector")
    invs = [e.inv() for e in x.entries]
    return Matrix([[xi * yj for yj in invs] for xi in x.entries], x.stype)


def conjugate_transpose(A: Matrix) -> Matrix:
    """Entrywise multiplicative inverse of the transpose; zeros stay zero."""
    if all(e.is_zero for row in A.entries for e in row):
        raise DomainError("conjugate transpose of the all-zero matrix is undefined")
    zero = A.stype.zero
    return Matrix(
        [
            [zero if A.entries[j][i].is_zero else A.entries[j][i].inv() for j in range(A.rows)]
            for i in range(A.cols)
        ],
        A.stype,
    )


def trace(A: Matrix) -> Scalar:
    if not A.is_square:
        raise UsageError(f"trace needs a square matrix, got {A.rows}x{A.cols}")
    acc = A.stype.zero
    for i in range(A.rows):
        acc = acc + A.entries[i][i]
    return acc


def total_trace(A: Matrix) -> Scalar:
    """Idempotent sum of the traces of A, A^2, ..., A^n (n = order of A)."""
    if not A.is_square:
        raise UsageError(f"total trace needs a square matrix, got {A.rows}x{A.cols}")
    acc = trace(A)
    power = A
    for _ in range(A.rows - 1):
        power = power @ A
        acc = acc + trace(power)
    return acc


def _star_precondition(A: Matrix) -> None:
    t = total_trace(A)
    one = A.stype.one
    if t.leq(one):
        return
    if A.stype.backend is Backend.FLOAT and t.approx_equal(one):
        return
    raise DomainError(
        f"Kleene star diverges: the total trace {t} exceeds the unit"
    )


def kleene_star(A: Matrix) -> Matrix:
    """I + A + A^2 + ... + A^(n-1), defined when the total trace is <= one.

    Computed by repeated squaring of I + A; with the precondition holding,
    powers of order n and above add nothing, so squaring past n - 1 is safe.
    """
    if not A.is_square:
        raise UsageError(f"Kleene star needs a square matrix, got {A.rows}x{A.cols}")
    _star_precondition(A)
    s = identity(A.rows, A.stype) + A
    covered = 1
    while covered < A.rows - 1:
        s = s @ s
        covered *= 2
    return s


def spectral_radius_via_powers(A: Matrix) -> Scalar:
    """Spectral radius as the idempotent sum of tr(A^k)^(1/k), k = 1..n."""
    if not A.is_square:
        raise UsageError(f"spectral radius needs a square matrix, got {A.rows}x{A.cols}")
    acc = trace(A)
    power = A
    for k in range(2, A.rows + 1):
        power = power @ A
        acc = acc + trace(power) ** Fraction(1, k)
    return acc


def spectral_radius_karp(A: Matrix) -> Scalar:
    """Float-backend spectral radius via the Karp max-cycle-mean program."""
    if not A.is_square:
        raise UsageError(f"spectral radius needs a square matrix, got {A.rows}x{A.cols}")
    if A.stype.backend is not Backend.FLOAT:
        raise UsageError("the cycle-mean dynamic program runs on the float backend only")
    arr = A.to_float_array()
    if A.stype.tag is SemifieldTag.MAX_TIMES:
        with np.errstate(divide="ignore"):
            w = np.log(arr)
        mean = _kernels.max_cycle_mean(w)
        return A.stype(0.0 if mean == -np.inf else math.exp(mean))
    return A.stype(_kernels.max_cycle_mean(arr))


def spectral_radius(A: Matrix) -> Scalar:
    """The unique eigenvalue of a positive matrix: its maximum cycle mean.

    Exact backends evaluate the trace-power formula; the float backend
    switches to the Karp dynamic program beyond order ``KARP_CUTOFF``.
    """
    if A.stype.backend is Backend.FLOAT and A.rows > KARP_CUTOFF:
        return spectral_radius_karp(A)
    return spectral_radius_via_powers(A)


def _columns_coincide(a: Matrix, b: Matrix, j: int) -> bool:
    if a.stype.backend is Backend.FLOAT:
        return all(
            a.entries[i][j].approx_equal(b.entries[i][j]) for i in range(a.rows)
        )
    return all(a.entries[i][j] == b.entries[i][j] for i in range(a.rows))


def eigenvectors(A: Matrix) -> Matrix:
    """Generator matrix of the eigenvector space at the spectral radius.

    Scales A by the inverse spectral radius, stars it, and keeps the star
    columns that the extra product with the scaled matrix leaves unchanged.
    Every returned column v satisfies A @ v = lambda * v.  For a matrix
    with zero entries the selection may come out empty; that case returns a
    zero-column matrix and emits a warning rather than inventing semantics.
    """
    lam = spectral_radius(A)
    if lam.is_zero:
        raise DomainError("eigenvector space undefined: spectral radius is zero")
    scaled = lam.inv() * A
    star = kleene_star(scaled)
    cross = scaled @ star
    kept = [star.column(j) for j in range(star.cols) if _columns_coincide(star, cross, j)]
    if not kept:
        warnings.warn(
            "no star column is fixed by the scaled matrix; the eigenvector "
            "generator is empty (input has zero entries?)",
            stacklevel=2,
        )
        return Matrix.from_columns([], A.stype, n_rows=A.rows)
    return Matrix.from_columns(kept, A.stype)
