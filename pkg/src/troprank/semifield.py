"""Scalars of the two idempotent semifields used for pairwise-comparison work.

Two scales are supported:

* max-times: carrier = nonnegative reals, ``a + b`` is max, ``a * b`` is the
  ordinary product, zero element 0, unit 1.
* max-plus: carrier = reals with -inf adjoined, ``a + b`` is max, ``a * b``
  is the ordinary sum, zero element -inf, unit 0.

Each scale comes in an exact and a float backend.  The exact max-times
backend represents numbers of the form ``q**(1/k)`` with ``q`` a nonnegative
big-integer rational and ``k`` a positive integer ("rooted rationals"), kept
in canonical form with minimal ``k``.  Ordering and equality of rooted
rationals are decided by cross-exponentiation in exact integer arithmetic,
never through floats.  The exact max-plus backend needs plain rationals
only, because a k-th root on that scale is division by k.

Operator conventions follow the semifield, not ordinary arithmetic:
``a + b`` is the idempotent addition (max) and ``a * b`` the semifield
multiplication.  ``a ** e`` accepts integer or ``Fraction`` exponents.
"""

from __future__ import annotations

import math
import re
from enum import Enum
from fractions import Fraction
from typing import ClassVar, Union

from .errors import DomainError, UsageError

__all__ = [
    "SemifieldTag",
    "Backend",
    "Scalar",
    "MaxTimesExact",
    "MaxPlusExact",
    "MaxTimesFloat",
    "MaxPlusFloat",
    "scalar_type",
]

ScalarLike = Union["Scalar", int, float, Fraction, str]


class SemifieldTag(Enum):
    """Which of the two idempotent semifields a scalar lives in."""

    MAX_TIMES = "max-times"
    MAX_PLUS = "max-plus"


class Backend(Enum):
    """Arithmetic backend: exact big-integer rationals or double floats."""

    EXACT = "exact"
    FLOAT = "float"


# ---------------------------------------------------------------------------
# integer helpers for the exact backend


def _prime_factors(n: int) -> list[int]:
    """Distinct prime factors of n >= 1, ascending."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        out.append(n)
    return out


def _int_nth_root(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0, exact integer Newton iteration."""
    if n < 2 or k == 1:
        return n
    x = 1 << -((-n.bit_length()) // k)  # >= true root
    while True:
        y = ((k - 1) * x + n // x ** (k - 1)) // k
        if y >= x:
            return x
        x = y


def _perfect_root(f: Fraction, k: int) -> Fraction | None:
    """Exact k-th root of a nonnegative rational, or None if irrational."""
    num = _int_nth_root(f.numerator, k)
    if num**k != f.numerator:
        return None
    den = _int_nth_root(f.denominator, k)
    if den**k != f.denominator:
        return None
    return Fraction(num, den)


def _reduce_root(base: Fraction, root: int) -> tuple[Fraction, int]:
    """Canonical (base, root) with minimal root for the value base**(1/root)."""
    if base == 0 or base == 1:
        return base, 1
    if root == 1:
        return base, root
    for p in _prime_factors(root):
        while root % p == 0:
            r = _perfect_root(base, p)
            if r is None:
                break
            base, root = r, root // p
    return base, root


_ROOTED_RE = re.compile(r"^\(?([+-]?\d+(?:/\d+)?)\)?\^\(1/(\d+)\)$")


# ---------------------------------------------------------------------------


class Scalar:
    """Common surface of all semifield scalars.

    Binary operations require both operands to be of the same concrete
    scalar class; mixing scales or backends raises :class:`UsageError`.
    """

    tag: ClassVar[SemifieldTag]
    backend: ClassVar[Backend]
    zero: ClassVar["Scalar"]
    one: ClassVar["Scalar"]

    __slots__ = ()

    # -- construction -------------------------------------------------

    @classmethod
    def of(cls, value: ScalarLike) -> "Scalar":
        """Coerce a plain number, fraction, or text literal to this scalar kind."""
        if isinstance(value, Scalar):
            if type(value) is not cls:
                raise UsageError(
                    f"cannot reuse {type(value).__name__} where {cls.__name__} is required"
                )
            return value
        if isinstance(value, str):
            return cls.parse(value)
        return cls._from_number(value)

    @classmethod
    def parse(cls, text: str) -> "Scalar":
        raise NotImplementedError

    @classmethod
    def _from_number(cls, value) -> "Scalar":
        raise NotImplementedError

    # -- semifield operations ------------------------------------------

    def _check_operand(self, other) -> bool:
        """True when other is the same scalar kind.

        A different scalar kind is a usage error; a non-scalar operand makes
        the caller return NotImplemented so Python can try the reflected
        operation (e.g. scalar * matrix).
        """
        if type(other) is type(self):
            return True
        if isinstance(other, Scalar):
            raise UsageError(
                f"mixed scalar kinds: {type(self).__name__} and {type(other).__name__}"
            )
        return False

    def _require_operand(self, other) -> None:
        if not self._check_operand(other):
            raise UsageError(
                f"expected a {type(self).__name__}, got {type(other).__name__}"
            )

    def __add__(self, other: "Scalar") -> "Scalar":
        """Idempotent addition: the larger operand under the semifield order."""
        if not self._check_operand(other):
            return NotImplemented
        return other if self.leq(other) else self

    def __mul__(self, other: "Scalar") -> "Scalar":
        raise NotImplementedError

    def __pow__(self, exponent) -> "Scalar":
        raise NotImplementedError

    def inv(self) -> "Scalar":
        """Multiplicative inverse; the zero element has none."""
        raise NotImplementedError

    def leq(self, other: "Scalar") -> bool:
        raise NotImplementedError

    # -- order and equality --------------------------------------------

    def __le__(self, other: "Scalar") -> bool:
        self._require_operand(other)
        return self.leq(other)

    def __lt__(self, other: "Scalar") -> bool:
        self._require_operand(other)
        return self.leq(other) and self != other

    def __ge__(self, other: "Scalar") -> bool:
        self._require_operand(other)
        return other.leq(self)

    def __gt__(self, other: "Scalar") -> bool:
        self._require_operand(other)
        return other.leq(self) and self != other

    @property
    def is_zero(self) -> bool:
        return self == self.zero

    def approx_equal(self, other: "Scalar", rel_tol: float = 1e-9) -> bool:
        """Equality as surfaced to users: exact backends compare exactly,
        float backends within a relative tolerance."""
        self._require_operand(other)
        return self == other

    def to_float(self) -> float:
        raise NotImplementedError

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self})"


def _normalize_exponent(exponent) -> Fraction:
    if isinstance(exponent, (int, Fraction)):
        return Fraction(exponent)
    raise UsageError(f"exponent must be an int or Fraction, got {type(exponent).__name__}")


# ---------------------------------------------------------------------------


class MaxTimesExact(Scalar):
    """Rooted rational ``base**(1/root)`` under (max, *), exact arithmetic."""

    tag = SemifieldTag.MAX_TIMES
    backend = Backend.EXACT

    __slots__ = ("base", "root")

    def __init__(self, base, root: int = 1):
        base = Fraction(base)
        if base < 0:
            raise DomainError(f"max-times scalars are nonnegative, got {base}^(1/{root})")
        if not isinstance(root, int) or root < 1:
            raise UsageError(f"root must be a positive integer, got {root!r}")
        self.base, self.root = _reduce_root(base, root)

    @classmethod
    def _from_number(cls, value) -> "MaxTimesExact":
        return cls(Fraction(value))

    @classmethod
    def parse(cls, text: str) -> "MaxTimesExact":
        text = text.strip()
        m = _ROOTED_RE.match(text)
        if m:
            return cls(Fraction(m.group(1)), int(m.group(2)))
        try:
            return cls(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse max-times scalar from {text!r}") from exc

    def __mul__(self, other: "MaxTimesExact") -> "MaxTimesExact":
        if not self._check_operand(other):
            return NotImplemented
        if self.root == 1 and other.root == 1:
            return MaxTimesExact(self.base * other.base)
        m = math.lcm(self.root, other.root)
        return MaxTimesExact(
            self.base ** (m // self.root) * other.base ** (m // other.root), m
        )

    def __pow__(self, exponent) -> "MaxTimesExact":
        e = _normalize_exponent(exponent)
        if self.base == 0:
            if e > 0:
                return MaxTimesExact(0)
            raise DomainError(f"zero cannot be raised to exponent {e}")
        if e == 0:
            return MaxTimesExact(1)
        return MaxTimesExact(self.base**e.numerator, self.root * e.denominator)

    def inv(self) -> "MaxTimesExact":
        if self.base == 0:
            raise DomainError("inverse of the semifield zero is undefined")
        return MaxTimesExact(1 / self.base, self.root)

    def leq(self, other: "MaxTimesExact") -> bool:
        if self.root == other.root:
            return self.base <= other.base
        m = math.lcm(self.root, other.root)
        return self.base ** (m // self.root) <= other.base ** (m // other.root)

    def __eq__(self, other) -> bool:
        if type(other) is not MaxTimesExact:
            return NotImplemented
        return self.base == other.base and self.root == other.root

    def __hash__(self):
        return hash((MaxTimesExact, self.base, self.root))

    def to_float(self) -> float:
        if self.root == 1:
            return float(self.base)
        return float(self.base) ** (1.0 / self.root)

    def __str__(self) -> str:
        if self.root == 1:
            return str(self.base)
        b = str(self.base)
        if "/" in b:
            b = f"({b})"
        return f"{b}^(1/{self.root})"


MaxTimesExact.zero = MaxTimesExact(0)
MaxTimesExact.one = MaxTimesExact(1)


class MaxPlusExact(Scalar):
    """Rational (or -inf) under (max, +), exact arithmetic."""

    tag = SemifieldTag.MAX_PLUS
    backend = Backend.EXACT

    __slots__ = ("value",)

    def __init__(self, value):
        if isinstance(value, float) and math.isinf(value):
            if value > 0:
                raise DomainError("+inf is not a max-plus scalar")
            self.value: Fraction | float = -math.inf
        else:
            self.value = Fraction(value)

    @classmethod
    def _from_number(cls, value) -> "MaxPlusExact":
        return cls(value)

    @classmethod
    def parse(cls, text: str) -> "MaxPlusExact":
        text = text.strip()
        if text == "-inf":
            return cls(-math.inf)
        try:
            return cls(Fraction(text))
        except (ValueError, ZeroDivisionError) as exc:
            raise UsageError(f"cannot parse max-plus scalar from {text!r}") from exc

    @property
    def is_zero(self) -> bool:
        return self.value == -math.inf

    def __mul__(self, other: "MaxPlusExact") -> "MaxPlusExact":
        if not self._check_operand(other):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return MaxPlusExact(-math.inf)
        return MaxPlusExact(self.value + other.value)

    def __pow__(self, exponent) -> "MaxPlusExact":
        e = _normalize_exponent(exponent)
        if self.is_zero:
            if e > 0:
                return MaxPlusExact(-math.inf)
            raise DomainError(f"zero cannot be raised to exponent {e}")
        return MaxPlusExact(self.value * e)

    def inv(self) -> "MaxPlusExact":
        if self.is_zero:
            raise DomainError("inverse of the semifield zero is undefined")
        return MaxPlusExact(-self.value)

    def leq(self, other: "MaxPlusExact") -> bool:
        if self.is_zero:
            return True
        if other.is_zero:
            return False
        return self.value <= other.value

    def __eq__(self, other) -> bool:
        if type(other) is not MaxPlusExact:
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash((MaxPlusExact, self.value))

    def to_float(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        return "-inf" if self.is_zero else str(self.value)


MaxPlusExact.zero = MaxPlusExact(-math.inf)
MaxPlusExact.one = MaxPlusExact(0)


class _FloatScalar(Scalar):
    """Shared plumbing for the float backend."""

    __slots__ = ("value",)

    def __init__(self, value: float):
        value = float(value)
        if math.isnan(value):
            raise DomainError("NaN is not a semifield scalar")
        self._validate(value)
        self.value = value

    @staticmethod
    def _validate(value: float) -> None:
        raise NotImplementedError

    @classmethod
    def _from_number(cls, value):
        if isinstance(value, Fraction):
            return cls(value.numerator / value.denominator)
        return cls(float(value))

    @classmethod
    def parse(cls, text: str):
        text = text.strip()
        try:
            return cls._from_number(Fraction(text))
        except (ValueError, ZeroDivisionError):
            pass
        try:
            return cls(float(text))
        except ValueError as exc:
            raise UsageError(f"cannot parse float scalar from {text!r}") from exc

    def leq(self, other) -> bool:
        return self.value <= other.value

    def approx_equal(self, other, rel_tol: float = 1e-9) -> bool:
        self._require_operand(other)
        return math.isclose(self.value, other.value, rel_tol=rel_tol, abs_tol=1e-12)

    def __eq__(self, other) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.value == other.value

    def __hash__(self):
        return hash((type(self), self.value))

    def to_float(self) -> float:
        return self.value

    def __str__(self) -> str:
        return repr(self.value)


class MaxTimesFloat(_FloatScalar):
    """Nonnegative double under (max, *)."""

    tag = SemifieldTag.MAX_TIMES
    backend = Backend.FLOAT

    __slots__ = ()

    @staticmethod
    def _validate(value: float) -> None:
        if value < 0 or math.isinf(value):
            raise DomainError(f"max-times scalars are finite and nonnegative, got {value}")

    def __mul__(self, other: "MaxTimesFloat") -> "MaxTimesFloat":
        if not self._check_operand(other):
            return NotImplemented
        return MaxTimesFloat(self.value * other.value)

    def __pow__(self, exponent) -> "MaxTimesFloat":
        if isinstance(exponent, float):
            e = exponent
        else:
            e = float(_normalize_exponent(exponent))
        if self.value == 0.0:
            if e > 0:
                return MaxTimesFloat(0.0)
            raise DomainError(f"zero cannot be raised to exponent {e}")
        return MaxTimesFloat(self.value**e)

    def inv(self) -> "MaxTimesFloat":
        if self.value == 0.0:
            raise DomainError("inverse of the semifield zero is undefined")
        return MaxTimesFloat(1.0 / self.value)


MaxTimesFloat.zero = MaxTimesFloat(0.0)
MaxTimesFloat.one = MaxTimesFloat(1.0)


class MaxPlusFloat(_FloatScalar):
    """Double (or -inf) under (max, +)."""

    tag = SemifieldTag.MAX_PLUS
    backend = Backend.FLOAT

    __slots__ = ()

    @staticmethod
    def _validate(value: float) -> None:
        if value == math.inf:
            raise DomainError("+inf is not a max-plus scalar")

    @classmethod
    def parse(cls, text: str) -> "MaxPlusFloat":
        if text.strip() == "-inf":
            return cls(-math.inf)
        return super().parse(text)

    @property
    def is_zero(self) -> bool:
        return self.value == -math.inf

    def __mul__(self, other: "MaxPlusFloat") -> "MaxPlusFloat":
        if not self._check_operand(other):
            return NotImplemented
        if self.is_zero or other.is_zero:
            return MaxPlusFloat(-math.inf)
        return MaxPlusFloat(self.value + other.value)

    def __pow__(self, exponent) -> "MaxPlusFloat":
        if isinstance(exponent, float):
            e = exponent
        else:
            e = float(_normalize_exponent(exponent))
        if self.is_zero:
            if e > 0:
                return MaxPlusFloat(-math.inf)
            raise DomainError(f"zero cannot be raised to exponent {e}")
        return MaxPlusFloat(self.value * e)

    def inv(self) -> "MaxPlusFloat":
        if self.is_zero:
            raise DomainError("inverse of the semifield zero is undefined")
        return MaxPlusFloat(-self.value)


MaxPlusFloat.zero = MaxPlusFloat(-math.inf)
MaxPlusFloat.one = MaxPlusFloat(0.0)


_SCALAR_TYPES: dict[tuple[SemifieldTag, Backend], type[Scalar]] = {
    (SemifieldTag.MAX_TIMES, Backend.EXACT): MaxTimesExact,
    (SemifieldTag.MAX_PLUS, Backend.EXACT): MaxPlusExact,
    (SemifieldTag.MAX_TIMES, Backend.FLOAT): MaxTimesFloat,
    (SemifieldTag.MAX_PLUS, Backend.FLOAT): MaxPlusFloat,
}


def scalar_type(tag: SemifieldTag, backend: Backend = Backend.EXACT) -> type[Scalar]:
    """The scalar class implementing the requested scale and backend."""
    return _SCALAR_TYPES[(tag, backend)]
