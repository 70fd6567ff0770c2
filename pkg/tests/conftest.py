"""Shared fixtures: the golden 4x4 comparison instances and random generators."""

import random
from fractions import Fraction

import pytest

from troprank.linalg import Matrix, Vector
from troprank.semifield import MaxTimesExact

# Reciprocal single-matrix instance (golden data, exact scale).
EXAMPLE1_A = [
    ["1", "3", "2", "4"],
    ["1/3", "1", "1/3", "1/2"],
    ["1/2", "3", "1", "1/4"],
    ["1/4", "2", "4", "1"],
]

# Two-matrix instance.
EXAMPLE2_A1 = [
    ["1", "3", "2", "4"],
    ["1/3", "1", "1/3", "1/2"],
    ["1/2", "3", "1", "1/3"],
    ["1/4", "2", "3", "1"],
]
EXAMPLE2_A2 = [
    ["1", "4", "2", "3"],
    ["1/4", "1", "1/2", "1/2"],
    ["1/2", "2", "1", "1/4"],
    ["1/3", "2", "4", "1"],
]
# Their combined entrywise maximum.
EXAMPLE2_B = [
    ["1", "4", "2", "4"],
    ["1/3", "1", "1/2", "1/2"],
    ["1/2", "3", "1", "1/3"],
    ["1/3", "2", "4", "1"],
]

# Score-constraint instance: same comparison matrix as EXAMPLE1_A plus a
# cyclic chain of constraints equivalent to x2 = x3 = x4.
EXAMPLE3_C = [
    ["0", "0", "0", "0"],
    ["0", "0", "0", "1"],
    ["0", "1", "0", "0"],
    ["0", "0", "1", "0"],
]


def mt_matrix(rows) -> Matrix:
    return Matrix.build(rows, MaxTimesExact)


def mt_vector(values) -> Vector:
    return Vector.build(values, MaxTimesExact)


def random_positive_matrix(rng: random.Random, n: int, den_max: int = 10) -> Matrix:
    """Random positive exact max-times matrix with small rational entries."""
    return Matrix.build(
        [
            [Fraction(rng.randint(1, den_max), rng.randint(1, den_max)) for _ in range(n)]
            for _ in range(n)
        ],
        MaxTimesExact,
    )


def random_regular_vector(rng: random.Random, n: int, den_max: int = 10) -> Vector:
    return Vector.build(
        [Fraction(rng.randint(1, den_max), rng.randint(1, den_max)) for _ in range(n)],
        MaxTimesExact,
    )


def random_reciprocal_matrix(rng: random.Random, n: int, den_max: int = 10) -> Matrix:
    """Random positive matrix with unit diagonal and a[j][i] = 1 / a[i][j]."""
    rows = [[Fraction(1)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rng.randint(1, den_max), rng.randint(1, den_max))
            rows[i][j] = v
            rows[j][i] = 1 / v
    return Matrix.build(rows, MaxTimesExact)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240817)


@pytest.fixture
def example1_a() -> Matrix:
    return mt_matrix(EXAMPLE1_A)


@pytest.fixture
def example3_c() -> Matrix:
    return mt_matrix(EXAMPLE3_C)
