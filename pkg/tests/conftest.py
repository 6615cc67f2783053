"""Shared fixtures: worked-example vectors and small reference data.

The length-35 vectors and their compressions are the hand-checkable
examples used throughout the unit tests; both simultaneous compressions
and the 7x5 reshape were verified against independent arithmetic.
"""

import random

import pytest

# length 35, delta1 = 7, delta2 = 5
V35 = (1, 1, 0, 1, 1, 1, 0, 1, 0, 1, 1, 0, 1, 0, 1, 1, 0,
       0, 1, 0, 1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 0, 1, 1, 1, 0)
U35 = (1, 1, 0, 1, 1, 1, 1, 1, 0, 0, 0, 0, 0, 1, 0, 1, 1,
       0, 0, 0, 1, 0, 1, 1, 1, 1, 0, 0, 1, 1, 1, 0, 0, 0, 0)
Q1 = (4, 2, 1, 4, 3, 3, 1)   # 7-compression of V35
Q2 = (5, 2, 3, 4, 4)         # 5-compression of V35
P1 = (3, 4, 3, 2, 2, 1, 3)   # 7-compression of U35
P2 = (6, 3, 2, 4, 3)         # 5-compression of U35

# theta(V35) under the (7, 5) CRT reshape
A35 = ((1, 0, 1, 1, 1),
       (1, 1, 0, 0, 0),
       (0, 0, 0, 0, 1),
       (1, 1, 0, 1, 1),
       (0, 0, 1, 1, 1),
       (1, 0, 1, 1, 0),
       (1, 0, 0, 0, 0))


@pytest.fixture
def lp77():
    from lppairs import seqio
    from importlib import resources

    path = resources.files("lppairs.data") / "lp77.txt"
    sf = seqio.read_sequences(str(path))
    return sf.sequences


def random_binary(rng: random.Random, n: int, density: int) -> tuple:
    """Binary vector of length n with exactly `density` ones."""
    ones = rng.sample(range(n), density)
    return tuple(1 if i in set(ones) else 0 for i in range(n))


def random_vector(rng: random.Random, n: int, lo: int = 0, hi: int = 3) -> tuple:
    return tuple(rng.randint(lo, hi) for _ in range(n))


def random_marginals(rng: random.Random, m: int, n: int) -> tuple[tuple, tuple]:
    """Random in-range row/column sums with matching totals."""
    rows = tuple(rng.randint(0, n) for _ in range(m))
    while True:
        cols = tuple(rng.randint(0, m) for _ in range(n))
        if sum(cols) == sum(rows):
            return rows, cols
