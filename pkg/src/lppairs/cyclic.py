"""Exact integer arithmetic on cyclic vectors: shifts, decimations, canonical forms.

All vectors are indexed by Z_n with 0-based positions.  Shifting by j moves
entry g to position g + j (mod n); decimating by a unit k sends position g to
k*g (mod n), i.e. (d_k v)_g = v_{k^{-1} g}.  The decimation class of a vector
is its orbit under the group generated by shifts and decimations; its
canonical form is the lexicographically smallest orbit member.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Iterable


class CyclicVector(tuple):
    """An integer vector indexed by Z_n.  Immutable, hashable, compares as a tuple."""

    def __new__(cls, entries: Iterable[int]) -> "CyclicVector":
        vec = super().__new__(cls, (int(x) for x in entries))
        if len(vec) == 0:
            raise ValueError("cyclic vector must have positive length")
        return vec

    @property
    def length(self) -> int:
        return len(self)

    @property
    def entries(self) -> tuple[int, ...]:
        return tuple(self)

    @property
    def density(self) -> int:
        return sum(self)

    def is_binary(self) -> bool:
        return all(x in (0, 1) for x in self)


@lru_cache(maxsize=None)
def units(n: int) -> tuple[int, ...]:
    """The units of Z_n in ascending order."""
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    return tuple(k for k in range(n) if gcd(k, n) == 1)


def euler_phi(n: int) -> int:
    return len(units(n))


def shift(v, j: int) -> CyclicVector:
    """Cyclic shift by j: entry g of the result is v_{g-j}."""
    v = v if isinstance(v, CyclicVector) else CyclicVector(v)
    n = len(v)
    j %= n
    if j == 0:
        return v
    return CyclicVector(v[n - j:] + v[:n - j])


def decimate(v, k: int) -> CyclicVector:
    """Decimation by a unit k: entry g of the result is v_{k^{-1} g}."""
    v = v if isinstance(v, CyclicVector) else CyclicVector(v)
    n = len(v)
    k %= n
    if gcd(k, n) != 1:
        raise ValueError(f"decimation requires gcd(k, length) = 1, got k={k}, length={n}")
    if k == 1:
        return v
    kinv = pow(k, -1, n)
    return CyclicVector(v[(kinv * g) % n] for g in range(n))


def _min_rotation(entries: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Smallest rotation of a tuple and the shift j with shift(v, j) minimal."""
    n = len(entries)
    doubled = entries + entries
    best = entries
    best_j = 0
    # shift(v, j) equals doubled[n-j : 2n-j]
    for j in range(1, n):
        cand = doubled[n - j: 2 * n - j]
        if cand < best:
            best = cand
            best_j = j
    return best, best_j


def necklace_canon(v) -> tuple[CyclicVector, int]:
    """Lexicographically smallest rotation of v, with the witnessing shift."""
    v = v if isinstance(v, CyclicVector) else CyclicVector(v)
    best, j = _min_rotation(tuple(v))
    return CyclicVector(best), j


def decimation_canon(v) -> tuple[CyclicVector, tuple[int, int]]:
    """Lexicographically smallest member of the shift+decimation orbit of v.

    Returns (canonical, (j, k)) such that shift(decimate(v, k), j) == canonical.
    Ties are broken toward the smallest decimation k, then the smallest shift j.
    """
    v = v if isinstance(v, CyclicVector) else CyclicVector(v)
    n = len(v)
    best = None
    witness = (0, 1)
    for k in units(n):
        dv = tuple(decimate(v, k))
        cand, j = _min_rotation(dv)
        if best is None or cand < best:
            best = cand
            witness = (j, k)
    return CyclicVector(best), witness


@dataclass(frozen=True)
class MultiplierGroup:
    """The subgroup of units g with shift(decimate(v, g), j) == v for some shift j."""

    modulus: int
    members: tuple[int, ...]
    witnesses: tuple[tuple[int, int], ...]  # (g, j) pairs, one per member

    def __contains__(self, g: int) -> bool:
        return g % self.modulus in self.members

    @property
    def order(self) -> int:
        return len(self.members)

    def witness_shift(self, g: int) -> int:
        for member, j in self.witnesses:
            if member == g % self.modulus:
                return j
        raise KeyError(f"{g} is not a multiplier")


def multiplier_group(v) -> MultiplierGroup:
    """Compute the multiplier group of v with a witness shift for each member."""
    v = v if isinstance(v, CyclicVector) else CyclicVector(v)
    n = len(v)
    target = tuple(v)
    members = []
    witnesses = []
    for g in units(n):
        dv = tuple(decimate(v, g))
        doubled = dv + dv
        for j in range(n):
            if doubled[n - j: 2 * n - j] == target:
                members.append(g)
                witnesses.append((g, j))
                break
    return MultiplierGroup(n, tuple(members), tuple(witnesses))
