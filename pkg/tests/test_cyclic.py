"""Shift/decimation algebra and canonical forms."""

import random
from math import gcd

import pytest

from lppairs.cyclic import (
    CyclicVector,
    decimate,
    decimation_canon,
    euler_phi,
    multiplier_group,
    necklace_canon,
    shift,
    units,
)

from conftest import random_binary, random_vector


def test_cyclic_vector_basics():
    v = CyclicVector([0, 1, 1, 0, 1])
    assert v.length == 5
    assert v.density == 3
    assert v.is_binary()
    assert not CyclicVector([0, 2, 1]).is_binary()


def test_units_are_coprime_and_match_phi():
    for n in (1, 2, 7, 12, 15, 35, 77):
        us = units(n)
        assert all(gcd(u, n) == 1 for u in us)
        assert len(us) == euler_phi(n)
        assert us == tuple(sorted(us))


def test_shift_moves_entries():
    v = CyclicVector([1, 2, 3, 4, 5])
    # (c_j v)_g = v_{g-j}
    assert tuple(shift(v, 1)) == (5, 1, 2, 3, 4)
    assert tuple(shift(v, -1)) == (2, 3, 4, 5, 1)
    assert tuple(shift(v, 5)) == tuple(v)


def test_decimate_uses_inverse_index():
    v = CyclicVector([0, 1, 2, 3, 4])
    # (d_k v)_g = v_{k^{-1} g}; for k=2 on Z_5, k^{-1}=3
    assert tuple(decimate(v, 2)) == (0, 3, 1, 4, 2)
    assert tuple(decimate(v, 1)) == tuple(v)


def test_decimate_rejects_non_units():
    with pytest.raises(ValueError):
        decimate(CyclicVector([1, 0, 0, 1, 0, 0]), 2)


def test_shift_composition():
    rng = random.Random(101)
    for _ in range(20):
        n = rng.choice([5, 9, 15])
        v = CyclicVector(random_vector(rng, n))
        j, k = rng.randrange(n), rng.randrange(n)
        assert shift(shift(v, j), k) == shift(v, j + k)


def test_decimation_composition():
    rng = random.Random(102)
    for _ in range(20):
        n = rng.choice([5, 9, 15, 21])
        v = CyclicVector(random_vector(rng, n))
        a, b = rng.choice(units(n)), rng.choice(units(n))
        assert decimate(decimate(v, a), b) == decimate(v, (a * b) % n)


def test_decimation_shift_commutation():
    # d_k c_j = c_{kj} d_k
    rng = random.Random(103)
    for _ in range(20):
        n = rng.choice([7, 15, 35])
        v = CyclicVector(random_vector(rng, n))
        j, k = rng.randrange(n), rng.choice(units(n))
        assert decimate(shift(v, j), k) == shift(decimate(v, k), k * j)


def test_necklace_canon_is_shift_invariant():
    rng = random.Random(104)
    for _ in range(20):
        n = rng.choice([6, 10, 15])
        v = CyclicVector(random_vector(rng, n))
        canon, j = necklace_canon(v)
        assert shift(v, j) == canon
        assert necklace_canon(shift(v, rng.randrange(n)))[0] == canon
        # canonical form is minimal over all rotations
        assert all(tuple(canon) <= tuple(shift(v, t)) for t in range(n))


def test_decimation_canon_is_orbit_invariant():
    rng = random.Random(105)
    for _ in range(15):
        n = rng.choice([9, 15, 21])
        v = CyclicVector(random_vector(rng, n, 0, 2))
        canon, (j, k) = decimation_canon(v)
        assert shift(decimate(v, k), j) == canon
        moved = shift(decimate(v, rng.choice(units(n))), rng.randrange(n))
        assert decimation_canon(moved)[0] == canon


def test_decimation_canon_is_orbit_minimum():
    rng = random.Random(106)
    for _ in range(10):
        n = rng.choice([9, 15])
        v = CyclicVector(random_vector(rng, n, 0, 1))
        canon, _ = decimation_canon(v)
        orbit = {
            tuple(shift(decimate(v, k), j))
            for k in units(n)
            for j in range(n)
        }
        assert tuple(canon) == min(orbit)


def test_multiplier_group_witnesses():
    rng = random.Random(107)
    for _ in range(15):
        n = rng.choice([7, 13, 15])
        v = CyclicVector(random_binary(rng, n, rng.randint(1, n - 1)))
        g = multiplier_group(v)
        assert 1 in g
        for member in g.members:
            j = g.witness_shift(member)
            assert shift(decimate(v, member), j) == v


def test_multiplier_group_is_closed():
    rng = random.Random(108)
    for _ in range(15):
        n = rng.choice([7, 13, 15, 21])
        v = CyclicVector(random_binary(rng, n, rng.randint(1, n - 1)))
        g = multiplier_group(v)
        members = set(g.members)
        for a in members:
            assert pow(a, -1, n) % n in members
            for b in members:
                assert (a * b) % n in members


def test_quadratic_residue_multipliers():
    # the quadratic residue sequence of length 7 has the residues {1, 2, 4}
    # as multipliers
    v = CyclicVector([0, 1, 1, 0, 1, 0, 0])
    assert multiplier_group(v).members == (1, 2, 4)


def test_orbit_size_divides_group_order():
    # |orbit| * |G_v| = n * phi(n) for density coprime to n
    rng = random.Random(109)
    for _ in range(10):
        n = 15
        v = CyclicVector(random_binary(rng, n, 4))
        g = multiplier_group(v)
        orbit = {
            tuple(shift(decimate(v, k), j))
            for k in units(n)
            for j in range(n)
        }
        assert len(orbit) * g.order == n * euler_phi(n)
