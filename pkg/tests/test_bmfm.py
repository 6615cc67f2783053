"""Binary matrices with fixed marginals: feasibility, counting, enumeration."""

import random
from itertools import product as iproduct

import numpy as np
import pytest

from lppairs.bmfm import (
    MarginalInstance,
    count,
    enumerate_matrices,
    enumerate_with_spectrum,
    feasible,
    solutions,
)
from lppairs.oracle import oracle_bmfm, oracle_bmfm_census, oracle_feasible_subsets
from lppairs.spectral import two_dim_dft

from conftest import random_marginals


def test_instance_normalizes_and_transposes():
    inst = MarginalInstance([1, 2], [1, 1, 1])
    assert inst.n_rows == 2 and inst.n_cols == 3
    t = inst.transpose()
    assert t.row_sums == (1, 1, 1) and t.col_sums == (1, 2)


def test_known_counts():
    assert count(MarginalInstance([1, 1], [1, 1])) == 2
    assert count(MarginalInstance([0, 0], [0, 0])) == 1
    assert count(MarginalInstance([2, 0], [2, 0])) == 0
    assert count(MarginalInstance([2, 1], [1, 1, 1])) == 3


def test_count_mismatched_totals_is_zero():
    assert count(MarginalInstance([2, 2], [1, 1, 1])) == 0
    assert not feasible(MarginalInstance([2, 2], [1, 1, 1]))


def test_count_matches_transpose_and_permutation():
    rng = random.Random(401)
    for _ in range(30):
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        rows, cols = random_marginals(rng, m, n)
        rows, cols = list(rows), list(cols)
        inst = MarginalInstance(rows, cols)
        assert count(inst) == count(inst.transpose())
        rng.shuffle(rows)
        rng.shuffle(cols)
        assert count(inst) == count(MarginalInstance(rows, cols))


def test_exhaustive_3x3_against_oracle():
    census = oracle_bmfm_census(3, 3)
    for rows in iproduct(range(4), repeat=3):
        for cols in iproduct(range(4), repeat=3):
            if sum(rows) != sum(cols):
                continue
            inst = MarginalInstance(rows, cols)
            assert count(inst) == census.get((rows, cols), 0)


def test_enumeration_matches_oracle_solution_sets():
    rng = random.Random(402)
    for _ in range(25):
        m, n = rng.randint(1, 3), rng.randint(1, 4)
        rows = tuple(rng.randint(0, n) for _ in range(m))
        cols = tuple(rng.randint(0, m) for _ in range(n))
        if sum(rows) != sum(cols):
            continue
        inst = MarginalInstance(rows, cols)
        _, oracle_hits = oracle_bmfm(rows, cols)
        ours = {mat.rows for mat in solutions(inst)}
        assert ours == set(oracle_hits)
        assert count(inst) == len(ours)


def test_enumerate_visits_each_solution_once():
    inst = MarginalInstance([2, 1, 2], [2, 1, 2])
    seen = []
    total = enumerate_matrices(inst, lambda mat: seen.append(mat.rows))
    assert total == len(seen) == len(set(seen)) == count(inst)
    for rows in seen:
        assert tuple(sum(r) for r in rows) == inst.row_sums
        assert tuple(sum(c) for c in zip(*rows)) == inst.col_sums


def test_enumerate_with_spectrum_matches_direct_dft():
    inst = MarginalInstance([2, 1, 2], [1, 2, 1, 1])

    def check(mat, spec):
        direct = two_dim_dft(np.array(mat.rows), 3, 4)
        assert np.allclose(spec, direct, atol=1e-9)

    assert enumerate_with_spectrum(inst, check) == count(inst)


def test_gale_ryser_agrees_with_subset_oracle():
    rng = random.Random(403)
    hits = 0
    for _ in range(200):
        rows, cols = random_marginals(rng, 4, 4)
        ours = feasible(MarginalInstance(rows, cols))
        assert ours == oracle_feasible_subsets(rows, cols)
        # feasibility must also agree with a positive count
        assert ours == (count(MarginalInstance(rows, cols)) > 0)
        hits += ours
    assert 0 < hits < 200


def test_feasible_rejects_out_of_range_marginals():
    # a row sum larger than the column count is impossible even when the
    # totals balance; same for a column sum larger than the row count
    assert not feasible(MarginalInstance([4, 0], [2, 1, 1]))
    assert count(MarginalInstance([4, 0], [2, 1, 1])) == 0
    assert not feasible(MarginalInstance([2, 2], [3, 1]))


def test_memoized_count_is_stable():
    inst = MarginalInstance([3, 2, 2], [2, 2, 2, 1])
    first = count(inst)
    assert first == count(inst)
    assert first == count(MarginalInstance([2, 2, 3], [1, 2, 2, 2]))
