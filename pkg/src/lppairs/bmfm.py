"""Binary matrices with fixed marginals: feasibility, counting, enumeration.

An instance is a pair of marginal vectors (row sums, column sums).  The
solver fathoms subproblems with the Gale-Ryser condition, propagates forced
all-zero / all-one rows and columns to a fixed point, and then branches on
the row or column admitting the fewest completions.  Branch vectors are
generated in colexicographic rank order, so the enumeration order is
deterministic and independent of platform.

`enumerate_with_spectrum` additionally maintains the two-dimensional DFT of
the partial matrix; each committed row or column adds a rank-one update, so
the full spectrum is available at every leaf for the cost of one outer
product per assignment.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb

import numpy as np

from .compress import BinaryMatrix
from .spectral import _dft_matrix


@dataclass(frozen=True)
class MarginalInstance:
    """Row and column sum constraints for a binary matrix."""

    row_sums: tuple[int, ...]
    col_sums: tuple[int, ...]

    def __init__(self, row_sums, col_sums):
        object.__setattr__(self, "row_sums", tuple(int(x) for x in row_sums))
        object.__setattr__(self, "col_sums", tuple(int(x) for x in col_sums))

    @property
    def n_rows(self) -> int:
        return len(self.row_sums)

    @property
    def n_cols(self) -> int:
        return len(self.col_sums)

    def transpose(self) -> "MarginalInstance":
        return MarginalInstance(self.col_sums, self.row_sums)


def _well_formed(inst: MarginalInstance) -> bool:
    if inst.n_rows == 0 or inst.n_cols == 0:
        return False
    if any(not 0 <= r <= inst.n_cols for r in inst.row_sums):
        return False
    if any(not 0 <= c <= inst.n_rows for c in inst.col_sums):
        return False
    return sum(inst.row_sums) == sum(inst.col_sums)


def _gale_ryser(q, p, n_cols: int, n_rows: int) -> bool:
    """Existence of a binary matrix with row sums q and column sums p."""
    if any(not 0 <= r <= n_cols for r in q):
        return False
    if any(not 0 <= c <= n_rows for c in p):
        return False
    if sum(q) != sum(p):
        return False
    p_desc = sorted(p, reverse=True)
    prefix = 0
    for k in range(1, len(p_desc) + 1):
        prefix += p_desc[k - 1]
        if prefix > sum(min(x, k) for x in q):
            return False
    return True


def feasible(inst: MarginalInstance) -> bool:
    """True iff the instance admits at least one solution."""
    if not _well_formed(inst):
        return False
    return _gale_ryser(inst.row_sums, inst.col_sums, inst.n_cols, inst.n_rows)


@lru_cache(maxsize=None)
def _colex_subsets(n: int, k: int) -> tuple[tuple[int, ...], ...]:
    """k-subsets of {0..n-1} in colexicographic rank order."""
    return tuple(
        sorted(itertools.combinations(range(n), k), key=lambda s: s[::-1])
    )


@lru_cache(maxsize=None)
def _count_sorted(q: tuple[int, ...], p: tuple[int, ...]) -> int:
    # q, p sorted descending; counts depend only on the marginal multisets.
    if not q:
        return 1 if all(x == 0 for x in p) else 0
    q0, rest = q[0], q[1:]
    n = len(p)
    if not 0 <= q0 <= n:
        return 0
    total = 0
    for subset in itertools.combinations(range(n), q0):
        reduced = list(p)
        ok = True
        for j in subset:
            reduced[j] -= 1
            if reduced[j] < 0:
                ok = False
                break
        if not ok:
            continue
        child = tuple(sorted(reduced, reverse=True))
        if _gale_ryser(rest, child, n, len(rest)):
            total += _count_sorted(rest, child)
    return total


def count(inst: MarginalInstance) -> int:
    """Exact solution count via the row-peeling recursion (memoized)."""
    if not feasible(inst):
        return 0
    q = tuple(sorted(inst.row_sums, reverse=True))
    p = tuple(sorted(inst.col_sums, reverse=True))
    return _count_sorted(q, p)


class _Engine:
    """Shared enumeration core; visits leaves through a raw callback.

    The callback receives the grid (list of lists, caller must copy) and the
    current spectrum array (or None).  Returning False stops the search.
    """

    def __init__(self, inst: MarginalInstance, leaf, with_spectrum: bool):
        self.m = inst.n_rows
        self.n = inst.n_cols
        self.inst = inst
        self.leaf = leaf
        self.grid = [[0] * self.n for _ in range(self.m)]
        self.visited = 0
        self.stopped = False
        if with_spectrum:
            self.w_rows = _dft_matrix(self.m)
            self.w_cols = _dft_matrix(self.n)
        else:
            self.w_rows = self.w_cols = None

    def run(self) -> int:
        if not _well_formed(self.inst):
            return 0
        spec = (
            np.zeros((self.m, self.n), dtype=complex)
            if self.w_rows is not None
            else None
        )
        self._rec(
            list(range(self.m)),
            list(range(self.n)),
            list(self.inst.row_sums),
            list(self.inst.col_sums),
            spec,
        )
        return self.visited

    def _row_update(self, spec, i, cols):
        if spec is not None and cols:
            spec += np.outer(self.w_rows[:, i], self.w_cols[list(cols)].sum(axis=0))

    def _col_update(self, spec, j, rows):
        if spec is not None and rows:
            spec += np.outer(self.w_rows[:, list(rows)].sum(axis=1), self.w_cols[j])

    def _rec(self, arows, acols, rneed, cneed, spec):
        if self.stopped:
            return
        if not _gale_ryser(
            [rneed[i] for i in arows],
            [cneed[j] for j in acols],
            len(acols),
            len(arows),
        ):
            return
        arows = list(arows)
        acols = list(acols)
        rneed = list(rneed)
        cneed = list(cneed)
        if spec is not None:
            spec = spec.copy()
        journal: list[tuple[int, int]] = []

        # Propagate forced rows/columns (all zeros or all ones) to a fixed point.
        changed = True
        dead = False
        while changed and not dead:
            changed = False
            for i in list(arows):
                need = rneed[i]
                if need == 0:
                    arows.remove(i)
                    changed = True
                elif need == len(acols):
                    for j in acols:
                        self.grid[i][j] = 1
                        journal.append((i, j))
                        cneed[j] -= 1
                        if cneed[j] < 0:
                            dead = True
                    self._row_update(spec, i, acols)
                    rneed[i] = 0
                    arows.remove(i)
                    changed = True
            if dead:
                break
            for j in list(acols):
                need = cneed[j]
                if need == 0:
                    acols.remove(j)
                    changed = True
                elif need == len(arows):
                    for i in arows:
                        self.grid[i][j] = 1
                        journal.append((i, j))
                        rneed[i] -= 1
                        if rneed[i] < 0:
                            dead = True
                    self._col_update(spec, j, arows)
                    cneed[j] = 0
                    acols.remove(j)
                    changed = True

        if not dead:
            if not arows and not acols:
                self.visited += 1
                if self.leaf(self.grid, spec) is False:
                    self.stopped = True
            elif arows or acols:
                self._branch(arows, acols, rneed, cneed, spec)

        for i, j in journal:
            self.grid[i][j] = 0

    def _branch(self, arows, acols, rneed, cneed, spec):
        # Fewest admissible completions first; rows win ties, then lowest index.
        best = None
        for i in arows:
            key = (comb(len(acols), rneed[i]), 0, i)
            if best is None or key < best:
                best = key
        for j in acols:
            key = (comb(len(arows), cneed[j]), 1, j)
            if best is None or key < best:
                best = key
        _, kind, idx = best

        if kind == 0:
            child_rows = [r for r in arows if r != idx]
            for subset in _colex_subsets(len(acols), rneed[idx]):
                cols = [acols[t] for t in subset]
                for j in cols:
                    self.grid[idx][j] = 1
                    cneed[j] -= 1
                child_spec = spec
                if spec is not None:
                    child_spec = spec.copy()
                    self._row_update(child_spec, idx, cols)
                self._rec(child_rows, acols, rneed, cneed, child_spec)
                for j in cols:
                    self.grid[idx][j] = 0
                    cneed[j] += 1
                if self.stopped:
                    return
        else:
            child_cols = [c for c in acols if c != idx]
            for subset in _colex_subsets(len(arows), cneed[idx]):
                rows = [arows[t] for t in subset]
                for i in rows:
                    self.grid[i][idx] = 1
                    rneed[i] -= 1
                child_spec = spec
                if spec is not None:
                    child_spec = spec.copy()
                    self._col_update(child_spec, idx, rows)
                self._rec(arows, child_cols, rneed, cneed, child_spec)
                for i in rows:
                    self.grid[i][idx] = 0
                    rneed[i] += 1
                if self.stopped:
                    return


def _freeze(grid) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(row) for row in grid)


def enumerate_matrices(inst: MarginalInstance, visitor=None) -> int:
    """Visit every solution as a BinaryMatrix; returns the number visited.

    The visitor may return False to stop early.  With no visitor the
    solutions are only counted (by full traversal; see `count` for the
    closed recursion).
    """
    if visitor is None:
        leaf = lambda grid, spec: None
    else:
        leaf = lambda grid, spec: visitor(BinaryMatrix(_freeze(grid)))
    return _Engine(inst, leaf, with_spectrum=False).run()


def enumerate_with_spectrum(inst: MarginalInstance, visitor) -> int:
    """Like enumerate_matrices, but the visitor also receives the 2-D DFT.

    The spectrum equals `two_dim_dft(matrix, n_rows, n_cols)` and is built
    incrementally from rank-one updates as rows and columns are committed.
    """
    leaf = lambda grid, spec: visitor(BinaryMatrix(_freeze(grid)), spec.copy())
    return _Engine(inst, leaf, with_spectrum=True).run()


def solutions(inst: MarginalInstance) -> list[BinaryMatrix]:
    """All solutions, materialized in enumeration order."""
    out: list[BinaryMatrix] = []
    enumerate_matrices(inst, lambda mat: out.append(mat))
    return out
