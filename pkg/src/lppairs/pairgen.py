"""Generation and matching of compressed complementary integer pairs.

Candidates are integer vectors of length delta with entries in 0..delta2 and
fixed sum kappa whose off-peak PSD stays below gamma; one representative per
decimation class is kept.  Two candidates form a pair when their
autocorrelations sum to (delta2 * lambda) at every nonzero lag — an exact
integer join up to the decimation action, no floating point.  Each pair is
then expanded by the PSD-preserving decimations of its second member, which
is what downstream simultaneous decompression needs in order not to miss
solutions.

The composition walk prunes on two necessary conditions: every later entry is
at least the first (true of any lexicographically minimal rotation), and the
partial sum of squares cannot exceed the ceiling implied by the PSD bound
(delta * sum q^2 = kappa^2 + sum of off-peak PSD values < kappa^2 +
(delta-1) * gamma).
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from functools import lru_cache
from math import cos, floor, pi

import numpy as np

from .cyclic import CyclicVector, MultiplierGroup, _min_rotation, multiplier_group, units
from .errors import InvariantViolation
from .spectral import paf_psd


@dataclass(frozen=True)
class CompressedCandidate:
    """A decimation-class representative surviving the PSD screen."""

    vector: CyclicVector
    delta2: int
    kappa: int
    paf: tuple[int, ...]  # all lags 0..delta-1

    @property
    def delta(self) -> int:
        return len(self.vector)

    @property
    def paf_offpeak(self) -> tuple[int, ...]:
        return self.paf[1:]

    @property
    def psd(self) -> np.ndarray:
        return paf_psd(self.paf)

    @property
    def multipliers(self) -> MultiplierGroup:
        return multiplier_group(self.vector)


@dataclass(frozen=True)
class CompressedPair:
    """Two complementary candidates: PAF(q, g) + PAF(p, g) = delta2*lam, g != 0.

    q is always the canonical representative of its class.  p is a concrete
    class member, decimated by r relative to its own canonical form p_canon;
    r != 1 happens when the two canonical representatives are complementary
    only after re-aligning one side.  The pair identity (what "one pair"
    means when counting) is the unordered pair of classes (q, p_canon).
    """

    q: CompressedCandidate
    p: CompressedCandidate
    p_canon: tuple[int, ...]
    r: int
    lam: int
    gamma: float
    s_q: tuple[int, ...]
    s_p: tuple[int, ...]

    @property
    def delta(self) -> int:
        return self.q.delta

    @property
    def delta2(self) -> int:
        return self.q.delta2

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (tuple(self.q.vector), self.p_canon)

    @property
    def members(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (tuple(self.q.vector), tuple(self.p.vector))


def _full_paf(ssq: int, half: tuple[int, ...], delta: int) -> tuple[int, ...]:
    return (ssq,) + half + half[::-1] if delta > 1 else (ssq,)


@lru_cache(maxsize=None)
def _cos_table(delta: int) -> tuple[tuple[float, ...], ...]:
    half = (delta - 1) // 2
    return tuple(
        tuple(2.0 * cos(2.0 * pi * g * k / delta) for g in range(1, half + 1))
        for k in range(1, half + 1)
    )


def enum_candidates(delta: int, delta2: int, kappa: int, gamma: float,
                    tolerance: float = 1e-6):
    """Candidate class representatives in ascending canonical order.

    Yields one CompressedCandidate per decimation class of vectors with
    entries in 0..delta2 and sum kappa that pass the off-peak PSD test
    against gamma.
    """
    if delta < 1 or delta % 2 == 0:
        raise ValueError(f"candidate length must be odd, got {delta}")
    if delta2 < 1:
        raise ValueError(f"entry bound must be positive, got {delta2}")
    if not 0 <= kappa <= delta * delta2:
        raise ValueError(f"sum {kappa} unreachable with entries 0..{delta2}")

    half = (delta - 1) // 2
    ssq_max = floor((kappa * kappa + (delta - 1) * (gamma + tolerance)) / delta)
    ctable = _cos_table(delta)
    gamma_cut = gamma + tolerance

    survivors: list[tuple[tuple[int, ...], int, tuple[int, ...]]] = []
    prefix = [0] * delta

    def descend(pos: int, remaining: int, ssq: int, low: int):
        slots = delta - pos
        if slots == 0:
            if remaining == 0:
                _leaf(tuple(prefix), ssq)
            return
        if not slots * low <= remaining <= slots * delta2:
            return
        base, extra = divmod(remaining, slots)
        if ssq + (slots - extra) * base * base + extra * (base + 1) ** 2 > ssq_max:
            return
        if slots == 1:
            prefix[pos] = remaining
            _leaf(tuple(prefix), ssq + remaining * remaining)
            return
        hi = min(delta2, remaining - (slots - 1) * low)
        for x in range(low, hi + 1):
            prefix[pos] = x
            descend(pos + 1, remaining - x, ssq + x * x, low)

    def _leaf(vec: tuple[int, ...], ssq: int):
        low = vec[0]
        doubled = vec + vec
        for t in range(1, delta):
            if doubled[t] == low and doubled[t: t + delta] < vec:
                return
        half_paf = tuple(
            sum(vec[i] * doubled[i + g] for i in range(delta))
            for g in range(1, half + 1)
        )
        for row in ctable:
            value = ssq
            for c, pval in zip(row, half_paf):
                value += c * pval
            if value >= gamma_cut:
                return
        survivors.append((vec, ssq, half_paf))

    for q0 in range(0, min(delta2, kappa // delta) + 1):
        prefix[0] = q0
        descend(1, kappa - q0, q0 * q0, q0)

    unit_list = units(delta)
    inverses = {k: pow(k, -1, delta) for k in unit_list if delta > 1}

    def is_class_canon(vec: tuple[int, ...]) -> bool:
        for k in unit_list:
            if k == 1 % delta:
                continue
            kinv = inverses[k]
            dv = tuple(vec[(kinv * g) % delta] for g in range(delta))
            if _min_rotation(dv)[0] < vec:
                return False
        return True

    reps = [
        (vec, ssq, half_paf)
        for vec, ssq, half_paf in survivors
        if is_class_canon(vec)
    ]
    reps.sort()
    for vec, ssq, half_paf in reps:
        yield CompressedCandidate(
            vector=CyclicVector(vec),
            delta2=delta2,
            kappa=kappa,
            paf=_full_paf(ssq, half_paf, delta),
        )


def _permuted_paf(paf: tuple[int, ...], s_inv: int) -> tuple[int, ...]:
    """The autocorrelation of the s-decimated vector: lag g reads lag s^-1*g."""
    n = len(paf)
    return tuple(paf[(s_inv * g) % n] for g in range(n))


def psd_equiv_decimations(candidate: CompressedCandidate) -> tuple[int, ...]:
    """Non-multiplier decimations that leave the PSD (hence PAF) unchanged."""
    delta = candidate.delta
    members = candidate.multipliers.members
    out = []
    for s in units(delta):
        if s in members:
            continue
        if _permuted_paf(candidate.paf, pow(s, -1, delta)) == candidate.paf:
            out.append(s)
    return tuple(out)


def match_pairs(candidates, lam: int, delta2: int, gamma: float,
                tolerance: float = 1e-9) -> list[CompressedPair]:
    """All unordered class pairs with off-peak PAF sums equal to delta2*lam.

    Candidates are class representatives, so the join has to work up to the
    decimation action: classes (a, b) pair up when PAF(a, g) + PAF(d_r(b), g)
    hits the target for every g != 0 and some unit r, not necessarily r = 1.
    Grouping by the decimation-canonical form of the off-peak autocorrelation
    finds exactly those classes; the smallest valid r is then recovered per
    pair and the second member is stored concretely decimated by it.  A class
    may pair with itself.  The join is exact-integer throughout, pairs are
    ordered by canonical form, and each is validated against complementarity,
    PSD-sum, and sum-of-squares identities.
    """
    cands = list(candidates)
    if not cands:
        return []
    delta = cands[0].delta
    target = delta2 * lam
    unit_list = units(delta)
    inverses = {r: pow(r, -1, delta) for r in unit_list}

    def paf_class_key(paf: tuple[int, ...]) -> tuple[int, ...]:
        return min(_permuted_paf(paf, r)[1:] for r in unit_list)

    buckets: dict[tuple[int, ...], list[CompressedCandidate]] = {}
    for c in cands:
        buckets.setdefault(paf_class_key(c.paf), []).append(c)

    pairs: list[CompressedPair] = []
    for key in sorted(buckets):
        group = buckets[key]
        complement_paf = tuple(target - x for x in group[0].paf)
        complement = paf_class_key(complement_paf)
        if complement < key:
            continue
        if complement == key:
            combos = [
                (group[i], group[j])
                for i in range(len(group))
                for j in range(i, len(group))
            ]
        else:
            other = buckets.get(complement)
            if not other:
                continue
            combos = [(a, b) for a in group for b in other]
        for a, b in combos:
            q, other = (a, b) if tuple(a.vector) <= tuple(b.vector) else (b, a)
            want = tuple(target - x for x in q.paf)[1:]
            valid = [
                r for r in unit_list
                if _permuted_paf(other.paf, inverses[r])[1:] == want
            ]
            if not valid:
                raise InvariantViolation(
                    "bucket join produced a pair with no aligning decimation"
                )
            r = min(valid)
            pairs.append(_build_pair(q, other, r, lam, gamma, tolerance))
    pairs.sort(key=lambda pr: pr.key)
    return pairs


def _decimated_candidate(c: CompressedCandidate, r: int) -> CompressedCandidate:
    if r == 1:
        return c
    delta = c.delta
    rinv = pow(r, -1, delta)
    vec = tuple(c.vector[(rinv * g) % delta] for g in range(delta))
    return CompressedCandidate(
        vector=CyclicVector(vec),
        delta2=c.delta2,
        kappa=c.kappa,
        paf=_permuted_paf(c.paf, rinv),
    )


def _build_pair(q, p_class, r, lam, gamma, tolerance) -> CompressedPair:
    delta = q.delta
    delta2 = q.delta2
    if p_class.delta != delta or p_class.delta2 != delta2 or p_class.kappa != q.kappa:
        raise ValueError("pair members come from different candidate spaces")
    p = _decimated_candidate(p_class, r)
    kappa = q.kappa
    target = delta2 * lam
    if any(q.paf[g] + p.paf[g] != target for g in range(1, delta)):
        raise InvariantViolation(
            f"autocorrelations not complementary for pair {q.vector}, {p.vector}"
        )
    ssq_sum = q.paf[0] + p.paf[0]
    expected = 2 * kappa * kappa - (delta - 1) * delta2 * lam
    if ssq_sum != expected:
        raise InvariantViolation(
            f"sum of squares {ssq_sum} != {expected} for pair {q.vector}, {p.vector}"
        )
    psd_sum = q.psd + p.psd
    if np.abs(psd_sum[1:] - gamma).max() > max(tolerance, 1e-9):
        raise InvariantViolation(
            f"PSD sums stray from {gamma} for pair {q.vector}, {p.vector}"
        )
    return CompressedPair(
        q=q,
        p=p,
        p_canon=tuple(p_class.vector),
        r=r,
        lam=lam,
        gamma=gamma,
        s_q=psd_equiv_decimations(q),
        s_p=psd_equiv_decimations(p),
    )


def expand_pairs(pairs) -> list[CompressedPair]:
    """Decimated variants (q, d_s(p)) for s in {1} union S_p, every pair.

    Only the second member is decimated; the first is reused as-is across
    variants.  Each s preserves the PAF of p exactly, so every variant is
    itself a valid complementary pair and shares the base pair's class key.
    """
    out: list[CompressedPair] = []
    for pair in pairs:
        delta = pair.delta
        for s in (1,) + pair.s_p:
            if s == 1:
                out.append(pair)
            else:
                out.append(replace(
                    pair,
                    p=_decimated_candidate(pair.p, s),
                    r=(s * pair.r) % delta,
                ))
    return out


def relative_match_audit(candidates, lam: int, delta2: int) -> list[tuple]:
    """Candidate pairs complementary only after decimating one member.

    Returns (q, p, valid_decimations) triples where some decimation r makes
    PAF(d_r(p)) the exact complement of PAF(q) but r = 1 does not.  An empty
    audit means the representative-level join loses nothing.
    """
    cands = list(candidates)
    if not cands:
        return []
    delta = cands[0].delta
    target = delta2 * lam
    unit_list = units(delta)
    inverses = {r: pow(r, -1, delta) for r in unit_list}
    out = []
    for i, a in enumerate(cands):
        complement = tuple(target - x for x in a.paf)
        for b in cands[i:]:
            valid = [
                r
                for r in unit_list
                if _permuted_paf(b.paf, inverses[r])[1:] == complement[1:]
            ]
            if valid and 1 not in valid:
                out.append((a, b, tuple(valid)))
    return out
