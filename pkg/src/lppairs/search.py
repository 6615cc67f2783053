"""End-to-end Legendre pair search over one coprime factorization.

The pipeline: generate compressed complementary pairs for both factors,
combine every delta1-pair with every delta2-pair into a task carrying four
marginal instances, enumerate each instance's binary matrices, match the two
sides of each cross-matching on the unit-index power spectral density, and
confirm every match with the exact integer autocorrelation test.  Matching
is asymmetric: the side with fewer matrices is held in memory (bucketed by
rounded PSD), the other side streams past and probes; the bucket is purely
an optimization and every hit is re-verified, so false bucket collisions
cost time, never correctness.

Results are deduplicated by the unordered pair of decimation-class canonical
forms and sorted, which makes the final archive independent of worker count
and scheduling.
"""

from __future__ import annotations

import hashlib
import json
import os
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from math import gcd
from pathlib import Path

from . import seqio
from .bmfm import MarginalInstance, _colex_subsets, count, enumerate_matrices, enumerate_with_spectrum
from .compress import BinaryMatrix, CrtContext, theta_inv
from .cyclic import CyclicVector, decimation_canon
from .errors import InvariantViolation
from .pairgen import enum_candidates, expand_pairs, match_pairs
from .spectral import exact_complementary, paf


@dataclass(frozen=True)
class SearchConfig:
    threads: int = 1
    tolerance: float = 1e-6
    bucket_precision: int = 6
    max_bucket_memory: int = 2_000_000
    exhaustive_match: bool = False
    stop_after: int | None = None
    checkpoint_path: str | None = None
    archive_path: str | None = None

    def result_fields(self) -> tuple:
        """Everything that can change the result set.

        Worker count, memory cap, and the early-stop hook affect scheduling
        and truncation but never the records a completed task produces, so
        they are excluded; a run may be resumed with any of them changed.
        """
        return (self.tolerance, self.bucket_precision, self.exhaustive_match)


@dataclass(frozen=True)
class SearchTask:
    """One (delta1-pair, delta2-pair) combination: four marginal instances."""

    index: int
    members1: tuple[tuple[int, ...], tuple[int, ...]]
    members2: tuple[tuple[int, ...], tuple[int, ...]]

    def instance(self, i: int, j: int) -> MarginalInstance:
        return MarginalInstance(self.members1[i], self.members2[j])

    @property
    def instances(self) -> tuple[MarginalInstance, ...]:
        return tuple(self.instance(i, j) for i in (0, 1) for j in (0, 1))


@dataclass(frozen=True)
class LegendrePairRecord:
    u: tuple[int, ...]
    v: tuple[int, ...]
    canon_u: tuple[int, ...]
    canon_v: tuple[int, ...]
    lam: int
    gamma: int
    rho_u: int
    rho_v: int
    task: int
    instances: tuple[tuple[int, int], tuple[int, int]]

    @property
    def key(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return tuple(sorted((self.canon_u, self.canon_v)))


# the two cross-matchings of the four instances: (u-instance, v-instance)
_MATCHINGS = (((0, 0), (1, 1)), ((0, 1), (1, 0)))


def correlation_energy(v) -> int:
    """Sum of squared off-peak autocorrelations of the {-1,1} version of v,
    over the first half of the lags."""
    w = tuple(2 * int(x) - 1 for x in v)
    values = paf(w).values
    return sum(values[j] ** 2 for j in range(1, (len(w) - 1) // 2 + 1))


def canonicalize_lp(u, v, lam: int, task: int = -1,
                    instances=((0, 0), (1, 1))) -> LegendrePairRecord:
    """Build the deduplication record for a verified pair.

    The record key is the unordered pair of decimation-class canonical
    forms; equal keys identify equivalent pairs.
    """
    u = u if isinstance(u, CyclicVector) else CyclicVector(u)
    v = v if isinstance(v, CyclicVector) else CyclicVector(v)
    if not exact_complementary(u, v, lam):
        raise ValueError("not a complementary pair at the stated lambda")
    return LegendrePairRecord(
        u=tuple(u),
        v=tuple(v),
        canon_u=tuple(decimation_canon(u)[0]),
        canon_v=tuple(decimation_canon(v)[0]),
        lam=lam,
        gamma=lam,
        rho_u=correlation_energy(u),
        rho_v=correlation_energy(v),
        task=task,
        instances=tuple((int(a), int(b)) for a, b in instances),
    )


def compressed_census(length: int, delta: int, tolerance: float = 1e-6):
    """Candidates, matched pairs, and expanded pairs for one factor.

    Returns (candidates, pairs, expanded).
    """
    _validate_length(length)
    if length % delta != 0:
        raise ValueError(f"{delta} does not divide {length}")
    delta2 = length // delta
    if gcd(delta, delta2) != 1:
        raise ValueError(f"cofactors {delta}, {delta2} are not coprime")
    lam = (length + 1) // 2
    gamma = float(lam)
    cands = list(enum_candidates(delta, delta2, lam, gamma, tolerance=tolerance))
    pairs = match_pairs(cands, lam=lam, delta2=delta2, gamma=gamma)
    return cands, pairs, expand_pairs(pairs)


def build_tasks(pairs1, pairs2) -> list[SearchTask]:
    """One task per pair combination, deterministically ordered."""
    tasks = []
    for i, a in enumerate(pairs1):
        for j, b in enumerate(pairs2):
            tasks.append(SearchTask(
                index=i * len(pairs2) + j,
                members1=a.members,
                members2=b.members,
            ))
    return tasks


def _psd_weights(ctx: CrtContext, zi: tuple[int, int]):
    import numpy as np

    i1, i2 = zi
    w1 = np.exp(2j * np.pi * i1 * np.arange(ctx.d1) / ctx.d1)
    w2 = np.exp(2j * np.pi * i2 * np.arange(ctx.d2) / ctx.d2)
    return w1, w2


def _bucket_chunks(inst: MarginalInstance, ctx: CrtContext, zi, config: SearchConfig):
    """Yield {rounded-psd: [vector, ...]} maps covering all solutions.

    When the solution count exceeds the memory cap, the enumeration is
    partitioned by fixing leading rows to each of their possible contents
    (first-row prefix splitting) and each partition is yielded separately;
    nothing is ever dropped.
    """
    cap = max(1, config.max_bucket_memory)
    scale = 10 ** config.bucket_precision
    weights = _psd_weights(ctx, zi)
    yield from _chunks_rec((), inst.row_sums, inst.col_sums, ctx, zi, scale, cap, weights)


def _chunks_rec(prefix, rows, cols, ctx, zi, scale, cap, weights):
    inst = MarginalInstance(rows, cols)
    n = count(inst)
    if n == 0:
        return
    if n <= cap or len(rows) == 1:
        i1, i2 = zi
        buckets: dict[int, list] = {}
        if prefix:
            w1, w2 = weights
            base = sum(
                w1[r] * (sum(row[c] * w2[c] for c in range(len(row))))
                for r, row in enumerate(prefix)
            )
            offset = len(prefix)

            def visit(mat):
                mu = base + sum(
                    w1[offset + r] * sum(row[c] * w2[c] for c in range(len(row)))
                    for r, row in enumerate(mat.rows)
                )
                key = int(round((mu.real * mu.real + mu.imag * mu.imag) * scale))
                full = BinaryMatrix(prefix + mat.rows)
                buckets.setdefault(key, []).append(tuple(theta_inv(full, ctx)))

            enumerate_matrices(inst, visit)
        else:
            def visit(mat, spec):
                mu = spec[i1, i2]
                key = int(round((mu.real * mu.real + mu.imag * mu.imag) * scale))
                buckets.setdefault(key, []).append(tuple(theta_inv(mat, ctx)))

            enumerate_with_spectrum(inst, visit)
        if buckets:
            yield buckets
        return
    for subset in _colex_subsets(len(cols), rows[0]):
        row = tuple(1 if c in subset else 0 for c in range(len(cols)))
        reduced = tuple(cols[c] - row[c] for c in range(len(cols)))
        if min(reduced) < 0:
            continue
        yield from _chunks_rec(prefix + (row,), rows[1:], reduced, ctx, zi, scale, cap, weights)


def run_task(task: SearchTask, ctx: CrtContext, config: SearchConfig) -> list[LegendrePairRecord]:
    """All Legendre pairs discoverable from one pair combination.

    For each of the two cross-matchings, the instance with fewer solutions
    is bucketed by PSD at the unit index; the other instance streams its
    solutions and probes the target bucket and both rounding neighbors.
    Every probe hit is confirmed with the exact integer test before a
    record is emitted.
    """
    lam = (ctx.ell + 1) // 2
    zi = ctx.psi(ctx.z)
    scale = 10 ** config.bucket_precision
    records: list[LegendrePairRecord] = []

    for matching in _MATCHINGS:
        (i1, j1), (i2, j2) = matching
        inst_u = task.instance(i1, j1)
        inst_v = task.instance(i2, j2)
        n_u = count(inst_u)
        n_v = count(inst_v)
        if n_u == 0 or n_v == 0:
            continue

        def emit(u_vec, v_vec, matching=matching):
            if exact_complementary(CyclicVector(u_vec), CyclicVector(v_vec), lam):
                records.append(canonicalize_lp(
                    u_vec, v_vec, lam, task=task.index, instances=matching))

        if config.exhaustive_match:
            us: list[tuple[int, ...]] = []
            vs: list[tuple[int, ...]] = []
            enumerate_matrices(inst_u, lambda m: us.append(tuple(theta_inv(m, ctx))))
            enumerate_matrices(inst_v, lambda m: vs.append(tuple(theta_inv(m, ctx))))
            for u_vec in us:
                for v_vec in vs:
                    emit(u_vec, v_vec)
            continue

        swapped = n_v < n_u
        small, large = (inst_v, inst_u) if swapped else (inst_u, inst_v)
        for buckets in _bucket_chunks(small, ctx, zi, config):
            def probe(mat, spec):
                mu = spec[zi[0], zi[1]]
                psd1 = mu.real * mu.real + mu.imag * mu.imag
                base = int(round((lam - psd1) * scale))
                probe_vec = None
                for key in (base - 1, base, base + 1):
                    hits = buckets.get(key)
                    if not hits:
                        continue
                    if probe_vec is None:
                        probe_vec = tuple(theta_inv(mat, ctx))
                    for held in hits:
                        if swapped:
                            emit(probe_vec, held)
                        else:
                            emit(held, probe_vec)

            enumerate_with_spectrum(large, probe)
    return records


def _validate_length(length: int) -> None:
    if length < 3 or length % 2 == 0:
        raise ValueError(f"length must be odd and at least 3, got {length}")


def _validate_factors(length: int, d1: int, d2: int) -> None:
    _validate_length(length)
    if d1 * d2 != length:
        raise ValueError(f"{d1} * {d2} != {length}")
    if gcd(d1, d2) != 1:
        raise ValueError(f"factors {d1}, {d2} are not coprime")
    if d1 < 2 or d2 < 2:
        raise ValueError("factors must both exceed 1")


def _fingerprint(length, d1, d2, config: SearchConfig, expanded1, expanded2) -> str:
    doc = {
        "length": length,
        "factors": [d1, d2],
        "config": list(config.result_fields()),
        "pairs1": [list(m) for p in expanded1 for m in p.members],
        "pairs2": [list(m) for p in expanded2 for m in p.members],
    }
    return hashlib.sha256(json.dumps(doc, sort_keys=True).encode()).hexdigest()


def _record_from_doc(doc) -> LegendrePairRecord:
    bits = lambda s: tuple(int(c) for c in s)
    return LegendrePairRecord(
        u=bits(doc["u"]),
        v=bits(doc["v"]),
        canon_u=bits(doc["canon_u"]),
        canon_v=bits(doc["canon_v"]),
        lam=doc["lambda"],
        gamma=doc["lambda"],
        rho_u=doc["rho_u"],
        rho_v=doc["rho_v"],
        task=doc["task"],
        instances=tuple((int(a), int(b)) for a, b in doc["instances"]),
    )


def _worker(payload):
    length, d1, d2, cfg, index, members1, members2 = payload
    ctx = CrtContext(d1, d2)
    config = SearchConfig(
        tolerance=cfg[0],
        bucket_precision=cfg[1],
        max_bucket_memory=cfg[2],
        exhaustive_match=cfg[3],
    )
    task = SearchTask(index=index, members1=members1, members2=members2)
    return index, run_task(task, ctx, config)


class _Progress:
    """Task completion tracking with optional on-disk checkpointing."""

    def __init__(self, fingerprint: str, n_tasks: int, path):
        self.fingerprint = fingerprint
        self.n_tasks = n_tasks
        self.path = path
        self.completed: set[int] = set()
        self.records: list[LegendrePairRecord] = []
        self._records_path = str(path) + ".records" if path else None

    def resume(self) -> None:
        if not self.path or not os.path.exists(self.path):
            return
        cp = seqio.load_checkpoint(self.path)
        if cp.fingerprint != self.fingerprint:
            raise ValueError(
                "checkpoint fingerprint does not match this configuration; refusing to resume"
            )
        if cp.n_tasks != self.n_tasks:
            raise ValueError("checkpoint task count mismatch; refusing to resume")
        self.completed = set(cp.completed)
        if self._records_path and os.path.exists(self._records_path):
            with open(self._records_path, "r+") as fh:
                data = fh.read(cp.partial_offset)
                fh.truncate(cp.partial_offset)
            for line in data.splitlines():
                if line.strip():
                    self.records.append(_record_from_doc(json.loads(line)))

    def mark(self, index: int, new_records) -> None:
        self.completed.add(index)
        self.records.extend(new_records)
        if not self.path:
            return
        with open(self._records_path, "a") as fh:
            for record in new_records:
                fh.write(seqio.record_to_json(record) + "\n")
            fh.flush()
            os.fsync(fh.fileno())
        offset = os.path.getsize(self._records_path)
        seqio.save_checkpoint(self.path, seqio.Checkpoint(
            fingerprint=self.fingerprint,
            n_tasks=self.n_tasks,
            completed=frozenset(self.completed),
            partial_offset=offset,
        ))


def _finalize(progress: _Progress, lam: int) -> list[LegendrePairRecord]:
    """Deduplicate by canonical key, keep the first-discovered record, verify, sort."""
    ordered = sorted(
        progress.records,
        key=lambda r: (r.key, r.task, r.instances, r.u, r.v),
    )
    final: list[LegendrePairRecord] = []
    for record in ordered:
        if final and final[-1].key == record.key:
            continue
        if not exact_complementary(
            CyclicVector(record.u), CyclicVector(record.v), lam
        ):
            raise InvariantViolation(f"archived record fails verification: {record}")
        final.append(record)
    return final


def run_search(length: int, d1: int, d2: int,
               config: SearchConfig = SearchConfig(), resume: bool = False):
    """Full pipeline: census both factors, run all tasks, dedupe, archive.

    Returns (records, summary).  The record list is sorted by canonical
    key and is identical for any worker count.  With a checkpoint path,
    an interrupted run restarts from the last completed task; resuming
    under a different configuration is refused.
    """
    _validate_factors(length, d1, d2)
    ctx = CrtContext(d1, d2)
    lam = (length + 1) // 2
    _, _, expanded1 = compressed_census(length, d1, config.tolerance)
    _, _, expanded2 = compressed_census(length, d2, config.tolerance)
    tasks = build_tasks(expanded1, expanded2)
    fingerprint = _fingerprint(length, d1, d2, config, expanded1, expanded2)

    progress = _Progress(fingerprint, len(tasks), config.checkpoint_path)
    if resume:
        progress.resume()
    pending = [t for t in tasks if t.index not in progress.completed]

    def stop() -> bool:
        return config.stop_after is not None and len(progress.records) >= config.stop_after

    if config.threads > 1 and pending:
        cfg = (config.tolerance, config.bucket_precision,
               config.max_bucket_memory, config.exhaustive_match)
        payloads = [
            (length, d1, d2, cfg, t.index, t.members1, t.members2) for t in pending
        ]
        with ProcessPoolExecutor(max_workers=config.threads) as pool:
            futures = [pool.submit(_worker, p) for p in payloads]
            for future in as_completed(futures):
                index, new_records = future.result()
                progress.mark(index, new_records)
                if stop():
                    for f in futures:
                        f.cancel()
                    break
    else:
        for task in pending:
            progress.mark(task.index, run_task(task, ctx, config))
            if stop():
                break

    final = _finalize(progress, lam)
    summary = {
        "length": length,
        "factors": [d1, d2],
        "lambda": lam,
        "tasks": len(tasks),
        "completed": len(progress.completed),
        "records": len(final),
    }
    if config.archive_path:
        seqio.write_archive(config.archive_path, final, summary)
    return final, summary
