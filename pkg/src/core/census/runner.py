"""普查执行器: exact / sampled / unlabelled censuses

Work is cut into deterministic contiguous chunks (subset encodings, orbit
representatives or sample indices). Chunks are classified in a process pool
and their tallies merged in chunk order, so the summary does not depend on
the worker count.
"""
from __future__ import annotations

import logging
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import partial
from fractions import Fraction
from pathlib import Path
from typing import Callable, Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from src.config import settings
from src.core.autgrp.search import automorphism_group, canonical_form
from src.core.census.checkpoint import CensusCheckpoint
from src.core.census.classify import classify
from src.core.census.orbits import aut_orbit_representatives
from src.core.census.records import (
    CensusRecord,
    CensusSummary,
    Classification,
    Tallies,
    format_decimal,
    format_fraction,
    summary_from_tallies,
)
from src.core.digraph.cayley import cayley
from src.core.digraph.connection_set import ConnectionSet
from src.core.errors import CapExceededError, CheckpointMismatchError, PreconditionError, VerificationFailure
from src.core.groups.finite_group import FiniteGroup
from src.core.groups.structure import automorphism_group_of, regular_representation
from src.core.perm.group import PermGroup

logger = logging.getLogger(__name__)

RecordSink = Callable[[CensusRecord], None]


@dataclass
class _Chunk:
    start: int
    end: int
    subsets: np.ndarray
    weights: Optional[np.ndarray] = None


@dataclass
class _ChunkResult:
    start: int
    end: int
    tallies: Tallies
    records: List[CensusRecord] = field(default_factory=list)


def _classify_chunk(R: FiniteGroup, reg: PermGroup, keep_records: bool, chunk: _Chunk) -> _ChunkResult:
    tallies = Tallies()
    records = []
    for i, bits in enumerate(chunk.subsets.tolist()):
        weight = 1 if chunk.weights is None else int(chunk.weights[i])
        record = classify(R, ConnectionSet(R.order, int(bits)), reg, orbit_size=weight)
        tallies.add(record)
        if keep_records:
            records.append(record)
    return _ChunkResult(chunk.start, chunk.end, tallies, records)


def _map_chunks(fn: Callable, chunks: Sequence, workers: int) -> Iterator:
    """Results in chunk order."""
    if workers <= 1 or len(chunks) <= 1:
        yield from map(fn, chunks)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        yield from pool.map(fn, chunks)


def _resolve_workers(workers: Optional[int]) -> int:
    w = settings.census_workers if workers is None else workers
    if w < 1:
        raise PreconditionError(f"worker count must be >= 1, got {w}")
    return w


def _ranges(total: int, chunk_size: int) -> List[Tuple[int, int]]:
    return [(s, min(s + chunk_size, total)) for s in range(0, total, chunk_size)]


def _run_chunks(
    R: FiniteGroup,
    chunks: List[_Chunk],
    workers: int,
    checkpoint: Optional[CensusCheckpoint],
    on_record: Optional[RecordSink],
) -> Tallies:
    done = checkpoint.load() if checkpoint is not None else {}
    total = Tallies()
    pending = []
    for chunk in chunks:
        if chunk.start in done:
            end, tallies = done[chunk.start]
            if end != chunk.end:
                raise CheckpointMismatchError(f"checkpoint chunk {chunk.start}..{end} does not match {chunk.start}..{chunk.end}")
            total = total + tallies
        else:
            pending.append(chunk)

    reg = regular_representation(R)
    fn = partial(_classify_chunk, R, reg, on_record is not None)
    for result in _map_chunks(fn, pending, workers):
        total = total + result.tallies
        if checkpoint is not None:
            checkpoint.append(result.start, result.end, result.tallies)
        if on_record is not None:
            for record in result.records:
                on_record(record)
        logger.debug(f"{R.name}: chunk {result.start}..{result.end} done")
    return total


def _checkpoint_for(
    path: Optional[Union[str, Path]],
    R: FiniteGroup,
    mode: str,
    reduce_by_aut: bool,
    seed: Optional[int],
    chunk_size: int,
    on_record: Optional[RecordSink],
) -> Optional[CensusCheckpoint]:
    if path is None:
        return None
    if on_record is not None:
        raise PreconditionError("record streaming cannot be combined with a checkpoint")
    header = {
        "group_id": R.name,
        "mode": mode,
        "reduce_by_aut": reduce_by_aut,
        "seed": seed,
        "r": R.order,
        "chunk_size": chunk_size,
    }
    return CensusCheckpoint(path, header)


# ----------------------------------------------------------------------
# exact
# ----------------------------------------------------------------------
def exact_census(
    R: FiniteGroup,
    reduce_by_aut: bool = False,
    workers: Optional[int] = None,
    checkpoint: Optional[Union[str, Path]] = None,
    on_record: Optional[RecordSink] = None,
    chunk_size: Optional[int] = None,
) -> CensusSummary:
    """Classify all 2^r connection sets of R.

    With ``reduce_by_aut`` one representative (minimum encoding) per
    Aut(R)-orbit is classified and weighted by its orbit size.
    Records reach ``on_record`` in ascending encoding order.
    """
    r = R.order
    cap = settings.exact_census_cap
    if r > cap:
        raise CapExceededError("r for exact census", r, cap)
    workers = _resolve_workers(workers)
    chunk_size = chunk_size or settings.census_chunk_size
    if r >= 16 and not reduce_by_aut and workers == 1:
        logger.warning(f"Exact census of order {r} without orbit reduction on a single worker")

    started = time.perf_counter()
    logger.info(f"Exact census of {R.name} (r = {r}, reduce_by_aut = {reduce_by_aut}, workers = {workers})")
    if reduce_by_aut:
        reps, sizes = aut_orbit_representatives(R)
        chunks = [_Chunk(s, e, reps[s:e], sizes[s:e]) for s, e in _ranges(reps.size, chunk_size)]
    else:
        chunks = [_Chunk(s, e, np.arange(s, e, dtype=np.int64)) for s, e in _ranges(1 << r, chunk_size)]

    ckpt = _checkpoint_for(checkpoint, R, "exact", reduce_by_aut, None, chunk_size, on_record)
    tallies = _run_chunks(R, chunks, workers, ckpt, on_record)
    if tallies.total != 1 << r:
        raise VerificationFailure(f"exact census of {R.name} counted {tallies.total} subsets, expected {1 << r}")

    elapsed = time.perf_counter() - started
    summary = summary_from_tallies(R.name, r, "exact", tallies, reduce_by_aut=reduce_by_aut, wall_time_s=elapsed)
    logger.info(f"Exact census of {R.name} finished in {elapsed:.2f}s: DRR {summary.drr_proportion}")
    return summary


# ----------------------------------------------------------------------
# sampled
# ----------------------------------------------------------------------
def sample_subsets(r: int, k: int, seed: int) -> np.ndarray:
    """Low r bits of the first k raw outputs of PCG64(seed)."""
    if not 0 <= r <= 64:
        raise PreconditionError(f"sampled census needs r <= 64, got {r}")
    raw = np.random.PCG64(seed).random_raw(k)
    mask = np.uint64((1 << r) - 1)
    return (raw & mask).astype(np.uint64)


def binomial_half_width(p: Fraction, k: int) -> float:
    """95% normal-approximation half-width."""
    pf = float(p)
    return 1.96 * math.sqrt(pf * (1 - pf) / k)


def sampled_census(
    R: FiniteGroup,
    k: int,
    seed: int,
    workers: Optional[int] = None,
    checkpoint: Optional[Union[str, Path]] = None,
    on_record: Optional[RecordSink] = None,
    chunk_size: Optional[int] = None,
) -> CensusSummary:
    if k < 1:
        raise PreconditionError(f"sample count must be >= 1, got {k}")
    if not 0 <= seed < 1 << 64:
        raise PreconditionError(f"seed must fit 64 bits, got {seed}")
    workers = _resolve_workers(workers)
    chunk_size = chunk_size or settings.census_chunk_size

    started = time.perf_counter()
    logger.info(f"Sampled census of {R.name}: {k} samples, seed {seed}")
    draws = sample_subsets(R.order, k, seed)
    chunks = [_Chunk(s, e, draws[s:e]) for s, e in _ranges(k, chunk_size)]
    ckpt = _checkpoint_for(checkpoint, R, "sampled", False, seed, chunk_size, on_record)
    tallies = _run_chunks(R, chunks, workers, ckpt, on_record)

    p = Fraction(tallies.counts[Classification.DRR], k)
    elapsed = time.perf_counter() - started
    summary = summary_from_tallies(
        R.name,
        R.order,
        "sampled",
        tallies,
        seed=seed,
        samples=k,
        half_width_95=format_decimal(binomial_half_width(p, k)),
        wall_time_s=elapsed,
    )
    logger.info(f"Sampled census of {R.name} finished in {elapsed:.2f}s: DRR {summary.drr_proportion_decimal} ± {summary.half_width_95}")
    return summary


# ----------------------------------------------------------------------
# unlabelled
# ----------------------------------------------------------------------
@dataclass(frozen=True)
class UnlabelledCounts:
    cd_count: int             # isomorphism classes of Cayley digraphs on R
    drr_count: int            # classes that are DRRs
    drr_orbit_count: int      # Aut(R)-orbits on DRR connection sets
    drr_subset_count: int     # DRR connection sets
    aut_r_order: int


def _canonical_chunk(R: FiniteGroup, reg: PermGroup, chunk: _Chunk) -> List[Tuple[str, int, int]]:
    out = []
    for i, bits in enumerate(chunk.subsets.tolist()):
        gamma = cayley(R, ConnectionSet(R.order, int(bits)))
        aut = automorphism_group(gamma, seed=reg)
        out.append((canonical_form(gamma, aut=aut).hex(), aut.order, int(chunk.weights[i])))
    return out


def unlabelled_census(R: FiniteGroup, workers: Optional[int] = None) -> UnlabelledCounts:
    """Isomorphism classes of Cayley digraphs on R, and how many are DRRs.

    Digraphs whose connection sets share an Aut(R)-orbit are isomorphic, so
    one canonical form per orbit representative suffices.
    """
    cap = settings.unlabelled_census_cap
    if R.order > cap:
        raise CapExceededError("r for unlabelled census", R.order, cap)
    workers = _resolve_workers(workers)
    reps, sizes = aut_orbit_representatives(R)
    chunks = [_Chunk(s, e, reps[s:e], sizes[s:e]) for s, e in _ranges(reps.size, settings.census_chunk_size)]
    reg = regular_representation(R)

    classes: Dict[str, int] = {}
    drr_orbits = 0
    drr_subsets = 0
    for results in _map_chunks(partial(_canonical_chunk, R, reg), chunks, workers):
        for code, aut_order, weight in results:
            classes[code] = aut_order
            if aut_order == R.order:
                drr_orbits += 1
                drr_subsets += weight
    drr_count = sum(1 for order in classes.values() if order == R.order)
    aut_r = automorphism_group_of(R).order

    if drr_count != drr_orbits:
        raise VerificationFailure(
            f"{R.name}: {drr_count} DRR isomorphism classes but {drr_orbits} Aut(R)-orbits of DRR connection sets"
        )
    if drr_count * aut_r < drr_subsets:
        raise VerificationFailure(f"{R.name}: {drr_count} DRR classes < {drr_subsets} DRR sets / |Aut(R)| = {aut_r}")
    logger.info(f"Unlabelled census of {R.name}: {len(classes)} classes, {drr_count} DRR")
    return UnlabelledCounts(len(classes), drr_count, drr_orbits, drr_subsets, aut_r)


def unlabelled_summary(R: FiniteGroup, workers: Optional[int] = None) -> CensusSummary:
    started = time.perf_counter()
    counts = unlabelled_census(R, workers)
    p = Fraction(counts.drr_count, counts.cd_count)
    return CensusSummary(
        group_id=R.name,
        r=R.order,
        mode="unlabelled",
        counts={"DRR": counts.drr_count, "NON_DRR": counts.cd_count - counts.drr_count},
        total=counts.cd_count,
        drr_proportion=format_fraction(p),
        drr_proportion_decimal=format_decimal(p),
        aut_r_order=counts.aut_r_order,
        drr_subset_count=counts.drr_subset_count,
        wall_time_s=time.perf_counter() - started,
    )

