from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from src.diffusion.sampling import SampledWorld, iter_live_batches
from src.graphs.prob_graph import ProbGraph
from src.utils.rng import BLOCK_ROUNDS, RngStream
from src.utils.timing import Timer, TimingStats

logger = logging.getLogger(__name__)

# Graphs this small produce few distinct worlds; identical rows are
# evaluated once and weighted by multiplicity.
DEDUP_MAX_EDGES = 512

# A kernel maps one world to integer contributions: (indices, values).
Kernel = Callable[[SampledWorld], Tuple[Sequence[int], Sequence[int]]]


@dataclass
class RoundTotals:
    """Integer sums over a run of worlds.

    ``counts[i]`` is the sum of contributions to index i; ``per_round`` (when
    requested) is each round's total contribution in round order. ``timing``
    sums sampling and kernel seconds over all workers.
    """

    counts: np.ndarray
    rounds: int
    per_round: Optional[np.ndarray] = None
    timing: TimingStats = field(default_factory=TimingStats)


def _distinct(batch: np.ndarray) -> Tuple[np.ndarray, np.ndarray, np.ndarray]:
    if batch.shape[1] > DEDUP_MAX_EDGES or len(batch) == 1:
        idx = np.arange(len(batch))
        return batch, np.ones(len(batch), dtype=np.int64), idx
    if batch.shape[1] == 0:
        return batch[:1], np.array([len(batch)], dtype=np.int64), np.zeros(len(batch), dtype=np.int64)
    packed = np.packbits(batch, axis=1)
    _, first, inverse, weights = np.unique(
        packed, axis=0, return_index=True, return_inverse=True, return_counts=True
    )
    return batch[first], weights.astype(np.int64), inverse.reshape(-1)


def _run_span(
    graph: ProbGraph,
    kernel: Kernel,
    size: int,
    stream: RngStream,
    start: int,
    rounds: int,
    keep_rounds: bool,
    phase: str = "kernel",
) -> Tuple[np.ndarray, Optional[np.ndarray], TimingStats]:
    counts = np.zeros(size, dtype=np.int64)
    per_round: List[np.ndarray] = []
    timing = TimingStats()
    batches = iter_live_batches(graph, stream, rounds, start)
    while True:
        with Timer() as timer:
            item = next(batches, None)
            if item is not None:
                rows, weights, inverse = _distinct(item[1])
        timing.record(timer.elapsed, "sampling")
        if item is None:
            break
        totals = np.zeros(len(rows), dtype=np.int64)
        with Timer() as timer:
            for i, row in enumerate(rows):
                idx, vals = kernel(SampledWorld(graph, row))
                if len(idx):
                    vals = np.asarray(vals, dtype=np.int64)
                    np.add.at(counts, np.asarray(idx, dtype=np.int64), vals * weights[i])
                    totals[i] = int(vals.sum())
        timing.record(timer.elapsed, phase)
        if keep_rounds:
            per_round.append(totals[inverse])
    kept = np.concatenate(per_round) if keep_rounds and per_round else None
    return counts, kept, timing


def run_worlds(
    graph: ProbGraph,
    kernel: Kernel,
    size: int,
    rounds: int,
    stream: RngStream,
    workers: int = 1,
    keep_rounds: bool = False,
    phase: str = "kernel",
) -> RoundTotals:
    """Evaluate ``kernel`` on ``rounds`` worlds and sum its integer output.

    Work splits on block boundaries, so the totals are bit-identical for any
    ``workers``; the kernel must be picklable when ``workers > 1``. Kernel
    time is recorded under ``phase``.
    """
    if rounds <= 0:
        raise ValueError("number of rounds must be positive")
    blocks = -(-rounds // BLOCK_ROUNDS)
    workers = max(1, min(int(workers), blocks))
    if workers == 1:
        counts, kept, timing = _run_span(
            graph, kernel, size, stream, 0, rounds, keep_rounds, phase
        )
        return RoundTotals(counts, rounds, kept, timing)

    per_worker = -(-blocks // workers)
    spans = []
    for w in range(workers):
        first = w * per_worker * BLOCK_ROUNDS
        last = min(rounds, (w + 1) * per_worker * BLOCK_ROUNDS)
        if first < last:
            spans.append((first, last - first))
    logger.debug("running %d rounds on %d workers", rounds, len(spans))
    counts = np.zeros(size, dtype=np.int64)
    kept_parts: List[np.ndarray] = []
    timing = TimingStats()
    with ProcessPoolExecutor(max_workers=len(spans)) as pool:
        futures = [
            pool.submit(
                _run_span, graph, kernel, size, stream, first, count, keep_rounds, phase
            )
            for first, count in spans
        ]
        for future in futures:
            part, kept, span_timing = future.result()
            counts += part
            timing.merge(span_timing)
            if kept is not None:
                kept_parts.append(kept)
    per_round = np.concatenate(kept_parts) if keep_rounds else None
    return RoundTotals(counts, rounds, per_round, timing)
