from __future__ import annotations

import logging
from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from src.decrease.table import DecreaseTable
from src.diffusion.exact import DEFAULT_MAX_UNCERTAIN
from src.diffusion.spread import evaluate_spread
from src.errors import TimeLimitExceeded
from src.graphs.prob_graph import BlockKind, ProbGraph
from src.graphs.transforms import BlockSet, apply_blockers
from src.utils.rng import RngStream
from src.utils.timing import Deadline, Timer, TimingStats

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class RoundTrace:
    """One committed choice: greedy round, replacement step or heuristic pick."""

    step: int
    phase: str
    candidate: int
    name: str
    delta: Optional[float] = None
    raw: Optional[int] = None

    def as_dict(self) -> Dict[str, Any]:
        return {
            "step": self.step,
            "phase": self.phase,
            "candidate": self.name,
            "delta": self.delta,
            "raw": self.raw,
        }


@dataclass(frozen=True)
class CandidatePool:
    """Blockable candidates: non-seed unblocked nodes, or active edges."""

    kind: BlockKind
    members: Tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.members:
            raise ValueError("candidate pool is empty")

    @classmethod
    def for_graph(cls, graph: ProbGraph, kind: BlockKind) -> "CandidatePool":
        if BlockKind(kind) is BlockKind.NODE:
            skip = set(graph.seeds) | graph.removed_nodes
            return cls(BlockKind.NODE, tuple(u for u in range(graph.n) if u not in skip))
        return cls(BlockKind.EDGE, tuple(graph.active_edge_ids()))

    def __contains__(self, candidate: int) -> bool:
        return candidate in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass
class BlockResult:
    algorithm: str
    blockers: BlockSet
    names: List[str]
    residual_spread: Optional[float] = None
    estimator: str = "none"
    rounds_used: int = 0
    wall_time_ms: float = 0.0
    trace: List[RoundTrace] = field(default_factory=list)
    warnings: List[str] = field(default_factory=list)
    status: str = "ok"
    timing: Dict[str, float] = field(default_factory=dict)

    def as_dict(self, include_timing: bool = True) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "algorithm": self.algorithm,
            "strategy": self.blockers.kind.value,
            "budget": self.blockers.budget,
            "blockers": list(self.names),
            "residual_spread": self.residual_spread,
            "estimator": self.estimator,
            "rounds_used": self.rounds_used,
            "status": self.status,
            "trace": [t.as_dict() for t in self.trace],
            "warnings": list(self.warnings),
        }
        if include_timing:
            data["wall_time_ms"] = self.wall_time_ms
            data["timing"] = dict(self.timing)
        return data


class Minimizer(ABC):
    """Shared interface for all blocker-selection algorithms."""

    name: str
    rounds_used: int = 0

    def __init__(
        self,
        name: Optional[str] = None,
        kind: BlockKind | str = BlockKind.NODE,
        stream: Optional[RngStream] = None,
        evaluation_rounds: int = 10_000,
        evaluation_mode: str = "auto",
        max_uncertain: int = DEFAULT_MAX_UNCERTAIN,
        deadline: Optional[Deadline] = None,
        workers: int = 1,
    ) -> None:
        self.name = name or self.__class__.__name__
        self.kind = BlockKind(kind)
        self.stream = stream if stream is not None else RngStream(0)
        self.evaluation_rounds = int(evaluation_rounds)
        self.evaluation_mode = evaluation_mode
        self.max_uncertain = max_uncertain
        self.deadline = deadline or Deadline.unlimited()
        self.workers = workers
        self.timing = TimingStats()
        self.tables: List[DecreaseTable] = []
        self._trace: List[RoundTrace] = []
        self._warnings: List[str] = []

    @abstractmethod
    def select(self, graph: ProbGraph, budget: int) -> List[int]:
        """Return the chosen blockers in insertion order."""
        raise NotImplementedError

    def reset(self) -> None:
        self.timing = TimingStats()
        self.tables = []
        self._trace = []
        self._warnings = []

    def block(self, graph: ProbGraph, budget: int, evaluate: bool = True) -> BlockResult:
        """Run the algorithm and package the blockers with their residual spread."""
        if budget < 0:
            raise ValueError("budget must be non-negative")
        self.reset()
        try:
            with Timer() as timer:
                members = self.select(graph, budget) if budget else []
        except TimeLimitExceeded as exc:
            partial = list(exc.partial or [])
            exc.partial = self._result(graph, budget, partial, 0.0, status="timeout")
            raise
        result = self._result(graph, budget, members, timer.elapsed_ms)
        if evaluate:
            blocked = apply_blockers(graph, self.kind, members)
            result.residual_spread, result.estimator = evaluate_spread(
                blocked,
                self.stream.child("residual"),
                self.evaluation_rounds,
                mode=self.evaluation_mode,
                max_uncertain=self.max_uncertain,
                workers=self.workers,
            )
        logger.info(
            "%s chose %d/%d blockers in %.1f ms",
            self.name,
            len(members),
            budget,
            result.wall_time_ms,
        )
        return result

    # -- helpers for subclasses -----------------------------------------

    def _result(
        self,
        graph: ProbGraph,
        budget: int,
        members: Sequence[int],
        elapsed_ms: float,
        status: str = "ok",
    ) -> BlockResult:
        blockers = BlockSet(self.kind, tuple(members), budget)
        return BlockResult(
            algorithm=self.name,
            blockers=blockers,
            names=blockers.describe(graph),
            rounds_used=self.rounds_used,
            wall_time_ms=elapsed_ms,
            trace=list(self._trace),
            warnings=list(self._warnings),
            status=status,
            timing=self.timing.as_dict(),
        )

    def _describe(self, graph: ProbGraph, candidate: int) -> str:
        if self.kind is BlockKind.NODE:
            return graph.label(candidate)
        return graph.edge_label(candidate)

    def _record(
        self,
        graph: ProbGraph,
        phase: str,
        candidate: int,
        table: Optional[DecreaseTable] = None,
        delta: Optional[float] = None,
    ) -> None:
        raw = None
        if table is not None:
            raw = int(table.raw_counts[candidate])
            delta = raw / table.theta
        step = len(self._trace)
        self._trace.append(
            RoundTrace(step, phase, candidate, self._describe(graph, candidate), delta, raw)
        )
        logger.debug("%s %s #%d: %s (delta=%s)", self.name, phase, step, self._describe(graph, candidate), delta)

    def _warn(self, message: str) -> None:
        logger.warning("%s: %s", self.name, message)
        self._warnings.append(message)

    def _check_deadline(self, chosen: Sequence[int]) -> None:
        self.deadline.check(partial=list(chosen))
