from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.graphs.prob_graph import BlockKind
from src.utils.timing import TimingStats


@dataclass(frozen=True, eq=False)
class DecreaseTable:
    """Estimated decrease in expected spread for every candidate.

    ``raw_counts[c]`` is the integer sum over θ worlds; ``delta`` divides
    once at the end, so tables built from the same worlds compare exactly.
    Candidates are node ids (node kind) or edge ids (edge kind).
    """

    kind: BlockKind
    theta: int
    raw_counts: np.ndarray
    names: Tuple[str, ...] = ()
    excluded: frozenset[int] = field(default_factory=frozenset)
    timing: TimingStats = field(default_factory=TimingStats)

    @property
    def delta(self) -> np.ndarray:
        values = self.raw_counts / float(self.theta)
        if self.excluded:
            values[list(self.excluded)] = np.nan
        return values

    def __getitem__(self, candidate: int) -> float:
        if candidate in self.excluded:
            raise KeyError(f"{candidate} is not a candidate")
        return float(self.raw_counts[candidate]) / self.theta

    def __len__(self) -> int:
        return len(self.raw_counts)

    def candidates(self) -> List[int]:
        return [c for c in range(len(self.raw_counts)) if c not in self.excluded]

    def argmax(self, pool: Iterable[int]) -> Optional[int]:
        """Candidate in ``pool`` with the largest decrease, lowest id on ties."""
        best: Optional[int] = None
        best_raw = -1
        raw = self.raw_counts
        for c in sorted(pool):
            if c in self.excluded:
                continue
            if raw[c] > best_raw:
                best, best_raw = c, int(raw[c])
        return best

    def ranked(self, pool: Optional[Sequence[int]] = None) -> List[int]:
        members = self.candidates() if pool is None else [c for c in pool if c not in self.excluded]
        return sorted(members, key=lambda c: (-int(self.raw_counts[c]), c))

    def top(self, k: int) -> List[Tuple[int, float]]:
        return [(c, self[c]) for c in self.ranked()[:k]]

    def name(self, candidate: int) -> str:
        return self.names[candidate] if self.names else str(candidate)

    def to_csv(self) -> str:
        """``candidate,delta`` rows sorted by decreasing delta, ids breaking ties."""
        lines = ["candidate,delta"]
        for c in self.ranked():
            lines.append(f"{self.name(c)},{self[c]!r}")
        return "\n".join(lines) + "\n"
