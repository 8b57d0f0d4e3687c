from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Dict, Optional

from src.errors import TimeLimitExceeded


class Timer:
    """Simple context manager for measuring elapsed time."""

    def __init__(self) -> None:
        self.start: float = 0.0
        self.elapsed: float = 0.0

    def __enter__(self) -> "Timer":
        self.start = time.perf_counter()
        return self

    def __exit__(self, exc_type, exc, tb) -> None:  # type: ignore[override]
        self.elapsed = time.perf_counter() - self.start

    @property
    def elapsed_ms(self) -> float:
        return self.elapsed * 1000.0


@dataclass
class TimingStats:
    """Accumulated wall time per estimation phase (sampling, dominator, ...)."""

    total_time: float = 0.0
    calls: int = 0
    per_phase: Dict[str, float] = field(default_factory=dict)

    def record(self, duration: float, phase: str | None = None) -> None:
        self.total_time += duration
        self.calls += 1
        if phase:
            self.per_phase[phase] = self.per_phase.get(phase, 0.0) + duration

    def merge(self, other: "TimingStats") -> None:
        self.total_time += other.total_time
        self.calls += other.calls
        for phase, elapsed in other.per_phase.items():
            self.per_phase[phase] = self.per_phase.get(phase, 0.0) + elapsed

    def as_dict(self) -> Dict[str, float]:
        data = {"total_time": self.total_time, "calls": float(self.calls)}
        for phase, elapsed in sorted(self.per_phase.items()):
            data[f"phase_{phase}"] = elapsed
        return data


class Deadline:
    """Absolute wall-clock limit checked between greedy rounds."""

    def __init__(self, seconds: Optional[float]) -> None:
        self.seconds = seconds
        self._expires = None if seconds is None else time.perf_counter() + seconds

    @classmethod
    def unlimited(cls) -> "Deadline":
        return cls(None)

    def remaining(self) -> float:
        if self._expires is None:
            return float("inf")
        return self._expires - time.perf_counter()

    def expired(self) -> bool:
        return self.remaining() <= 0.0

    def check(self, partial: object = None) -> None:
        if self.expired():
            raise TimeLimitExceeded(
                f"time limit of {self.seconds}s exceeded", partial=partial
            )
