"""Shared utility helpers."""

from .log import configure_logging
from .rng import BLOCK_ROUNDS, RngStream, block_spans
from .timing import Deadline, Timer, TimingStats

__all__ = [
    "BLOCK_ROUNDS",
    "Deadline",
    "RngStream",
    "Timer",
    "TimingStats",
    "block_spans",
    "configure_logging",
]
