from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Tuple

import numpy as np

# Round seeds come in fixed blocks; a round's seed never depends on how
# many rounds are consumed or on which worker consumes them.
BLOCK_ROUNDS = 256


@dataclass(frozen=True)
class RngStream:
    """Deterministic tree of random streams rooted at one master seed.

        stream = RngStream(7)
        worlds = stream.child(round_index)       # per greedy round
        gen = stream.child("tr").generator()     # one-off draws

    String keys are folded into integers with a stable byte hash so that
    stream paths stay reproducible across interpreter runs.
    """

    master_seed: int
    path: Tuple[int, ...] = ()

    def child(self, *keys: int | str) -> "RngStream":
        return RngStream(self.master_seed, self.path + tuple(_key(k) for k in keys))

    def seed_sequence(self, *extra: int) -> np.random.SeedSequence:
        return np.random.SeedSequence(
            entropy=int(self.master_seed) & 0xFFFFFFFFFFFFFFFF,
            spawn_key=self.path + tuple(extra),
        )

    def generator(self) -> np.random.Generator:
        return np.random.default_rng(self.seed_sequence())

    def block_seeds(self, block: int) -> np.ndarray:
        """The 64-bit seeds of rounds ``block * BLOCK_ROUNDS`` onwards."""
        return self.seed_sequence(0xB10C, block).generate_state(BLOCK_ROUNDS, dtype=np.uint64)

    def round_seed(self, index: int) -> int:
        """64-bit seed that round ``index`` of this stream is drawn from."""
        return int(self.block_seeds(index // BLOCK_ROUNDS)[index % BLOCK_ROUNDS])


def _key(key: int | str) -> int:
    if isinstance(key, int):
        if key < 0:
            raise ValueError("stream keys must be non-negative")
        return key
    return int.from_bytes(key.encode("utf-8")[:8].ljust(8, b"\0"), "little")


def block_spans(start: int, stop: int) -> Iterator[Tuple[int, int, int]]:
    """Yield ``(block, first_row, last_row_exclusive)`` covering rounds [start, stop)."""
    index = start
    while index < stop:
        block = index // BLOCK_ROUNDS
        row = index % BLOCK_ROUNDS
        take = min(BLOCK_ROUNDS - row, stop - index)
        yield block, row, row + take
        index += take
