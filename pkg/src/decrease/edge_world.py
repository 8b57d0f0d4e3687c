from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import List

from src.diffusion.sampling import SampledWorld


@dataclass(frozen=True, eq=False)
class EdgeSampledWorld:
    """A world with every live edge (u, v) split into u -> w_uv -> v.

    Original nodes keep their ids (V_V = [0, n)); virtual node ``n + k``
    stands for the k-th live edge in edge-id order (V_E).
    """

    base: SampledWorld

    @cached_property
    def live_ids(self) -> List[int]:
        return self.base.live_edge_ids()

    @cached_property
    def slot(self) -> List[int]:
        slots = [-1] * self.base.graph.m
        for k, e in enumerate(self.live_ids):
            slots[e] = k
        return slots

    @property
    def original_count(self) -> int:
        return self.base.graph.n

    @property
    def node_count(self) -> int:
        return self.original_count + len(self.live_ids)

    @property
    def edge_count(self) -> int:
        return 2 * len(self.live_ids)

    @property
    def original_nodes(self) -> range:
        return range(self.original_count)

    def is_virtual(self, x: int) -> bool:
        return x >= self.original_count

    def edge_of(self, x: int) -> int:
        return self.live_ids[x - self.original_count]

    def virtual_of(self, e: int) -> int:
        k = self.slot[e]
        if k < 0:
            raise KeyError(f"edge {e} is not live in this world")
        return self.original_count + k

    def successors(self, x: int) -> List[int]:
        n = self.original_count
        graph = self.base.graph
        if x >= n:
            return [graph.dst_list[self.live_ids[x - n]]]
        live = self.base.live_list
        slot = self.slot
        return [n + slot[e] for e in graph.out_edges[x] if live[e]]


def build_edge_world(world: SampledWorld) -> EdgeSampledWorld:
    return EdgeSampledWorld(world)
