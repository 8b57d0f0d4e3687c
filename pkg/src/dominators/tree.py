from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Dict, List, Optional, Protocol, Sequence, Tuple


class FlowGraph(Protocol):
    """Anything a dominator tree can be built on: numbered nodes with successors."""

    @property
    def node_count(self) -> int: ...

    def successors(self, u: int) -> Sequence[int]: ...


@dataclass(frozen=True, eq=False)
class DomTree:
    """Dominator tree of the part of a world reachable from ``root``.

    ``idom`` has no entry for the root or for unreachable nodes; ``order``
    lists the reachable nodes with every node after its immediate dominator.
    """

    root: int
    idom: Dict[int, int]
    order: Tuple[int, ...]

    @cached_property
    def children(self) -> Dict[int, List[int]]:
        kids: Dict[int, List[int]] = {v: [] for v in self.order}
        for v in self.order[1:]:
            kids[self.idom[v]].append(v)
        return kids

    @cached_property
    def subtree_size(self) -> Dict[int, int]:
        return subtree_sizes(self)

    def __contains__(self, node: int) -> bool:
        return node == self.root or node in self.idom

    def __len__(self) -> int:
        return len(self.order)

    def dominators(self, v: int) -> List[int]:
        """Chain of dominators of ``v`` from ``v`` up to the root."""
        chain = [v]
        while chain[-1] != self.root:
            chain.append(self.idom[chain[-1]])
        return chain


def subtree_sizes(
    tree: DomTree, counted: Optional[Callable[[int], bool]] = None
) -> Dict[int, int]:
    """Size of every rooted subtree in one bottom-up pass.

    With ``counted`` only nodes it accepts contribute to the sizes.
    """
    size = dict.fromkeys(tree.order, 0)
    idom = tree.idom
    for v in reversed(tree.order):
        size[v] += 1 if counted is None else int(counted(v))
        parent = idom.get(v)
        if parent is not None:
            size[parent] += size[v]
    return size


def dump_tree(tree: DomTree) -> str:
    """Parent array as ``child parent`` lines, sorted by child."""
    return "\n".join(f"{v} {p}" for v, p in sorted(tree.idom.items()))
