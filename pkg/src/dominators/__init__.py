"""Dominator trees of sampled worlds."""

from .lengauer_tarjan import build_lengauer_tarjan
from .linear import build_lt
from .oracle import brute_force_idom
from .tree import DomTree, FlowGraph, dump_tree, subtree_sizes

__all__ = [
    "DomTree",
    "FlowGraph",
    "brute_force_idom",
    "build_lengauer_tarjan",
    "build_lt",
    "dump_tree",
    "subtree_sizes",
]
