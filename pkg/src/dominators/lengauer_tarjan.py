from __future__ import annotations

from typing import Dict, List, Tuple

from src.dominators.tree import DomTree, FlowGraph


def _dfs(graph: FlowGraph, source: int) -> Tuple[List[int], List[int], List[List[int]]]:
    """Preorder numbering in adjacency order, DFS-tree parents and predecessors."""
    vertex = [source]
    number: Dict[int, int] = {source: 0}
    parent = [-1]
    arcs: List[Tuple[int, int]] = []
    stack = [(source, iter(graph.successors(source)))]
    while stack:
        u, successors = stack[-1]
        for v in successors:
            arcs.append((u, v))
            if v not in number:
                number[v] = len(vertex)
                vertex.append(v)
                parent.append(number[u])
                stack.append((v, iter(graph.successors(v))))
                break
        else:
            stack.pop()
    preds: List[List[int]] = [[] for _ in vertex]
    for u, v in arcs:
        preds[number[v]].append(number[u])
    return vertex, parent, preds


def build_lengauer_tarjan(graph: FlowGraph, source: int) -> DomTree:
    """Immediate dominators by Lengauer-Tarjan, simple link/eval variant.

    Works in DFS-number space: semidominators come from path minima over the
    DFS forest (path compression, no balancing), then idoms are resolved
    from the semidominators. Nodes unreachable from ``source`` are left out.
    """
    vertex, parent, preds = _dfs(graph, source)
    count = len(vertex)
    semi = list(range(count))
    label = list(range(count))
    ancestor = [-1] * count
    idom = [0] * count
    bucket: List[List[int]] = [[] for _ in range(count)]

    def evaluate(v: int) -> int:
        if ancestor[v] == -1:
            return v
        if ancestor[ancestor[v]] != -1:
            path = []
            x = v
            while ancestor[ancestor[x]] != -1:
                path.append(x)
                x = ancestor[x]
            for y in reversed(path):
                a = ancestor[y]
                if semi[label[a]] < semi[label[y]]:
                    label[y] = label[a]
                ancestor[y] = ancestor[a]
        return label[v]

    for w in range(count - 1, 0, -1):
        for v in preds[w]:
            u = evaluate(v)
            if semi[u] < semi[w]:
                semi[w] = semi[u]
        bucket[semi[w]].append(w)
        p = parent[w]
        ancestor[w] = p
        for v in bucket[p]:
            u = evaluate(v)
            idom[v] = u if semi[u] < semi[v] else p
        bucket[p] = []

    for w in range(1, count):
        if idom[w] != semi[w]:
            idom[w] = idom[idom[w]]

    return DomTree(
        root=source,
        idom={vertex[w]: vertex[idom[w]] for w in range(1, count)},
        order=tuple(vertex),
    )
