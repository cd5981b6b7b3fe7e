"""Constant-time lowest common ancestor queries over a PhyloTree.

Euler tour with first occurrences, reduced to range-minimum over tour
depths via doubling tables of (depth, vertex) pairs.  Build is
O(V log V); queries are O(1).
"""
from __future__ import annotations

from .model import PhyloTree


class LcaStructure:
    """Immutable LCA index; vertices are the tree's 1-based numbers."""

    def __init__(self, tree: PhyloTree):
        count = tree.vertex_count
        if count == 0:
            raise ValueError("empty tree")
        first = [0] * (count + 1)
        tour: list[tuple[int, int]] = []
        # Euler tour, iterative: re-visit a vertex after each child subtree.
        stack: list[tuple[int, int, int]] = [(tree.root, 0, 0)]
        while stack:
            vertex, depth, child_idx = stack.pop()
            if child_idx == 0:
                first[vertex] = len(tour)
            tour.append((depth, vertex))
            children = tree.children[vertex]
            if child_idx < len(children):
                stack.append((vertex, depth, child_idx + 1))
                stack.append((children[child_idx], depth + 1, 0))

        levels = [tour]
        span = 1
        while span * 2 <= len(tour):
            prev = levels[-1]
            levels.append(list(map(min, prev[: len(prev) - span], prev[span:])))
            span *= 2
        self._first = first
        self._levels = levels
        self._count = count

    def query(self, u: int, v: int) -> int:
        if not (1 <= u <= self._count and 1 <= v <= self._count):
            raise ValueError(f"vertices must lie in 1..{self._count}")
        lo = self._first[u]
        hi = self._first[v]
        if lo > hi:
            lo, hi = hi, lo
        j = (hi - lo + 1).bit_length() - 1
        level = self._levels[j]
        return min(level[lo], level[hi - (1 << j) + 1])[1]


def build_lca(tree: PhyloTree) -> LcaStructure:
    return LcaStructure(tree)


def lca(structure: LcaStructure, u: int, v: int) -> int:
    """Vertex number of the lowest common ancestor of u and v."""
    return structure.query(u, v)
