"""Core graph types.

Vertices of a `Graph` are the integers 1..n. Bipartite graphs number each
part separately, 1..a_size on the left and 1..b_size on the right.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable

from utils.errors import InputError

logger = logging.getLogger(__name__)


def _norm_edge(u, v):
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph. Immutable; adjacency is derived lazily."""

    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InputError(f"vertex count must be non-negative, got {self.n}")
        for u, v in self.edges:
            if u == v:
                raise InputError(f"loop edge at vertex {u}")
            if not (1 <= u < v <= self.n):
                raise InputError(f"edge ({u}, {v}) not normalised within 1..{self.n}")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable) -> "Graph":
        """Normalise, deduplicate and validate an iterable of vertex pairs."""
        normed = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise InputError(f"loop edge at vertex {u}")
            if not (1 <= u <= n and 1 <= v <= n):
                raise InputError(f"edge ({u}, {v}) has an endpoint outside 1..{n}")
            normed.add(_norm_edge(u, v))
        return cls(n, frozenset(normed))

    @property
    def vertices(self):
        return range(1, self.n + 1)

    @property
    def m(self):
        return len(self.edges)

    @cached_property
    def _adjacency(self):
        adj = [set() for _ in range(self.n + 1)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(a) for a in adj)

    @cached_property
    def closed_masks(self):
        """Bitmask of N[v] per vertex; bit v-1 stands for vertex v. Index 0 unused."""
        masks = [0] * (self.n + 1)
        for v in self.vertices:
            mask = 1 << (v - 1)
            for u in self._adjacency[v]:
                mask |= 1 << (u - 1)
            masks[v] = mask
        return tuple(masks)

    @cached_property
    def full_mask(self):
        return (1 << self.n) - 1

    def neighbors(self, v) -> frozenset:
        return self._adjacency[v]

    def closed_neighborhood(self, v) -> frozenset:
        return self._adjacency[v] | {v}

    def degree(self, v) -> int:
        return len(self._adjacency[v])

    def has_edge(self, u, v) -> bool:
        return v in self._adjacency[u]

    def sorted_edges(self):
        return sorted(self.edges)


def complement(G: Graph) -> Graph:
    edges = [(u, v) for u in G.vertices for v in range(u + 1, G.n + 1) if not G.has_edge(u, v)]
    return Graph(G.n, frozenset(edges))


def vertices_of(mask: int) -> list:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def is_dominating(G: Graph, D: Iterable) -> bool:
    """True iff every vertex is in D or adjacent to a member of D."""
    covered = 0
    for v in D:
        if not (1 <= v <= G.n):
            raise InputError(f"vertex {v} is outside 1..{G.n}")
        covered |= G.closed_masks[v]
    return covered == G.full_mask


@dataclass(frozen=True)
class DominatingSetResult:
    """A dominating set with the bound the producing solver could prove.

    `gamma_lower_bound` equals `size` when `optimal` is set.
    """

    vertices: frozenset
    gamma_lower_bound: int
    optimal: bool = False

    @property
    def size(self):
        return len(self.vertices)

    def to_dict(self):
        return {
            "size": self.size,
            "vertices": sorted(self.vertices),
            "optimal": self.optimal,
            "lower_bound": self.gamma_lower_bound,
        }


@dataclass(frozen=True)
class BipartiteGraph:
    """H = (A ∪ B, E); edges are (a, b) with a in 1..a_size and b in 1..b_size."""

    a_size: int
    b_size: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.a_size < 0 or self.b_size < 0:
            raise InputError("part sizes must be non-negative")
        for a, b in self.edges:
            if not (1 <= a <= self.a_size and 1 <= b <= self.b_size):
                raise InputError(f"edge ({a}, {b}) does not cross the bipartition 1..{self.a_size} x 1..{self.b_size}")

    @classmethod
    def from_edges(cls, a_size, b_size, edges):
        return cls(a_size, b_size, frozenset((int(a), int(b)) for a, b in edges))

    @cached_property
    def left_masks(self):
        """Bitmask over B of N(a) for each left vertex; index 0 unused."""
        masks = [0] * (self.a_size + 1)
        for a, b in self.edges:
            masks[a] |= 1 << (b - 1)
        return tuple(masks)

    @cached_property
    def right_neighbors(self):
        adj = [set() for _ in range(self.b_size + 1)]
        for a, b in self.edges:
            adj[b].add(a)
        return tuple(frozenset(x) for x in adj)

    def has_edge(self, a, b) -> bool:
        return (a, b) in self.edges

    def common_neighbors(self, left) -> list:
        mask = (1 << self.b_size) - 1
        for a in left:
            mask &= self.left_masks[a]
        return vertices_of(mask)


@dataclass(frozen=True)
class ColoredBipartiteGraph(BipartiteGraph):
    """Bipartite graph with colorings alpha: A -> [a_colors], beta: B -> [b_colors].

    alpha[a - 1] is the color of left vertex a (colors are 1-based).
    """

    alpha: tuple = ()
    beta: tuple = ()
    a_colors: int = 1
    b_colors: int = 1

    def __post_init__(self):
        super().__post_init__()
        if self.a_colors < 1 or self.b_colors < 1:
            raise InputError("color counts must be positive")
        if len(self.alpha) != self.a_size or len(self.beta) != self.b_size:
            raise InputError("alpha and beta must be total on their parts")
        if any(not (1 <= x <= self.a_colors) for x in self.alpha):
            raise InputError(f"alpha leaves the range 1..{self.a_colors}")
        if any(not (1 <= x <= self.b_colors) for x in self.beta):
            raise InputError(f"beta leaves the range 1..{self.b_colors}")

    @cached_property
    def beta_classes(self):
        """beta_classes[c] is the sorted list of right vertices of color c; index 0 unused."""
        classes = [[] for _ in range(self.b_colors + 1)]
        for b, color in enumerate(self.beta, start=1):
            classes[color].append(b)
        return tuple(tuple(c) for c in classes)

    def empty_beta_classes(self) -> list:
        return [c for c in range(1, self.b_colors + 1) if not self.beta_classes[c]]
