import logging
from dataclasses import dataclass

from graphs.graph import Graph
from utils.errors import InputError

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class PreprocessResult:
    G_out: Graph
    k_in: int
    k_out: int
    added: tuple

    def to_dict(self):
        return {"n_in": self.G_out.n - len(self.added), "n_out": self.G_out.n, "k_in": self.k_in,
                "k_out": self.k_out, "added": list(self.added)}


def next_admissible_k(k):
    """Least k' >= k with 6 | k' + 1."""
    return k + (-(k + 1)) % 6


def preprocess(G: Graph, k: int) -> PreprocessResult:
    """Pad the clique parameter to k' = 5 (mod 6) by adding k' - k universal vertices.

    The new vertices are n+1.. and form a clique joined to every original vertex,
    so G has a k-clique iff the output has a k'-clique.
    """
    if k < 1:
        raise InputError(f"clique size must be positive, got {k}")
    k_out = next_admissible_k(k)
    added = tuple(range(G.n + 1, G.n + 1 + k_out - k))
    edges = set(G.edges)
    for w in added:
        edges.update((u, w) for u in range(1, w))
    if added:
        logger.info(f"k = {k} -> {k_out}: added universal vertices {added[0]}..{added[-1]}")
    return PreprocessResult(Graph(G.n + len(added), frozenset(edges)), k, k_out, added)
