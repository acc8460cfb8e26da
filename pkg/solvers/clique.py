"""k-clique detection with a lexicographically first witness."""
import logging
from itertools import combinations

from graphs.graph import Graph
from utils.basic_utils import n_choose_k
from utils.errors import CapExceededError, InputError

logger = logging.getLogger(__name__)

DEFAULT_SUBSET_CAP = 10 ** 7
PRUNED_K_LIMIT = 8


def _check(G, k, cap, pruned):
    if k < 1:
        raise InputError(f"clique size must be positive, got {k}")
    total = n_choose_k(G.n, k)
    if total > cap and not (pruned and k <= PRUNED_K_LIMIT):
        raise CapExceededError(f"C({G.n}, {k}) candidate sets", total, cap)


def has_k_clique(G: Graph, k: int, cap=DEFAULT_SUBSET_CAP):
    """Lexicographically first k-clique as a sorted tuple, or None.

    Clique means size at least k; any larger clique contains one of size k.
    """
    _check(G, k, cap, pruned=True)
    if k > G.n:
        return None
    open_masks = [G.closed_masks[v] & ~(1 << (v - 1)) for v in range(G.n + 1)]
    prefix = []

    def extend(candidates):
        if len(prefix) == k:
            return True
        if candidates.bit_count() < k - len(prefix):
            return False
        while candidates:
            low = candidates & -candidates
            v = low.bit_length()
            candidates ^= low
            prefix.append(v)
            # later candidates only, so witnesses come out sorted
            if extend(candidates & open_masks[v]):
                return True
            prefix.pop()
            if candidates.bit_count() < k - len(prefix):
                return False
        return False

    if extend(G.full_mask):
        return tuple(prefix)
    return None


def has_k_independent_set(G: Graph, k: int, cap=DEFAULT_SUBSET_CAP):
    """Brute force over k-subsets in lexicographic order."""
    _check(G, k, cap, pruned=False)
    if k > G.n:
        return None
    for combo in combinations(G.vertices, k):
        if not any(G.has_edge(u, v) for u, v in combinations(combo, 2)):
            return combo
    return None
