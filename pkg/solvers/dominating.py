"""Minimum dominating set: exhaustive enumeration, branch and bound, greedy.

Vertex sets are bitmasks (bit v-1 is vertex v) over `Graph.closed_masks`.
Exact modes return the lexicographically least minimum dominating set.
"""
import logging
import time
from dataclasses import dataclass
from itertools import combinations

from graphs.graph import DominatingSetResult, Graph, vertices_of
from utils.errors import InputError, InvariantViolation

logger = logging.getLogger(__name__)

MODES = ("exact_bb", "exact_enum", "greedy")
MAX_ENUM_VERTICES = 64


@dataclass(frozen=True)
class SolverBudget:
    max_nodes: int = 5_000_000
    time_cap: float = 120.0
    mode: str = "exact_bb"

    def __post_init__(self):
        if self.mode not in MODES:
            raise InputError(f"unknown solver mode {self.mode!r}, expected one of {MODES}")
        if self.max_nodes <= 0 or self.time_cap <= 0:
            raise InputError("solver caps must be positive")


class _BudgetExhausted(Exception):
    pass


class _Meter(object):
    def __init__(self, budget):
        self.budget = budget
        self.nodes = 0
        self.proven_lower = 0
        self.deadline = time.monotonic() + budget.time_cap

    def tick(self):
        self.nodes += 1
        if self.nodes > self.budget.max_nodes:
            raise _BudgetExhausted(f"node cap {self.budget.max_nodes}")
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise _BudgetExhausted(f"time cap {self.budget.time_cap}s")


def _bits(mask):
    while mask:
        low = mask & -mask
        yield low.bit_length()
        mask ^= low


def _packing(closed, undominated, allowed):
    """Undominated vertices whose allowed dominators are pairwise disjoint each
    need their own dominator. None when some vertex has no allowed dominator."""
    doms = []
    for x in _bits(undominated):
        dm = closed[x] & allowed
        if not dm:
            return None
        doms.append((dm.bit_count(), x, dm))
    doms.sort()
    used = 0
    count = 0
    for _, _, dm in doms:
        if not dm & used:
            used |= dm
            count += 1
    return count


def packing_lower_bound(G: Graph) -> int:
    """Size of a set of vertices with pairwise disjoint closed neighborhoods."""
    return _packing(G.closed_masks, G.full_mask, G.full_mask) or 0


def greedy_dominating_set(G: Graph) -> DominatingSetResult:
    """Repeatedly take the vertex covering most undominated vertices, ties to the smallest id."""
    closed = G.closed_masks
    covered = 0
    chosen = []
    while covered != G.full_mask:
        best_v, best_gain = None, 0
        for v in G.vertices:
            gain = (closed[v] & ~covered).bit_count()
            if gain > best_gain:
                best_v, best_gain = v, gain
        chosen.append(best_v)
        covered |= closed[best_v]
    lower = packing_lower_bound(G)
    return DominatingSetResult(frozenset(chosen), lower, optimal=lower == len(chosen))


def _enumerate(G, meter):
    closed = G.closed_masks
    for size in range(1, G.n + 1):
        for combo in combinations(G.vertices, size):
            meter.tick()
            covered = 0
            for v in combo:
                covered |= closed[v]
            if covered == G.full_mask:
                return combo
        meter.proven_lower = size + 1
    raise InvariantViolation("the full vertex set always dominates")


def _branch_and_bound(G, meter, best):
    """Improve `best["set"]` in place until optimal or out of budget."""
    closed = G.closed_masks
    full = G.full_mask

    def search(dominated, chosen, allowed):
        meter.tick()
        if dominated == full:
            if len(chosen) < len(best["set"]):
                best["set"] = tuple(sorted(chosen))
                logger.debug(f"improved dominating set to size {len(chosen)} after {meter.nodes} nodes")
            return
        if len(chosen) + 1 >= len(best["set"]):
            return
        undominated = full & ~dominated
        lb = _packing(closed, undominated, allowed)
        if lb is None or len(chosen) + lb >= len(best["set"]):
            return
        pivot = min(_bits(undominated), key=lambda x: ((closed[x] & allowed).bit_count(), x))
        branch_allowed = allowed
        for u in _bits(closed[pivot] & allowed):
            branch_allowed &= ~(1 << (u - 1))
            chosen.append(u)
            search(dominated | closed[u], chosen, branch_allowed)
            chosen.pop()

    search(0, [], full)


def _lex_least(G, meter, size):
    """First dominating set of `size` vertices in lexicographic order."""
    closed = G.closed_masks
    full = G.full_mask
    chosen = []

    def search(dominated, remaining, start):
        meter.tick()
        if dominated == full:
            return True
        if remaining == 0:
            return False
        allowed = full & ~((1 << (start - 1)) - 1)
        undominated = full & ~dominated
        lb = _packing(closed, undominated, allowed)
        if lb is None or lb > remaining:
            return False
        # the smallest chosen vertex from here on must still reach every undominated vertex
        limit = min(closed[x].bit_length() for x in _bits(undominated))
        for v in range(start, limit + 1):
            chosen.append(v)
            if search(dominated | closed[v], remaining - 1, v + 1):
                return True
            chosen.pop()
        return False

    if not search(0, size, 1):
        return None
    return tuple(chosen)


def exact_min_dominating_set(G: Graph, budget: SolverBudget = None) -> DominatingSetResult:
    budget = budget or SolverBudget()
    if budget.mode == "greedy":
        return greedy_dominating_set(G)
    if G.n == 0:
        return DominatingSetResult(frozenset(), 0, optimal=True)
    meter = _Meter(budget)

    if budget.mode == "exact_enum":
        if G.n > MAX_ENUM_VERTICES:
            raise InputError(f"exact_enum supports at most {MAX_ENUM_VERTICES} vertices, got {G.n}")
        try:
            best = _enumerate(G, meter)
        except _BudgetExhausted as e:
            fallback = greedy_dominating_set(G)
            logger.warning(f"exact_enum stopped at {e}; returning greedy upper bound {fallback.size}")
            lower = max(meter.proven_lower, fallback.gamma_lower_bound)
            return DominatingSetResult(fallback.vertices, lower, optimal=lower == fallback.size)
        return DominatingSetResult(frozenset(best), len(best), optimal=True)

    greedy = greedy_dominating_set(G)
    root_lower = greedy.gamma_lower_bound
    best = {"set": tuple(sorted(greedy.vertices))}
    try:
        if root_lower < len(best["set"]):
            _branch_and_bound(G, meter, best)
    except _BudgetExhausted as e:
        incumbent = best["set"]
        logger.warning(f"exact_bb stopped at {e}; bounds {root_lower} <= gamma <= {len(incumbent)}")
        return DominatingSetResult(frozenset(incumbent), root_lower, optimal=root_lower == len(incumbent))

    incumbent = best["set"]
    gamma = len(incumbent)
    try:
        least = _lex_least(G, meter, gamma)
    except _BudgetExhausted as e:
        logger.warning(f"lexicographic pass stopped at {e}; optimum of size {gamma} may not be the least")
        least = incumbent
    if least is None:
        raise InvariantViolation(f"no dominating set of proven optimal size {gamma}")
    logger.debug(f"gamma = {gamma} after {meter.nodes} search nodes")
    return DominatingSetResult(frozenset(least), gamma, optimal=True)


def minimal_dominating_sets(G: Graph):
    """All inclusion-minimal dominating sets, smallest first (brute force, small n)."""
    closed = G.closed_masks
    found = []
    for size in range(0, G.n + 1):
        for combo in combinations(G.vertices, size):
            mask = 0
            for v in combo:
                mask |= 1 << (v - 1)
            covered = 0
            for v in combo:
                covered |= closed[v]
            if covered == G.full_mask and not any(m & mask == m for m in found):
                found.append(mask)
    return [vertices_of(m) for m in found]
