"""Counting bound for coordinate-constrained tuple sets.

If V ⊆ [t]^c carries a map θ: V -> [c] such that, for every coordinate i,
the tuples assigned to i use at most t - Δ distinct values at position i,
then |V| <= t^c - Δ^c.
"""
import logging
from dataclasses import dataclass
from itertools import product
from typing import Optional

from utils.distributed import get_world_size, map_ordered
from utils.errors import InputError, InvariantViolation

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProductBoundVerdict:
    hypothesis_holds: bool
    failing_coordinate: Optional[int]
    size: int
    bound: int
    slack: Optional[int]

    def to_dict(self):
        return {
            "hypothesis_holds": self.hypothesis_holds,
            "failing_coordinate": self.failing_coordinate,
            "size": self.size,
            "bound": self.bound,
            "slack": self.slack,
        }


def _check_params(t, c, delta):
    if t < 1 or c < 1:
        raise InputError(f"t and c must be positive, got t={t}, c={c}")
    if not 1 <= delta < t:
        raise InputError(f"Δ must satisfy 1 <= Δ < t, got Δ={delta}, t={t}")


def product_bound_check(V, theta, t, c, delta) -> ProductBoundVerdict:
    """Test the hypothesis on (V, θ); when it holds, assert the bound and return the slack."""
    _check_params(t, c, delta)
    V = set(tuple(v) for v in V)
    for v in V:
        if len(v) != c or not all(1 <= x <= t for x in v):
            raise InputError(f"tuple {v} is not in [{t}]^{c}")
    missing = [v for v in sorted(V) if v not in theta]
    if missing:
        raise InputError(f"θ is not total on V: no value for {missing[0]}")
    bound = t ** c - delta ** c

    used = [set() for _ in range(c + 1)]
    for v in V:
        i = theta[v]
        if not 1 <= i <= c:
            raise InputError(f"θ({v}) = {i} outside 1..{c}")
        used[i].add(v[i - 1])
    for i in range(1, c + 1):
        if len(used[i]) > t - delta:
            return ProductBoundVerdict(False, i, len(V), bound, None)
    if len(V) > bound:
        raise InvariantViolation(f"|V| = {len(V)} exceeds t^c - Δ^c = {bound} although the hypothesis holds")
    return ProductBoundVerdict(True, None, len(V), bound, bound - len(V))


def tight_witness(t, c, delta):
    """V = tuples with some coordinate above Δ, θ = first such coordinate; |V| = t^c - Δ^c."""
    _check_params(t, c, delta)
    theta = {}
    for v in product(range(1, t + 1), repeat=c):
        for i, x in enumerate(v, start=1):
            if x > delta:
                theta[v] = i
                break
    return sorted(theta), theta


def _exhaust_subset(task):
    mask, t, c, delta, cells = task
    V = [cells[b] for b in range(len(cells)) if mask >> b & 1]
    cases = hyp = 0
    best = -1
    witness = None
    bound = t ** c - delta ** c
    for assignment in product(range(1, c + 1), repeat=len(V)):
        theta = dict(zip(V, assignment))
        verdict = product_bound_check(V, theta, t, c, delta)
        cases += 1
        if verdict.hypothesis_holds:
            hyp += 1
            if verdict.size > best:
                best = verdict.size
            if witness is None and verdict.size == bound:
                witness = (V, theta)
    return cases, hyp, best, witness


def exhaust_product_bound(t, c, delta, jobs=None):
    """Check the bound over every V ⊆ [t]^c and every θ: V -> [c]; (1 + c)^(t^c) cases."""
    _check_params(t, c, delta)
    cells = list(product(range(1, t + 1), repeat=c))
    jobs = get_world_size() if jobs is None else jobs
    tasks = [(mask, t, c, delta, cells) for mask in range(1 << len(cells))]
    cases = hyp = 0
    max_size = -1
    witness = None
    for n_cases, n_hyp, best, found in map_ordered(_exhaust_subset, tasks, jobs=jobs):
        cases += n_cases
        hyp += n_hyp
        max_size = max(max_size, best)
        if witness is None and found is not None:
            witness = found
    bound = t ** c - delta ** c
    logger.info(f"t={t}, c={c}, Δ={delta}: {cases} cases, {hyp} satisfy the hypothesis, max |V| = {max_size} "
                f"<= {bound}")
    return {
        "t": t,
        "c": c,
        "delta": delta,
        "cases": cases,
        "hypothesis_cases": hyp,
        "max_size": max_size,
        "bound": bound,
        "tight": max_size == bound,
        "witness": None if witness is None else {
            "V": [list(v) for v in witness[0]],
            "theta": [witness[1][v] for v in witness[0]],
        },
    }
