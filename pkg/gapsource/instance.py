"""Biclique gap instances and their brute-force promise oracle."""
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional

import gmpy2

from graphs.graph import BipartiteGraph
from utils.basic_utils import n_choose_k
from utils.distributed import get_world_size, map_ordered
from utils.errors import CapExceededError, InputError

logger = logging.getLogger(__name__)

DEFAULT_SUBSET_CAP = 10 ** 7


class Promise(str, Enum):
    YES = "YES"
    NO = "NO"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class GapBicliqueInstance:
    """Bipartite H0 with the promise that either some `s` left vertices share
    at least `d` right neighbors (YES), or every `no_subset_size` left vertices
    share at most `no_threshold` (NO).

    `no_subset_size` is `s` for fresh instances and grows to Δ(s-1)+1 under
    left-side duplication. `planted` holds a known (left, right) biclique.
    """

    H0: BipartiteGraph
    s: int
    d: int
    no_threshold: int
    promise: Promise = Promise.UNKNOWN
    seed: Optional[int] = None
    no_subset_size: Optional[int] = None
    dup_factor: int = 1
    planted: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "promise", Promise(self.promise))
        if self.s < 1 or self.d < 1 or self.no_threshold < 0:
            raise InputError(f"need s >= 1, d >= 1, no_threshold >= 0; got s={self.s}, d={self.d}, "
                             f"no_threshold={self.no_threshold}")
        if self.no_subset_size is None:
            object.__setattr__(self, "no_subset_size", self.s)

    @property
    def a_size(self):
        return self.H0.a_size

    @property
    def b_size(self):
        return self.H0.b_size

    def to_dict(self):
        data = {
            "a_size": self.a_size,
            "b_size": self.b_size,
            "edges": [list(e) for e in sorted(self.H0.edges)],
            "s": self.s,
            "d": self.d,
            "no_threshold": self.no_threshold,
            "promise": self.promise.value,
            "seed": self.seed,
            "no_subset_size": self.no_subset_size,
            "dup_factor": self.dup_factor,
        }
        if self.planted is not None:
            data["planted"] = [list(self.planted[0]), list(self.planted[1])]
        return data

    @classmethod
    def from_dict(cls, data):
        try:
            H0 = BipartiteGraph.from_edges(int(data["a_size"]), int(data["b_size"]), data["edges"])
            planted = data.get("planted")
            if planted is not None:
                planted = (tuple(planted[0]), tuple(planted[1]))
            return cls(
                H0=H0,
                s=int(data["s"]),
                d=int(data["d"]),
                no_threshold=int(data["no_threshold"]),
                promise=data.get("promise", "UNKNOWN"),
                seed=data.get("seed"),
                no_subset_size=data.get("no_subset_size"),
                dup_factor=int(data.get("dup_factor", 1)),
                planted=planted,
            )
        except KeyError as e:
            raise InputError(f"gap instance JSON is missing key {e}") from None
        except TypeError as e:
            raise InputError(f"bad gap instance JSON: {e}") from None
        except ValueError as e:
            if isinstance(e, InputError):
                raise
            raise InputError(f"bad gap instance JSON: {e}") from None


@dataclass(frozen=True)
class PromiseVerdict:
    promise: Promise
    holds: Optional[bool]
    count: int
    witness: tuple
    subset_size: int

    def to_dict(self):
        return {
            "promise": self.promise.value,
            "holds": self.holds,
            "max_common_neighbors": self.count,
            "witness": list(self.witness),
            "subset_size": self.subset_size,
        }


def _best_starting_at(task):
    masks, a_size, s, first = task
    best_count, best_witness = -1, None
    prefix = [first]

    def extend(mask, start):
        nonlocal best_count, best_witness
        if mask.bit_count() <= best_count:
            return
        if len(prefix) == s:
            best_count, best_witness = mask.bit_count(), tuple(prefix)
            return
        for u in range(start, a_size - (s - len(prefix)) + 2):
            prefix.append(u)
            extend(mask & masks[u], u + 1)
            prefix.pop()

    extend(masks[first], first + 1)
    return best_count, best_witness


def max_common_neighbors(H: BipartiteGraph, s: int, cap=DEFAULT_SUBSET_CAP, jobs=None):
    """Max over s-subsets S of A of |common neighbors of S|, with the
    lexicographically least attaining S."""
    if not 1 <= s <= H.a_size:
        raise InputError(f"subset size {s} outside 1..{H.a_size}")
    total = n_choose_k(H.a_size, s)
    if total > cap:
        raise CapExceededError(f"C({H.a_size}, {s}) left subsets", total, cap)
    jobs = get_world_size() if jobs is None else jobs
    tasks = [(H.left_masks, H.a_size, s, first) for first in range(1, H.a_size - s + 2)]
    best_count, best_witness = -1, None
    for count, witness in map_ordered(_best_starting_at, tasks, jobs=jobs):
        if witness is not None and count > best_count:
            best_count, best_witness = count, witness
    return best_count, best_witness


def check_promise(inst: GapBicliqueInstance, cap=DEFAULT_SUBSET_CAP) -> PromiseVerdict:
    """Brute-force verdict on the instance's promise; never raises on failure."""
    if inst.promise is Promise.NO:
        size = inst.no_subset_size
        count, witness = max_common_neighbors(inst.H0, size, cap=cap)
        holds = count <= inst.no_threshold
    else:
        size = inst.s
        count, witness = max_common_neighbors(inst.H0, size, cap=cap)
        holds = count >= inst.d if inst.promise is Promise.YES else None
    if holds is False:
        logger.info(f"{inst.promise.value} promise fails: {witness} has {count} common neighbors")
    return PromiseVerdict(inst.promise, holds, count, witness, size)


def _ceil_root_of_power(n, num, den):
    """ceil(n^(num/den)) exactly."""
    root, exact = gmpy2.iroot(gmpy2.mpz(n) ** num, den)
    return int(root) if exact else int(root) + 1


def source_preconditions(n, k, d):
    """Size preconditions of the clique-to-biclique source reduction, as flags."""
    if n < 1 or k < 1:
        raise InputError(f"need n >= 1 and k >= 1, got n={n}, k={k}")
    size_root = _ceil_root_of_power(n, 6, k + 6)
    d_root = _ceil_root_of_power(n, 6, k + 1)
    return {
        "ceil_n_pow_6_over_k_plus_6": size_root,
        "k_plus_6_factorial": math.factorial(k + 6),
        "size_ok": size_root > math.factorial(k + 6),
        "ceil_n_pow_6_over_k_plus_1": d_root,
        "d_ok": d_root >= d,
    }
