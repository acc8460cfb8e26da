"""Explicit hash families [n] -> [k] such that every k-subset is rainbow
under some member.

Construction: for n > k^2, first-level maps x -> ((a*x) mod p) mod k^2
(p the least prime >= n) composed with every member of a (k^2, k) family,
then seeded random functions forced injective on the first uncovered
subset until every k-subset is covered. Members that cover nothing new
are skipped, so the result is verified by construction whenever C(n, k)
fits the subset cap.
"""
import logging
import math
from dataclasses import dataclass
from itertools import combinations
from typing import Optional

import gmpy2
import numpy as np
from tqdm import tqdm

from utils.basic_utils import make_rng, n_choose_k
from utils.distributed import get_world_size, map_ordered
from utils.errors import CapExceededError, InputError

logger = logging.getLogger(__name__)

MAX_N = 2 ** 20
MAX_K = 12
SIZE_CONSTANT = 4
DEFAULT_SUBSET_CAP = 10 ** 7
DEFAULT_ENTRY_CAP = 5 * 10 ** 7


@dataclass(frozen=True, eq=False)
class HashFamily:
    """`functions[m, x - 1]` is the color (1..k) member m gives to x."""

    n: int
    k: int
    functions: np.ndarray
    verified: bool = False
    size_bound: int = 0

    def __post_init__(self):
        functions = np.array(self.functions, dtype=np.int32, copy=True)
        if functions.ndim != 2 or functions.shape[1] != self.n:
            raise InputError(f"functions must have shape (m, {self.n}), got {functions.shape}")
        if functions.size and (functions.min() < 1 or functions.max() > self.k):
            raise InputError(f"function values must lie in 1..{self.k}")
        functions.setflags(write=False)
        object.__setattr__(self, "functions", functions)
        if not self.size_bound:
            object.__setattr__(self, "size_bound", family_size_bound(self.n, self.k))

    def __len__(self):
        return self.functions.shape[0]

    def __getitem__(self, m):
        return self.functions[m]

    def color(self, m, x):
        return int(self.functions[m, x - 1])

    def to_dict(self):
        return {"n": self.n, "k": self.k, "functions": self.functions.tolist()}

    @classmethod
    def from_dict(cls, data):
        try:
            return cls(int(data["n"]), int(data["k"]), np.asarray(data["functions"]))
        except KeyError as e:
            raise InputError(f"hash family JSON is missing key {e}") from None


@dataclass(frozen=True)
class FamilyVerdict:
    ok: bool
    counterexample: Optional[tuple] = None
    checked: int = 0
    exhaustive: bool = True

    def to_dict(self):
        return {
            "ok": self.ok,
            "counterexample": list(self.counterexample) if self.counterexample else None,
            "checked": self.checked,
            "exhaustive": self.exhaustive,
        }


def family_size_bound(n, k):
    """C * e^k * k^(log2 k) * ceil(log2 n)^2, rounded up."""
    log_n = max(1, math.ceil(math.log2(n))) if n > 1 else 1
    k_term = k ** math.log2(k) if k > 1 else 1.0
    return math.ceil(SIZE_CONSTANT * math.exp(k) * k_term * log_n ** 2)


def injective_rows(values):
    """True per row of `values` (shape (..., k)) whose entries are pairwise distinct."""
    if values.shape[-1] <= 1:
        return np.ones(values.shape[:-1], dtype=bool)
    return np.all(np.diff(np.sort(values, axis=-1), axis=-1) != 0, axis=-1)


def all_subsets(n, k):
    """All k-subsets of 0..n-1 in lexicographic order, shape (C(n, k), k)."""
    total = n_choose_k(n, k)
    flat = np.fromiter((x for c in combinations(range(n), k) for x in c), dtype=np.int32, count=total * k)
    return flat.reshape(total, k)


def _check_domain(n, k):
    if n < 1 or k < 1:
        raise InputError(f"n and k must be positive, got n={n}, k={k}")
    if k > n:
        raise InputError(f"k = {k} exceeds n = {n}")
    if n > MAX_N:
        raise CapExceededError("n", n, MAX_N)
    if k > MAX_K:
        raise CapExceededError("k", k, MAX_K)


def _first_level_candidates(n, k, splitter, count):
    p = int(gmpy2.next_prime(n - 1))
    xs = np.arange(1, n + 1, dtype=np.int64)
    for a in range(1, min(p - 1, count) + 1):
        h = (a * xs) % p % (k * k)
        for g in splitter.functions:
            yield g[h]


class _Cover(object):
    """Greedy accept-if-useful covering over all k-subsets."""

    def __init__(self, n, k, entry_cap):
        self.n = n
        self.k = k
        self.entry_cap = entry_cap
        self.subsets = all_subsets(n, k)
        self.uncovered = np.arange(len(self.subsets))
        self.functions = []

    @property
    def done(self):
        return len(self.uncovered) == 0

    def offer(self, f):
        hit = injective_rows(f[self.subsets[self.uncovered]])
        if not hit.any():
            return False
        if (len(self.functions) + 1) * self.n > self.entry_cap:
            raise CapExceededError("family entries", (len(self.functions) + 1) * self.n, self.entry_cap)
        self.functions.append(np.asarray(f, dtype=np.int32))
        self.uncovered = self.uncovered[~hit]
        return True

    def repair(self, rng):
        while not self.done:
            target = self.subsets[self.uncovered[0]]
            f = rng.integers(1, self.k + 1, size=self.n)
            f[target] = rng.permutation(self.k) + 1
            self.offer(f)


def build_family(n, k, subset_cap=DEFAULT_SUBSET_CAP, entry_cap=DEFAULT_ENTRY_CAP) -> HashFamily:
    _check_domain(n, k)
    bound = family_size_bound(n, k)
    if k == 1:
        return HashFamily(n, k, np.ones((1, n), dtype=np.int32), verified=True, size_bound=bound)
    if n == k:
        return HashFamily(n, k, np.arange(1, n + 1, dtype=np.int32)[None, :], verified=True, size_bound=bound)

    rng = make_rng(n, k)
    total = n_choose_k(n, k)
    first_level = 4 * max(1, math.ceil(math.log2(n))) ** 2
    splitter = build_family(k * k, k, subset_cap, entry_cap) if n > k * k else None

    if total > subset_cap:
        logger.warning(f"C({n}, {k}) = {total} exceeds subset cap {subset_cap}; family is NOT verified")
        if splitter is not None:
            functions = list(_first_level_candidates(n, k, splitter, first_level))
        else:
            # expected number of uncovered subsets below one
            count = math.ceil(math.log(total) * k ** k / math.factorial(k)) + 1
            functions = [rng.integers(1, k + 1, size=n) for _ in range(count)]
        if len(functions) * n > entry_cap:
            raise CapExceededError("family entries", len(functions) * n, entry_cap)
        return HashFamily(n, k, np.stack(functions), verified=False, size_bound=bound)

    cover = _Cover(n, k, entry_cap)
    if splitter is not None:
        for f in _first_level_candidates(n, k, splitter, first_level):
            cover.offer(f)
            if cover.done:
                break
    cover.repair(rng)
    family = HashFamily(n, k, np.stack(cover.functions), verified=True, size_bound=bound)
    if len(family) > bound:
        logger.warning(f"family for (n={n}, k={k}) has {len(family)} members, above the size bound {bound}")
    logger.debug(f"built family (n={n}, k={k}) with {len(family)} members")
    return family


def _first_bad_subset(task):
    functions, n, k, first = task
    rest = range(first + 1, n)
    chunk = max(1, (1 << 22) // max(1, functions.shape[0] * k))
    checked = 0
    batch = []

    def scan(batch):
        arr = np.asarray(batch, dtype=np.int32)
        covered = injective_rows(functions[:, arr]).any(axis=0)
        if covered.all():
            return None
        return tuple(int(x) + 1 for x in arr[int(np.argmin(covered))])

    for tail in combinations(rest, k - 1):
        batch.append((first,) + tail)
        if len(batch) == chunk:
            bad = scan(batch)
            checked += len(batch)
            if bad is not None:
                return bad, checked
            batch = []
    if batch:
        bad = scan(batch)
        checked += len(batch)
        if bad is not None:
            return bad, checked
    return None, checked


def verify_family(F: HashFamily, samples=None, seed=0, subset_cap=DEFAULT_SUBSET_CAP, jobs=None) -> FamilyVerdict:
    """Check that every k-subset is rainbow under some member.

    Exhaustive in lexicographic order, returning the least uncovered subset.
    With `samples`, checks that many seeded random k-subsets instead.
    """
    n, k = F.n, F.k
    if len(F) == 0:
        return FamilyVerdict(False, tuple(range(1, k + 1)), 0, samples is None)
    if samples is not None:
        rng = make_rng(seed, n, k)
        for i in range(int(samples)):
            X = np.sort(rng.choice(n, size=k, replace=False))
            if not injective_rows(F.functions[:, X]).any():
                return FamilyVerdict(False, tuple(int(x) + 1 for x in X), i + 1, False)
        return FamilyVerdict(True, None, int(samples), False)

    total = n_choose_k(n, k)
    if total > subset_cap:
        raise InputError(
            f"C({n}, {k}) = {total} subsets exceeds cap {subset_cap}; use sampling mode (samples=N)")
    tasks = [(F.functions, n, k, first) for first in range(n - k + 1)]
    jobs = get_world_size() if jobs is None else jobs
    if jobs <= 1:
        checked = 0
        for task in tqdm(tasks, desc=f"verify C({n}, {k})", disable=total < 10 ** 5):
            bad, count = _first_bad_subset(task)
            checked += count
            if bad is not None:
                return FamilyVerdict(False, bad, checked, True)
        return FamilyVerdict(True, None, checked, True)
    results = map_ordered(_first_bad_subset, tasks, jobs=jobs)
    checked = 0
    for bad, count in results:
        checked += count
        if bad is not None:
            return FamilyVerdict(False, bad, checked, True)
    return FamilyVerdict(True, None, checked, True)
