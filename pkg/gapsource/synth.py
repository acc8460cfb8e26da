"""Seeded generators of verified YES/NO biclique gap instances."""
import logging

import numpy as np

from graphs.graph import BipartiteGraph
from utils.basic_utils import make_rng, n_choose_k
from utils.errors import CapExceededError, GenerationError, InputError, VerificationError

from .instance import DEFAULT_SUBSET_CAP, GapBicliqueInstance, Promise, check_promise

logger = logging.getLogger(__name__)

DEFAULT_NO_RETRIES = 64


def _check_prob(edge_prob):
    if not 0.0 <= edge_prob <= 1.0:
        raise InputError(f"edge_prob must lie in [0, 1], got {edge_prob}")


def _random_edges(rng, a_size, b_size, edge_prob):
    hits = np.argwhere(rng.random((a_size, b_size)) < edge_prob) + 1
    return {(int(a), int(b)) for a, b in hits}


def synth_yes_instance(s, d, left_pad=0, right_pad=0, seed=0, edge_prob=0.5, no_threshold=None,
                       cap=DEFAULT_SUBSET_CAP) -> GapBicliqueInstance:
    """Plant K_{s,d} among s+left_pad by d+right_pad vertices.

    Padding vertices get random edges; edges only add common neighbors,
    so the plant survives verification.
    """
    if s < 1 or d < 1 or left_pad < 0 or right_pad < 0:
        raise InputError(f"need s, d >= 1 and non-negative pads, got s={s}, d={d}, pads=({left_pad}, {right_pad})")
    _check_prob(edge_prob)
    a_size, b_size = s + left_pad, d + right_pad
    total = n_choose_k(a_size, s)
    if total > cap:
        raise CapExceededError(f"C({a_size}, {s}) left subsets", total, cap)

    rng = make_rng(seed, s, d)
    left = tuple(sorted(int(x) + 1 for x in rng.choice(a_size, size=s, replace=False)))
    right = tuple(sorted(int(x) + 1 for x in rng.choice(b_size, size=d, replace=False)))
    edges = {(a, b) for a in left for b in right}
    if left_pad or right_pad:
        edges |= _random_edges(rng, a_size, b_size, edge_prob)

    inst = GapBicliqueInstance(
        H0=BipartiteGraph(a_size, b_size, frozenset(edges)),
        s=s,
        d=d,
        no_threshold=d - 1 if no_threshold is None else no_threshold,
        promise=Promise.YES,
        seed=seed,
        planted=(left, right),
    )
    verdict = check_promise(inst, cap=cap)
    if not verdict.holds:
        raise VerificationError(f"planted K_{{{s},{d}}} lost: best {s}-subset has {verdict.count} common neighbors")
    return inst


def synth_no_instance(s, no_threshold, a_size, b_size, edge_prob, seed=0, d=None,
                      retries=DEFAULT_NO_RETRIES, cap=DEFAULT_SUBSET_CAP) -> GapBicliqueInstance:
    """Random bipartite graph in which every s left vertices share at most
    `no_threshold` neighbors. Retries with seed+1, seed+2, ... on failure."""
    if not 1 <= s <= a_size:
        raise InputError(f"s = {s} must lie in 1..a_size = {a_size}")
    if b_size < 0 or no_threshold < 0:
        raise InputError("b_size and no_threshold must be non-negative")
    _check_prob(edge_prob)
    total = n_choose_k(a_size, s)
    if total > cap:
        raise CapExceededError(f"C({a_size}, {s}) left subsets", total, cap)

    for attempt in range(retries):
        rng = make_rng(seed + attempt, a_size, b_size)
        inst = GapBicliqueInstance(
            H0=BipartiteGraph(a_size, b_size, frozenset(_random_edges(rng, a_size, b_size, edge_prob))),
            s=s,
            d=no_threshold + 1 if d is None else d,
            no_threshold=no_threshold,
            promise=Promise.NO,
            seed=seed + attempt,
        )
        verdict = check_promise(inst, cap=cap)
        if verdict.holds:
            if attempt:
                logger.info(f"NO instance accepted at seed {seed + attempt} after {attempt} rejections")
            return inst
        logger.debug(f"seed {seed + attempt}: {verdict.witness} has {verdict.count} > {no_threshold} common neighbors")
    raise GenerationError(
        f"no verified NO instance within {retries} seeds starting at {seed}; try a lower edge_prob (now {edge_prob})")
