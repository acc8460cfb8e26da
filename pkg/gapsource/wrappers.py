"""Left-side duplication and color-coded blow-up of gap instances.

Colored vertex ids are flattened as ((x - 1) * |Λ_A| + h1) * |Λ_B| + h2 + 1
for x in the original part and 0-based family indices h1, h2.
"""
import logging
from dataclasses import replace

import numpy as np

from colorcoding.family import DEFAULT_ENTRY_CAP, DEFAULT_SUBSET_CAP, HashFamily, build_family, injective_rows
from graphs.graph import BipartiteGraph, ColoredBipartiteGraph
from utils.errors import CapExceededError, InputError

from .instance import GapBicliqueInstance

logger = logging.getLogger(__name__)

DEFAULT_VERTEX_CAP = 10 ** 6


def duplicate_side(inst: GapBicliqueInstance, delta: int) -> GapBicliqueInstance:
    """Replace every left vertex u by copies (u, 1..delta), id (u - 1) * delta + i."""
    if delta < 1:
        raise InputError(f"duplication factor must be positive, got {delta}")
    H = inst.H0
    edges = frozenset(((u - 1) * delta + i, v) for u, v in H.edges for i in range(1, delta + 1))
    planted = inst.planted
    if planted is not None:
        left = tuple((u - 1) * delta + i for u in planted[0] for i in range(1, delta + 1))
        planted = (left, planted[1])
    return replace(
        inst,
        H0=BipartiteGraph(H.a_size * delta, H.b_size, edges),
        s=inst.s * delta,
        no_subset_size=delta * (inst.no_subset_size - 1) + 1,
        dup_factor=inst.dup_factor * delta,
        planted=planted,
    )


def block_id(x, h1, h2, la, lb):
    return ((x - 1) * la + h1) * lb + h2 + 1


def unblock_id(vid, la, lb):
    """Inverse of `block_id`: (x, h1, h2)."""
    q, h2 = divmod(vid - 1, lb)
    x0, h1 = divmod(q, la)
    return x0 + 1, h1, h2


def attach_colorings(inst: GapBicliqueInstance, a_colors: int, b_colors: int, family_a: HashFamily = None,
                     family_b: HashFamily = None, vertex_cap=DEFAULT_VERTEX_CAP, subset_cap=DEFAULT_SUBSET_CAP,
                     entry_cap=DEFAULT_ENTRY_CAP) -> ColoredBipartiteGraph:
    """One copy of H0 per pair (h1, h2) of Λ_A x Λ_B, colored by α = h1(u), β = h2(v)."""
    H = inst.H0
    if not 1 <= a_colors <= H.a_size:
        raise InputError(f"a_colors = {a_colors} must lie in 1..|A| = {H.a_size}")
    if not 1 <= b_colors <= H.b_size:
        raise InputError(f"b_colors = {b_colors} must lie in 1..|B| = {H.b_size}")
    family_a = build_family(H.a_size, a_colors, subset_cap, entry_cap) if family_a is None else family_a
    family_b = build_family(H.b_size, b_colors, subset_cap, entry_cap) if family_b is None else family_b
    if (family_a.n, family_a.k) != (H.a_size, a_colors) or (family_b.n, family_b.k) != (H.b_size, b_colors):
        raise InputError("explicit families do not match the part sizes and color counts")
    la, lb = len(family_a), len(family_b)
    a_size, b_size = H.a_size * la * lb, H.b_size * la * lb
    if a_size + b_size > vertex_cap:
        raise CapExceededError("colored vertices", a_size + b_size, vertex_cap)

    alpha = [0] * a_size
    for u in range(1, H.a_size + 1):
        for h1 in range(la):
            color = family_a.color(h1, u)
            for h2 in range(lb):
                alpha[block_id(u, h1, h2, la, lb) - 1] = color
    beta = [0] * b_size
    for v in range(1, H.b_size + 1):
        for h2 in range(lb):
            color = family_b.color(h2, v)
            for h1 in range(la):
                beta[block_id(v, h1, h2, la, lb) - 1] = color
    edges = frozenset(
        (block_id(u, h1, h2, la, lb), block_id(v, h1, h2, la, lb))
        for u, v in H.edges for h1 in range(la) for h2 in range(lb))
    logger.info(f"colored graph: |Λ_A| = {la}, |Λ_B| = {lb}, {a_size} + {b_size} vertices, {len(edges)} edges")
    return ColoredBipartiteGraph(a_size, b_size, edges, tuple(alpha), tuple(beta), a_colors, b_colors)


def lift_planted_biclique(inst: GapBicliqueInstance, colored: ColoredBipartiteGraph, family_a: HashFamily = None,
                          family_b: HashFamily = None):
    """Map the planted biclique into the first block where it is rainbow on both sides.

    Returns (left, right) ids of `colored`, or None when no block works.
    """
    if inst.planted is None:
        raise InputError("instance carries no planted biclique")
    left, right = inst.planted
    family_a = build_family(inst.a_size, colored.a_colors) if family_a is None else family_a
    family_b = build_family(inst.b_size, colored.b_colors) if family_b is None else family_b
    la, lb = len(family_a), len(family_b)
    good_a = np.flatnonzero(injective_rows(family_a.functions[:, np.asarray(left) - 1]))
    good_b = np.flatnonzero(injective_rows(family_b.functions[:, np.asarray(right) - 1]))
    if len(good_a) == 0 or len(good_b) == 0:
        return None
    h1, h2 = int(good_a[0]), int(good_b[0])
    return (tuple(block_id(u, h1, h2, la, lb) for u in left),
            tuple(block_id(v, h1, h2, la, lb) for v in right))


def _rainbow_prefix(vertices, colors, size):
    """Lexicographically least `size`-subset of sorted `vertices` with distinct colors."""
    used, out = set(), []
    for v in vertices:
        if colors[v - 1] not in used:
            used.add(colors[v - 1])
            out.append(v)
            if len(out) == size:
                return tuple(out)
    return None


def _distinct_colors(mask, beta):
    seen = set()
    v = 1
    while mask:
        if mask & 1:
            seen.add(beta[v - 1])
        mask >>= 1
        v += 1
    return len(seen)


def find_colorful_biclique(colored: ColoredBipartiteGraph, s: int, d: int):
    """Least s left vertices with distinct α sharing d neighbors of distinct β, or None."""
    if s < 1 or d < 1:
        raise InputError("s and d must be positive")
    masks = colored.left_masks
    prefix, used = [], set()

    def extend(mask, start):
        if _distinct_colors(mask, colored.beta) < d:
            return None
        if len(prefix) == s:
            common = [v for v in range(1, colored.b_size + 1) if mask >> (v - 1) & 1]
            return tuple(prefix), _rainbow_prefix(common, colored.beta, d)
        for u in range(start, colored.a_size + 1):
            color = colored.alpha[u - 1]
            if color in used:
                continue
            prefix.append(u)
            used.add(color)
            found = extend(mask & masks[u], u + 1)
            prefix.pop()
            used.discard(color)
            if found is not None:
                return found
        return None

    return extend((1 << colored.b_size) - 1, 1)
