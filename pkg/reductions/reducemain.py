"""The product gap graph G_c built from a colored bipartite graph H.

With Δs = a_colors and d = b_colors, vertices in id order are the tuples
v in B^c (lexicographic), C = A x [c] x [t] in (u, l, i) order, and
W = {w_(v,j,i)} for v in B^c, j in [Δs]^c, i in [t], in (v, j, i) order.
V_i is the set of tuples whose coordinatewise β-color is i.

Edges:
    E1  each V_i is a clique
    E2  w_(v,j,i) ~ v' for v' in V_β(v) differing from v in every coordinate
    E3  (u, l, i) ~ w_(v,j,i) when {u, v(l)} is an edge of H and j(l) = α(u)
    E4  (u, l, i) ~ (u', l, i) for distinct u, u'
"""
import logging
from collections import OrderedDict
from dataclasses import dataclass, field
from itertools import combinations, product

from graphs.graph import ColoredBipartiteGraph, DominatingSetResult, is_dominating
from solvers.dominating import packing_lower_bound
from utils.errors import CapExceededError, InputError, InvariantViolation, WitnessError

from .output import EdgeRules, ReductionOutput, VertexTable, check_vertex_cap, make_output
from .reduce32 import check_biclique, check_classes_nonempty

logger = logging.getLogger(__name__)

DEFAULT_VERTEX_CAP = 10 ** 6
DEFAULT_TUPLE_CAP = 10 ** 5
RULES = ("E1", "E2", "E3", "E4")


@dataclass(frozen=True)
class TupleVertexSpace:
    """B^c split into the color classes V_i."""

    c: int
    b_size: int
    beta: tuple
    b_colors: int
    classes: OrderedDict = field(repr=False, default=None)

    def __post_init__(self):
        if self.c < 1:
            raise InputError(f"dimension c must be positive, got {self.c}")
        classes = OrderedDict((i, []) for i in product(range(1, self.b_colors + 1), repeat=self.c))
        for v in self.tuples():
            classes[self.color_of(v)].append(v)
        object.__setattr__(self, "classes", OrderedDict((i, tuple(vs)) for i, vs in classes.items()))

    @classmethod
    def of(cls, H: ColoredBipartiteGraph, c, tuple_cap=DEFAULT_TUPLE_CAP):
        total = H.b_size ** c
        if total > tuple_cap:
            raise CapExceededError(f"|B|^c = {H.b_size}^{c} tuples", total, tuple_cap)
        return cls(c, H.b_size, tuple(H.beta), H.b_colors)

    def tuples(self):
        return product(range(1, self.b_size + 1), repeat=self.c)

    def color_of(self, v):
        return tuple(self.beta[x - 1] for x in v)

    def class_of(self, i):
        return self.classes[tuple(i)]

    @property
    def size(self):
        return sum(len(vs) for vs in self.classes.values())

    def empty_classes(self):
        return [i for i, vs in self.classes.items() if not vs]


def g_c_size(H: ColoredBipartiteGraph, c, t):
    ds = H.a_colors
    return H.b_size ** c + H.a_size * c * t + H.b_size ** c * ds ** c * t


def build_g_c(H: ColoredBipartiteGraph, c: int, t: int, vertex_cap=DEFAULT_VERTEX_CAP,
              tuple_cap=DEFAULT_TUPLE_CAP, params=None) -> ReductionOutput:
    if c < 1 or t < 1:
        raise InputError(f"c and t must be positive, got c={c}, t={t}")
    ds = H.a_colors
    check_vertex_cap(g_c_size(H, c, t), vertex_cap)
    check_classes_nonempty(H)
    space = TupleVertexSpace.of(H, c, tuple_cap)

    table = VertexTable()
    tuples = list(space.tuples())
    for v in tuples:
        table.add("V", (v,))
    for u in range(1, H.a_size + 1):
        for ell in range(1, c + 1):
            for i in range(1, t + 1):
                table.add("C", (u, ell, i))
    colorings = list(product(range(1, ds + 1), repeat=c))
    for v in tuples:
        for j in colorings:
            for i in range(1, t + 1):
                table.add("W", (v, j, i))

    rules = EdgeRules(RULES)
    for members in space.classes.values():
        for v, v2 in combinations(members, 2):
            rules.add("E1", table["V", (v,)], table["V", (v2,)])
    for v in tuples:
        far = [v2 for v2 in space.class_of(space.color_of(v)) if all(x != y for x, y in zip(v, v2))]
        for j in colorings:
            for i in range(1, t + 1):
                w = table["W", (v, j, i)]
                for v2 in far:
                    rules.add("E2", w, table["V", (v2,)])
                for ell in range(1, c + 1):
                    for u in H.right_neighbors[v[ell - 1]]:
                        if H.alpha[u - 1] == j[ell - 1]:
                            rules.add("E3", table["C", (u, ell, i)], w)
    for ell in range(1, c + 1):
        for i in range(1, t + 1):
            for u, u2 in combinations(range(1, H.a_size + 1), 2):
                rules.add("E4", table["C", (u, ell, i)], table["C", (u2, ell, i)])

    n_v = len(tuples)
    layout = {
        "V": {"first": 1, "key": ["v"]},
        "C": {"first": n_v + 1, "key": ["u", "l", "i"]},
        "W": {"first": n_v + H.a_size * c * t + 1, "key": ["v", "j", "i"]},
    }
    params = dict(params or {}, delta_s=ds, d=H.b_colors, c=c, t=t)
    return make_output("g_c", H, table, rules, params, layout)


def extract_yes_witness_main(out: ReductionOutput, K) -> DominatingSetResult:
    """(B ∩ K)^c ∪ ((A ∩ K) x [c] x [t]) for a biclique K = (left, right) of H."""
    H = out.source
    p = out.manifest["params"]
    ds, d, c, t = p["delta_s"], p["d"], p["c"], p["t"]
    left, right = sorted(set(K[0])), sorted(set(K[1]))
    check_biclique(H, left, right)
    missing_a = sorted(set(range(1, ds + 1)) - {H.alpha[u - 1] for u in left})
    if missing_a:
        raise WitnessError(f"α not surjective onto [{ds}]: missing colors {missing_a}")
    missing_b = sorted(set(range(1, d + 1)) - {H.beta[v - 1] for v in right})
    if missing_b:
        raise WitnessError(f"β not surjective onto [{d}]: missing colors {missing_b}")
    if len(left) != ds or len(right) != d:
        raise WitnessError(f"witness must have {ds} left and {d} right vertices, got {len(left)} and {len(right)}")
    D = {out.vertex("V", v) for v in product(right, repeat=c)}
    D |= {out.vertex("C", u, ell, i) for u in left for ell in range(1, c + 1) for i in range(1, t + 1)}
    if not is_dominating(out.graph, D):
        raise InvariantViolation("biclique witness set does not dominate G_c")
    return DominatingSetResult(frozenset(D), packing_lower_bound(out.graph), optimal=False)


def _adjacent(H, r1, r2):
    (k1, x1), (k2, x2) = sorted([r1, r2])
    beta = H.beta
    if k1 == "V" and k2 == "V":
        (v,), (v2,) = x1, x2
        return v != v2 and [beta[x - 1] for x in v] == [beta[x - 1] for x in v2]
    if k1 == "V" and k2 == "W":
        (v2,), (v, _, _) = x1, x2
        same_class = [beta[x - 1] for x in v] == [beta[x - 1] for x in v2]
        return same_class and all(a != b for a, b in zip(v, v2))
    if k1 == "C" and k2 == "W":
        (u, ell, i), (v, j, i2) = x1, x2
        return i == i2 and H.has_edge(u, v[ell - 1]) and j[ell - 1] == H.alpha[u - 1]
    if k1 == "C" and k2 == "C":
        (u, ell, i), (u2, ell2, i2) = x1, x2
        return u != u2 and ell == ell2 and i == i2
    return False


def rederive_edges(out: ReductionOutput, colored: ColoredBipartiteGraph = None):
    """Edge set recomputed pairwise from the role table, independent of the builder."""
    H = out.source if colored is None else colored
    edges = set()
    for u in range(1, out.graph.n + 1):
        for v in range(u + 1, out.graph.n + 1):
            if _adjacent(H, out.role(u), out.role(v)):
                edges.add((u, v))
    return frozenset(edges)
