"""The gap graph G' built from a colored bipartite graph H and a copy count t.

Vertices, in id order: B(H); x_1..x_d; y_1..y_d; C = A(H) x [t] in (a, i)
order; W = {w_(b,j,i)} in (b, j, i) order, with s = a_colors, d = b_colors.

Edges:
    E1  b ~ b' for distinct b, b' with the same β-color
    E2  x_c ~ b and y_c ~ b for every b with β(b) = c
    E3  w_(b,j,i) ~ b' for every b' != b with β(b') = β(b)
    E4  (a, i) ~ w_(b,α(a),i) for every edge {a, b} of H
    E5  (a, i) ~ (a', i) for distinct a, a'
"""
import logging
from itertools import combinations

from graphs.graph import ColoredBipartiteGraph, DominatingSetResult, is_dominating
from utils.errors import InputError, InvariantViolation, WitnessError

from .output import EdgeRules, ReductionOutput, VertexTable, check_vertex_cap, make_output

logger = logging.getLogger(__name__)

DEFAULT_VERTEX_CAP = 10 ** 6
RULES = ("E1", "E2", "E3", "E4", "E5")


def g_prime_size(H: ColoredBipartiteGraph, t):
    s, d = H.a_colors, H.b_colors
    return H.b_size + 2 * d + H.a_size * t + H.b_size * s * t


def check_classes_nonempty(H: ColoredBipartiteGraph):
    empty = H.empty_beta_classes()
    if empty:
        raise InputError(f"β-color classes {empty} are empty")


def build_g_prime(H: ColoredBipartiteGraph, t: int, s=None, d=None, vertex_cap=DEFAULT_VERTEX_CAP,
                  params=None) -> ReductionOutput:
    if s is not None and s != H.a_colors:
        raise InputError(f"H has {H.a_colors} α-colors, expected s = {s}")
    if d is not None and d != H.b_colors:
        raise InputError(f"H has {H.b_colors} β-colors, expected d = {d}")
    if t < 1:
        raise InputError(f"t must be positive, got {t}")
    s, d = H.a_colors, H.b_colors
    check_vertex_cap(g_prime_size(H, t), vertex_cap)
    check_classes_nonempty(H)

    table = VertexTable()
    for b in range(1, H.b_size + 1):
        table.add("B", (b,))
    for c in range(1, d + 1):
        table.add("X", (c,))
    for c in range(1, d + 1):
        table.add("Y", (c,))
    for a in range(1, H.a_size + 1):
        for i in range(1, t + 1):
            table.add("C", (a, i))
    for b in range(1, H.b_size + 1):
        for j in range(1, s + 1):
            for i in range(1, t + 1):
                table.add("W", (b, j, i))

    rules = EdgeRules(RULES)
    for c in range(1, d + 1):
        members = H.beta_classes[c]
        for b, b2 in combinations(members, 2):
            rules.add("E1", table["B", (b,)], table["B", (b2,)])
        for b in members:
            rules.add("E2", table["X", (c,)], table["B", (b,)])
            rules.add("E2", table["Y", (c,)], table["B", (b,)])
            for b2 in members:
                if b2 == b:
                    continue
                for j in range(1, s + 1):
                    for i in range(1, t + 1):
                        rules.add("E3", table["W", (b, j, i)], table["B", (b2,)])
    for a, b in H.edges:
        j = H.alpha[a - 1]
        for i in range(1, t + 1):
            rules.add("E4", table["C", (a, i)], table["W", (b, j, i)])
    for i in range(1, t + 1):
        for a, a2 in combinations(range(1, H.a_size + 1), 2):
            rules.add("E5", table["C", (a, i)], table["C", (a2, i)])

    layout = {
        "B": {"first": 1, "key": ["b"]},
        "X": {"first": H.b_size + 1, "key": ["c"]},
        "Y": {"first": H.b_size + d + 1, "key": ["c"]},
        "C": {"first": H.b_size + 2 * d + 1, "key": ["a", "i"]},
        "W": {"first": H.b_size + 2 * d + H.a_size * t + 1, "key": ["b", "j", "i"]},
    }
    params = dict(params or {}, s=s, d=d, t=t)
    return make_output("g_prime", H, table, rules, params, layout)


def class_members(out: ReductionOutput, c):
    """Vertex ids of B_c: the β-class c together with x_c and y_c."""
    H = out.source
    return sorted([out.vertex("B", b) for b in H.beta_classes[c]] + [out.vertex("X", c), out.vertex("Y", c)])


def check_biclique(H: ColoredBipartiteGraph, left, right):
    """Raise WitnessError naming the first pair or color that breaks (left, right)."""
    for a in left:
        if not 1 <= a <= H.a_size:
            raise WitnessError(f"left vertex {a} outside 1..{H.a_size}")
    for b in right:
        if not 1 <= b <= H.b_size:
            raise WitnessError(f"right vertex {b} outside 1..{H.b_size}")
    for a in sorted(left):
        for b in sorted(right):
            if not H.has_edge(a, b):
                raise WitnessError(f"biclique edge ({a}, {b}) missing from H")


def _check_injective(colors, vertices, name):
    seen = {}
    for v in sorted(vertices):
        color = colors[v - 1]
        if color in seen:
            raise WitnessError(f"{name} not injective: {seen[color]} and {v} share color {color}")
        seen[color] = v


def extract_yes_witness32(out: ReductionOutput, K) -> DominatingSetResult:
    """(B ∩ K) ∪ ((A ∩ K) x [t]) for a biclique K = (left, right) of H."""
    H = out.source
    s, d, t = out.manifest["params"]["s"], out.manifest["params"]["d"], out.manifest["params"]["t"]
    left, right = tuple(K[0]), tuple(K[1])
    if len(set(left)) != s or len(set(right)) != d:
        raise WitnessError(f"witness must have {s} left and {d} right vertices, got {len(set(left))} and "
                           f"{len(set(right))}")
    check_biclique(H, left, right)
    _check_injective(H.alpha, left, "α")
    _check_injective(H.beta, right, "β")
    D = {out.vertex("B", b) for b in right}
    D |= {out.vertex("C", a, i) for a in left for i in range(1, t + 1)}
    if not is_dominating(out.graph, D):
        raise InvariantViolation("biclique witness set does not dominate G'")
    return DominatingSetResult(frozenset(D), d, optimal=False)


def _adjacent(H, r1, r2):
    """Edge predicate of G' on two roles, evaluated rule by rule."""
    (k1, x1), (k2, x2) = sorted([r1, r2])
    if k1 == "B" and k2 == "B":
        return x1 != x2 and H.beta[x1[0] - 1] == H.beta[x2[0] - 1]
    if k1 == "B" and k2 in ("X", "Y"):
        return H.beta[x1[0] - 1] == x2[0]
    if k1 == "B" and k2 == "W":
        b2, (b, _, _) = x1[0], x2
        return b2 != b and H.beta[b2 - 1] == H.beta[b - 1]
    if k1 == "C" and k2 == "W":
        (a, i), (b, j, i2) = x1, x2
        return i == i2 and H.has_edge(a, b) and H.alpha[a - 1] == j
    if k1 == "C" and k2 == "C":
        return x1[1] == x2[1] and x1[0] != x2[0]
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
