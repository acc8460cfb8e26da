"""Reduction output: the constructed graph, a role per vertex, and a manifest."""
import logging
from dataclasses import dataclass, field
from itertools import groupby

from graphs.graph import ColoredBipartiteGraph, Graph
from graphs.io import bipartite_to_dict
from utils.basic_utils import digest_of
from utils.errors import CapExceededError, InvariantViolation

logger = logging.getLogger(__name__)


def run_length(kinds):
    """['B', 'B', 'X'] -> [['B', 2], ['X', 1]]"""
    return [[kind, sum(1 for _ in run)] for kind, run in groupby(kinds)]


class VertexTable(object):
    """Hands out consecutive vertex ids to (kind, key) roles."""

    def __init__(self):
        self.roles = []
        self.index = {}

    def add(self, kind, key):
        role = (kind, tuple(key))
        self.roles.append(role)
        self.index[role] = len(self.roles)
        return len(self.roles)

    def __getitem__(self, role):
        kind, key = role
        return self.index[(kind, tuple(key))]

    def __len__(self):
        return len(self.roles)


class EdgeRules(object):
    """Edges grouped by the construction rule that produced them."""

    def __init__(self, names):
        self.rules = {name: set() for name in names}

    def add(self, rule, u, v):
        self.rules[rule].add((u, v) if u < v else (v, u))

    def counts(self):
        return {name: len(edges) for name, edges in self.rules.items()}

    def union(self):
        out = set()
        for edges in self.rules.values():
            out |= edges
        return frozenset(out)


@dataclass(frozen=True, eq=False)
class ReductionOutput:
    graph: Graph
    roles: tuple
    manifest: dict
    source: ColoredBipartiteGraph = field(repr=False, default=None)
    index: dict = field(repr=False, default_factory=dict)

    def vertex(self, kind, *key):
        return self.index[(kind, tuple(key))]

    def role(self, v):
        return self.roles[v - 1]

    def vertices_of_kind(self, kind):
        return [v for v, (k, _) in enumerate(self.roles, start=1) if k == kind]

    def role_counts(self):
        counts = {}
        for kind, _ in self.roles:
            counts[kind] = counts.get(kind, 0) + 1
        return counts

    @property
    def digest(self):
        return self.manifest["source_digest"]


def check_vertex_cap(total, cap):
    if total > cap:
        raise CapExceededError("output vertices", total, cap)


def make_output(reduction, source: ColoredBipartiteGraph, table: VertexTable, rules: EdgeRules, params: dict,
                layout: dict) -> ReductionOutput:
    edges = rules.union()
    if len(edges) != sum(rules.counts().values()):
        raise InvariantViolation(f"{reduction}: some edge is produced by more than one rule")
    graph = Graph(len(table), edges)
    kinds = [kind for kind, _ in table.roles]
    manifest = {
        "reduction": reduction,
        "params": params,
        "source_digest": digest_of(bipartite_to_dict(source)),
        "roles": run_length(kinds),
        "layout": layout,
        "counts": {"vertices": graph.n, "edges": graph.m},
        "edge_rules": rules.counts(),
    }
    logger.info(f"{reduction}: {graph.n} vertices, {graph.m} edges, rules {manifest['edge_rules']}")
    return ReductionOutput(graph, tuple(table.roles), manifest, source, dict(table.index))
