"""DIMACS edge-format and JSON readers/writers for graph types."""
import logging

from utils.errors import GraphParseError, InputError

from .graph import ColoredBipartiteGraph, Graph

logger = logging.getLogger(__name__)

BIPARTITE_KEYS = ("a_size", "b_size", "a_colors", "b_colors", "alpha", "beta", "edges")


def _parse_int(token, line_no, what):
    try:
        return int(token)
    except ValueError:
        raise GraphParseError(f"{what} is not an integer: {token!r}", line_no) from None


def parse_graph(text: str) -> Graph:
    """Parse DIMACS edge format: `p edge <n> <m>`, `e <u> <v>`, `c ...` comments."""
    n = None
    declared_m = None
    edges = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        tokens = line.split()
        if tokens[0] == "p":
            if n is not None:
                raise GraphParseError("duplicate problem line", line_no)
            if len(tokens) != 4 or tokens[1] != "edge":
                raise GraphParseError(f"malformed header {line!r}, expected 'p edge <n> <m>'", line_no)
            n = _parse_int(tokens[2], line_no, "vertex count")
            declared_m = _parse_int(tokens[3], line_no, "edge count")
            if n < 0 or declared_m < 0:
                raise GraphParseError("negative count in header", line_no)
        elif tokens[0] == "e":
            if n is None:
                raise GraphParseError("edge line before 'p edge' header", line_no)
            if len(tokens) != 3:
                raise GraphParseError(f"malformed edge line {line!r}", line_no)
            u = _parse_int(tokens[1], line_no, "endpoint")
            v = _parse_int(tokens[2], line_no, "endpoint")
            if u == v:
                raise GraphParseError(f"loop edge at vertex {u}", line_no)
            for x in (u, v):
                if not 1 <= x <= n:
                    raise GraphParseError(f"endpoint {x} outside 1..{n}", line_no)
            edges.add((min(u, v), max(u, v)))
        else:
            raise GraphParseError(f"unrecognised line {line!r}", line_no)
    if n is None:
        raise GraphParseError("missing 'p edge <n> <m>' header")
    if declared_m != len(edges):
        logger.warning(f"header declares {declared_m} edges but {len(edges)} distinct edges were listed")
    return Graph(n, frozenset(edges))


def write_graph(G: Graph, comments=()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"p edge {G.n} {G.m}")
    lines.extend(f"e {u} {v}" for u, v in G.sorted_edges())
    return "\n".join(lines) + "\n"


def bipartite_to_dict(H: ColoredBipartiteGraph) -> dict:
    return {
        "a_size": H.a_size,
        "b_size": H.b_size,
        "a_colors": H.a_colors,
        "b_colors": H.b_colors,
        "alpha": list(H.alpha),
        "beta": list(H.beta),
        "edges": [list(e) for e in sorted(H.edges)],
    }


def bipartite_from_dict(data: dict) -> ColoredBipartiteGraph:
    if not isinstance(data, dict):
        raise InputError(f"colored bipartite graph JSON must be an object, got {type(data).__name__}")
    missing = [k for k in BIPARTITE_KEYS if k not in data]
    if missing:
        raise InputError(f"colored bipartite graph JSON is missing keys {missing}")
    try:
        edges = [(int(a), int(b)) for a, b in data["edges"]]
    except (TypeError, ValueError):
        raise InputError("edges must be a list of [a, b] pairs") from None
    fields = {}
    for key in ("a_size", "b_size", "a_colors", "b_colors"):
        try:
            fields[key] = int(data[key])
        except (TypeError, ValueError):
            raise InputError(f"{key} must be an integer, got {data[key]!r}") from None
    for key in ("alpha", "beta"):
        try:
            fields[key] = tuple(int(x) for x in data[key])
        except (TypeError, ValueError):
            raise InputError(f"{key} must be a list of integers, got {data[key]!r}") from None
    return ColoredBipartiteGraph(edges=frozenset(edges), **fields)