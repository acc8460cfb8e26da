"""Depth-2 monotone circuits (an AND of ORs of positive variables).

A graph maps to the circuit with one variable per vertex and one clause
N[v] per vertex, so satisfying assignments of weight w are exactly the
dominating sets of size w.
"""
import logging
import time
from dataclasses import dataclass

from graphs.graph import Graph
from solvers.dominating import SolverBudget
from utils.errors import InputError

logger = logging.getLogger(__name__)

MAX_EXACT_VARS = 30


@dataclass(frozen=True)
class MonotoneCircuit:
    num_vars: int
    clauses: tuple

    def __post_init__(self):
        if self.num_vars < 0:
            raise InputError(f"variable count must be non-negative, got {self.num_vars}")
        clauses = tuple(frozenset(int(x) for x in clause) for clause in self.clauses)
        for idx, clause in enumerate(clauses, start=1):
            if not clause:
                raise InputError(f"clause {idx} is empty")
            bad = [x for x in clause if not 1 <= x <= self.num_vars]
            if bad:
                raise InputError(f"clause {idx} uses variables {sorted(bad)} outside 1..{self.num_vars}")
        object.__setattr__(self, "clauses", clauses)

    def clause_masks(self):
        masks = []
        for clause in self.clauses:
            mask = 0
            for x in clause:
                mask |= 1 << (x - 1)
            masks.append(mask)
        return masks

    def is_satisfied_by(self, support) -> bool:
        support = set(support)
        return all(clause & support for clause in self.clauses)


@dataclass(frozen=True)
class CircuitAssignment:
    support: tuple
    lower_bound: int
    optimal: bool

    @property
    def weight(self):
        return len(self.support)

    def to_dict(self):
        return {"weight": self.weight, "support": list(self.support), "optimal": self.optimal,
                "lower_bound": self.lower_bound}


def graph_to_circuit(G: Graph) -> MonotoneCircuit:
    """Clause v is the closed neighborhood N[v]."""
    return MonotoneCircuit(G.n, tuple(G.closed_neighborhood(v) for v in G.vertices))


class _OutOfBudget(Exception):
    pass


def _disjoint_clauses(masks, allowed):
    """Lower bound: clauses pairwise disjoint on the allowed variables. None if one is unsatisfiable."""
    restricted = []
    for m in masks:
        r = m & allowed
        if not r:
            return None
        restricted.append((r.bit_count(), r))
    restricted.sort()
    used = 0
    count = 0
    for _, r in restricted:
        if not r & used:
            used |= r
            count += 1
    return count


def _greedy_cover(C, masks):
    chosen = []
    open_masks = list(masks)
    while open_masks:
        best_x, best_hits = None, 0
        for x in range(1, C.num_vars + 1):
            hits = sum(1 for m in open_masks if m >> (x - 1) & 1)
            if hits > best_hits:
                best_x, best_hits = x, hits
        chosen.append(best_x)
        open_masks = [m for m in open_masks if not m >> (best_x - 1) & 1]
    return tuple(sorted(chosen))


def min_weight_satisfying(C: MonotoneCircuit, budget: SolverBudget = None) -> CircuitAssignment:
    """Least-weight satisfying assignment, lexicographically least support among optima."""
    budget = budget or SolverBudget()
    if C.num_vars > MAX_EXACT_VARS:
        raise InputError(f"exact search supports at most {MAX_EXACT_VARS} variables, got {C.num_vars}")
    masks = C.clause_masks()
    if not masks:
        return CircuitAssignment((), 0, True)
    full = (1 << C.num_vars) - 1
    deadline = time.monotonic() + budget.time_cap
    nodes = 0
    chosen = []

    def search(open_masks, remaining, start):
        nonlocal nodes
        nodes += 1
        if nodes > budget.max_nodes or (nodes & 1023 == 0 and time.monotonic() > deadline):
            raise _OutOfBudget()
        if not open_masks:
            return True
        if remaining == 0:
            return False
        allowed = full & ~((1 << (start - 1)) - 1)
        lb = _disjoint_clauses(open_masks, allowed)
        if lb is None or lb > remaining:
            return False
        limit = min(m.bit_length() for m in open_masks)
        for x in range(start, limit + 1):
            bit = 1 << (x - 1)
            chosen.append(x)
            if search([m for m in open_masks if not m & bit], remaining - 1, x + 1):
                return True
            chosen.pop()
        return False

    weight = _disjoint_clauses(masks, full)
    try:
        while not search(masks, weight, 1):
            weight += 1
    except _OutOfBudget:
        upper = _greedy_cover(C, masks)
        logger.warning(f"circuit search out of budget after {nodes} nodes; {weight} <= weight <= {len(upper)}")
        return CircuitAssignment(upper, weight, weight == len(upper))
    return CircuitAssignment(tuple(chosen), len(chosen), True)


def parse_circuit(text: str) -> MonotoneCircuit:
    """`vars <n>` then one `or <i> <j> ...` line per clause; `c` lines are comments."""
    num_vars = None
    clauses = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        try:
            values = [int(x) for x in tokens[1:]]
        except ValueError:
            raise InputError(f"line {line_no}: non-integer token in {raw.strip()!r}") from None
        if tokens[0] == "vars":
            if num_vars is not None or len(values) != 1:
                raise InputError(f"line {line_no}: expected a single 'vars <n>' line")
            num_vars = values[0]
        elif tokens[0] == "or":
            if num_vars is None:
                raise InputError(f"line {line_no}: clause before 'vars' line")
            clauses.append(values)
        else:
            raise InputError(f"line {line_no}: unrecognised line {raw.strip()!r}")
    if num_vars is None:
        raise InputError("missing 'vars <n>' line")
    return MonotoneCircuit(num_vars, tuple(clauses))


def write_circuit(C: MonotoneCircuit, comments=()) -> str:
    lines = [f"c {c}" for c in comments]
    lines.append(f"vars {C.num_vars}")
    lines.extend("or " + " ".join(str(x) for x in sorted(clause)) for clause in C.clauses)
    return "\n".join(lines) + "\n"
