from .monotone import (
    CircuitAssignment,
    MonotoneCircuit,
    graph_to_circuit,
    min_weight_satisfying,
    parse_circuit,
    write_circuit,
)
