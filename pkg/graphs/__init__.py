from .graph import (
    BipartiteGraph,
    ColoredBipartiteGraph,
    DominatingSetResult,
    Graph,
    complement,
    is_dominating,
)
from .io import bipartite_from_dict, bipartite_to_dict, parse_graph, write_graph
