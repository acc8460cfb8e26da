from .clique import has_k_clique, has_k_independent_set
from .dominating import (
    SolverBudget,
    exact_min_dominating_set,
    greedy_dominating_set,
    packing_lower_bound,
)
