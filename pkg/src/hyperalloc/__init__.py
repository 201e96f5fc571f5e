"""Hypergraph-based resource allocation for ultra-dense wireless networks.

Core structures live in :mod:`hyperalloc.hypergraph`; the solvers are
weighted matching (:mod:`.matching`), non-monochromatic coloring
(:mod:`.coloring`), a channel-selection game (:mod:`.game`) and the Hungarian
method (:mod:`.hungarian`). :mod:`.scenarios` turns synthetic networks into
solver inputs and :mod:`.pipelines` runs the end-to-end allocators.
"""

from .coloring import check_coloring, greedy_color, make_coloring_instance
from .config import ExperimentConfig, load_config
from .game import new_game, potential, run_to_convergence
from .hungarian import hungarian_assignment
from .hypergraph import (
    Hypergraph,
    adjacent_vertices,
    build_hypergraph,
    from_incidence_matrix,
    incidence_matrix,
    representative_graph,
)
from .matching import (
    Matching,
    UniformWeightedHypergraph,
    exact_matching,
    greedy_matching,
    local_search_matching,
    make_uniform,
)
from .pipelines import (
    Allocation,
    SumRateReport,
    caching_allocate,
    cran_bipartite_baseline,
    cran_iterative_matching,
    d2d_allocate,
    dualconn_allocate,
    recompute_sum_rate,
)
from .radio import RadioParams

__version__ = "0.1.0"

__all__ = [
    "Hypergraph",
    "build_hypergraph",
    "incidence_matrix",
    "from_incidence_matrix",
    "adjacent_vertices",
    "representative_graph",
    "UniformWeightedHypergraph",
    "Matching",
    "make_uniform",
    "greedy_matching",
    "local_search_matching",
    "exact_matching",
    "hungarian_assignment",
    "make_coloring_instance",
    "check_coloring",
    "greedy_color",
    "new_game",
    "potential",
    "run_to_convergence",
    "RadioParams",
    "Allocation",
    "SumRateReport",
    "cran_iterative_matching",
    "cran_bipartite_baseline",
    "recompute_sum_rate",
    "dualconn_allocate",
    "d2d_allocate",
    "caching_allocate",
    "ExperimentConfig",
    "load_config",
]
