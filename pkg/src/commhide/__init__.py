"""Community deception as degree-preserving multi-objective optimization.

Given a graph and a targeted community-detection algorithm, search for
Pareto-optimal sets of degree-preserving edge rewirings that maximize the
detection damage (1 - ARI against the clean-graph detection) while
minimizing the number of modified links.
"""

from .baselines import EditGenome, GaqResult, gaq_representative_points, run_gaq
from .detection import (
    DETECTOR_KINDS,
    DegenerateGraphError,
    LpaResult,
    fast_newman,
    label_propagation,
    label_propagation_run,
    louvain,
    run_detector,
)
from .graph import (
    EdgeListParseError,
    Graph,
    GraphError,
    Partition,
    dump_edge_list,
    edge_set_difference_size,
    load_edge_list,
    load_edge_list_path,
)
from .metrics import (
    FitnessPoint,
    MetricError,
    adjusted_rand_index,
    attack_size,
    dari,
    dat,
    default_budget,
    front_diversity,
    hypervolume_2d,
    modularity,
    non_dominated,
)
from .moo import (
    AttackConfig,
    AttackResult,
    ConfigError,
    IterationStats,
    ParetoArchive,
    crowding_distance,
    elite_select,
    evaluate_fitness,
    fast_nondominated_sort,
    random_search,
    run_attack,
)
from .perturbation import (
    BIAS_MODES,
    Individual,
    MoveError,
    RewiringMove,
    UnperturbableGraphError,
    apply_move,
    crossover,
    initialize_population,
    mutate,
    random_individual,
    sample_rewiring,
)
from .synthgen import (
    AdjustmentOp,
    AdjustmentResult,
    adjustment_study_rows,
    apply_adjustment,
    generate_chain_of_cliques,
)

__version__ = "0.1.0"

__all__ = [
    "AdjustmentOp",
    "AdjustmentResult",
    "AttackConfig",
    "AttackResult",
    "BIAS_MODES",
    "ConfigError",
    "DETECTOR_KINDS",
    "DegenerateGraphError",
    "EdgeListParseError",
    "EditGenome",
    "FitnessPoint",
    "GaqResult",
    "Graph",
    "GraphError",
    "Individual",
    "IterationStats",
    "LpaResult",
    "MetricError",
    "MoveError",
    "ParetoArchive",
    "Partition",
    "RewiringMove",
    "UnperturbableGraphError",
    "adjusted_rand_index",
    "adjustment_study_rows",
    "apply_adjustment",
    "apply_move",
    "attack_size",
    "crossover",
    "crowding_distance",
    "dari",
    "dat",
    "default_budget",
    "dump_edge_list",
    "edge_set_difference_size",
    "elite_select",
    "evaluate_fitness",
    "fast_newman",
    "fast_nondominated_sort",
    "front_diversity",
    "gaq_representative_points",
    "generate_chain_of_cliques",
    "hypervolume_2d",
    "initialize_population",
    "label_propagation",
    "label_propagation_run",
    "load_edge_list",
    "load_edge_list_path",
    "louvain",
    "modularity",
    "mutate",
    "non_dominated",
    "random_individual",
    "random_search",
    "run_attack",
    "run_detector",
    "run_gaq",
    "sample_rewiring",
]
