"""cherryforks: exact and simulated cherry/pitchfork statistics for random
rooted and unrooted binary phylogenetic trees under the YHK and PDA models.
"""

from .analysis import (
    ShapeReport,
    TvdSequence,
    change_point,
    change_point_scan,
    delta,
    floor_identities_hold,
    log_concavity,
    nabla,
    pda_rooted_excess_profile,
    tvd,
    tvd_conjecture_scan,
    tvd_pda_asymptotic,
    tvd_pda_closed_form,
    tvd_pda_value,
    tvd_sequence,
    yhk_sign_change_exists,
)
from .distributions import (
    JointPmf,
    MarginalPmf,
    cherry_pmf_rooted,
    cherry_pmf_unrooted,
    functional_expectation,
    iter_cherry_pmfs,
    iter_joint_unrooted,
    joint_unrooted,
    marginal_from_joint,
    pda_cherry_closed_form,
    pda_rooted_cherry_closed_form,
    pda_rooted_cherry_from_unrooted,
    yhk_rooted_single_cherry_mass,
)
from .growth import (
    GrowthTrace,
    Model,
    grow,
    replay,
    sample_counts,
    step_choice_counts,
)
from .moments import (
    ComparisonReport,
    MomentSummary,
    closed_form,
    comparison_report,
    corr_squared,
    correlation,
    mean_gap,
    mean_gap_limit,
    ratio_limits_check,
    table_value,
)
from .newick import NewickError, parse_newick, write_newick
from .oracle import exact_by_path_enumeration, exact_by_tree_enumeration
from .trees import (
    EdgeClassCounts,
    PhyloTree,
    SubtreeCounts,
    TreeError,
    attach_leaf,
    classify_edges,
    count_subtrees,
    deroot,
    enumerate_trees,
    increment_for_edge,
    same_topology,
    topology_key,
)

__version__ = "0.1.0"

__all__ = [
    "ComparisonReport",
    "EdgeClassCounts",
    "GrowthTrace",
    "JointPmf",
    "MarginalPmf",
    "Model",
    "MomentSummary",
    "NewickError",
    "PhyloTree",
    "ShapeReport",
    "SubtreeCounts",
    "TreeError",
    "TvdSequence",
    "attach_leaf",
    "change_point",
    "change_point_scan",
    "cherry_pmf_rooted",
    "cherry_pmf_unrooted",
    "classify_edges",
    "closed_form",
    "comparison_report",
    "corr_squared",
    "correlation",
    "count_subtrees",
    "delta",
    "deroot",
    "enumerate_trees",
    "exact_by_path_enumeration",
    "exact_by_tree_enumeration",
    "floor_identities_hold",
    "functional_expectation",
    "grow",
    "increment_for_edge",
    "iter_cherry_pmfs",
    "iter_joint_unrooted",
    "joint_unrooted",
    "log_concavity",
    "marginal_from_joint",
    "mean_gap",
    "mean_gap_limit",
    "nabla",
    "parse_newick",
    "pda_cherry_closed_form",
    "pda_rooted_cherry_closed_form",
    "pda_rooted_cherry_from_unrooted",
    "pda_rooted_excess_profile",
    "ratio_limits_check",
    "replay",
    "same_topology",
    "sample_counts",
    "step_choice_counts",
    "table_value",
    "topology_key",
    "tvd",
    "tvd_conjecture_scan",
    "tvd_pda_asymptotic",
    "tvd_pda_closed_form",
    "tvd_pda_value",
    "tvd_sequence",
    "write_newick",
    "yhk_rooted_single_cherry_mass",
    "yhk_sign_change_exists",
]
