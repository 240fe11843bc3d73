"""Exact decision-tree optimization over point-defined splitting rules."""

from .data import Dataset, Point, Sample, dimension, load_csv, make_dataset
from .rules import (
    EPS,
    AncestryMatrix,
    AxiomReport,
    AxisParallel,
    Hyperplane,
    LiftedHyperplane,
    Rule,
    Segment2D,
    ancestry_matrix,
    classify,
    hyperplane,
    hyperplane_from_points,
    root_feasible,
    split_dataset,
    validate_axioms,
)
from .rule_systems import (
    MatrixDim,
    SceneSegment,
    enumerate_axis_rules,
    enumerate_hyperplane_rules,
    enumerate_surface2_rules,
    lift_dataset,
    lift_degree2,
    split_segments,
    splits_bsp,
    splits_generic,
    splits_kd,
    splits_mcmp,
)
from .trees import (
    LEAF,
    BTree,
    DecisionTree,
    DLeaf,
    DNode,
    Leaf,
    Node,
    Path,
    Permutation,
    Turn,
    depth,
    downward_accumulate,
    leaf_paths,
    leaves,
    level_order,
    map_leaves,
    node_count,
    reduce_path,
    relabel,
    tree_from_permutation,
)
from .generator import (
    all_chain_trees,
    all_tree_shapes,
    all_trees,
    all_trees_constrained,
    enumerate_permutation_trees,
    shape_to_tree,
)
from .solver import (
    CHAIN_COST,
    LEAF_BALANCE,
    MISCLASSIFICATION,
    TREE_SIZE,
    CostValue,
    Objective,
    SolveConstraints,
    SolveStats,
    bsp_tree_from_order,
    majority_label,
    min_by,
    misclassification_cost,
    never_dominates,
    parenthesization,
    partition_dominates,
    score_dominates,
    solve,
    solve_bsp,
    solve_kd,
    solve_mcmp,
    solve_ruleset,
    solve_ruleset_thinned,
    tree_cost,
)
from .treefmt import parse, serialize
