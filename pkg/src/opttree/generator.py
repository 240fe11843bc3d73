"""Exhaustive tree generation and the permutation-based reference pipeline.

These generators are the reference semantics the solver is checked against:
they materialize every admissible tree instead of fusing the minimum into the
recursion. Output order is deterministic (root index ascending, left subtree
choices before right), so generated lists are reproducible and comparable.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Sequence

from .data import Dataset
from .rules import AncestryMatrix, Rule, ancestry_matrix, split_dataset
from .rule_systems import MatrixDim, splits_generic, splits_mcmp
from .trees import (
    LEAF,
    BTree,
    DecisionTree,
    DLeaf,
    DNode,
    Leaf,
    Node,
    Permutation,
    downward_accumulate,
    relabel,
    tree_from_permutation,
)


def all_tree_shapes(indices: Iterable[int], matrix: AncestryMatrix) -> list[BTree]:
    """Every tree over ``indices`` consistent with the ancestry matrix.

    An empty index set yields the bare leaf; otherwise each feasible root is
    combined with every admissible left and right subtree. The list is empty
    when no admissible tree exists.
    """
    idx = tuple(sorted(indices))
    if not idx:
        return [LEAF]
    out: list[BTree] = []
    for left, rid, right in splits_generic(idx, matrix):
        for u in all_tree_shapes(left, matrix):
            for v in all_tree_shapes(right, matrix):
                out.append(Node(u, rid, v))
    return out


def shape_to_tree(shape: BTree, data: Dataset) -> DecisionTree:
    """Give a structure-only tree dataset leaves, all carrying ``data``."""
    if isinstance(shape, Leaf):
        return DLeaf(data)
    return DNode(shape_to_tree(shape.left, data), shape.rule_id, shape_to_tree(shape.right, data))


def all_trees(
    indices: Iterable[int], matrix: AncestryMatrix, rules: Sequence[Rule], data: Dataset
) -> list[DecisionTree]:
    """Every admissible tree, completed so each leaf holds the data reaching it."""
    return [
        downward_accumulate(shape_to_tree(shape, data), rules)
        for shape in all_tree_shapes(indices, matrix)
    ]


def all_trees_constrained(
    indices: Iterable[int],
    matrix: AncestryMatrix,
    rules: Sequence[Rule],
    data: Dataset,
    min_leaf: int = 0,
    max_depth: int | None = None,
) -> list[DecisionTree]:
    """Constrained generation, pruning during recursion.

    Both constraints shrink monotonically along subtrees (leaves only lose
    points, depth only grows), so pruning a failing partial tree discards no
    tree the post-filter would keep; the output equals filtering
    :func:`all_trees` by leaf size and depth.
    """

    def rec(idx: tuple[int, ...], data_here: Dataset, budget: int | None) -> list[DecisionTree]:
        if not idx:
            return [DLeaf(data_here)] if len(data_here) >= min_leaf else []
        if budget is not None and budget <= 0:
            return []
        sub_budget = None if budget is None else budget - 1
        out: list[DecisionTree] = []
        for left, rid, right in splits_generic(idx, matrix):
            pos, neg = split_dataset(rules[rid], data_here)
            for u in rec(left, pos, sub_budget):
                for v in rec(right, neg, sub_budget):
                    out.append(DNode(u, rid, v))
        return out

    return rec(tuple(sorted(indices)), tuple(data), max_depth)


def enumerate_permutation_trees(
    rules: Sequence[Rule],
    k: int,
    matrix_fn: Callable[[Sequence[Rule]], AncestryMatrix] = ancestry_matrix,
) -> list[tuple[Permutation, BTree]]:
    """Brute-force reference: try all orderings of every k-subset of rules.

    For each k-combination the pairwise matrix is built (``matrix_fn``
    normally derives it from defining points) and all k! orderings are run
    through :func:`tree_from_permutation`; the survivors are returned as
    (ordering, tree) pairs with rule ids mapped back into the full table.
    """
    if k > len(rules):
        raise ValueError(f"cannot choose {k} of {len(rules)} rules")
    results: list[tuple[Permutation, BTree]] = []
    for combo in itertools.combinations(range(len(rules)), k):
        local = matrix_fn([rules[i] for i in combo])
        for perm in itertools.permutations(range(k)):
            tree = tree_from_permutation(perm, local)
            if tree is not None:
                results.append((tuple(combo[p] for p in perm), relabel(tree, combo)))
    return results


def all_chain_trees(items: Sequence[MatrixDim]) -> list[DecisionTree]:
    """Every parenthesization of a matrix chain as a leaf-labeled tree."""
    seq = tuple(items)
    if not seq:
        return []
    if len(seq) == 1:
        return [DLeaf(seq[0])]
    out: list[DecisionTree] = []
    for prefix, _, suffix in splits_mcmp(seq):
        for u in all_chain_trees(prefix):
            for v in all_chain_trees(suffix):
                out.append(DNode(u, None, v))
    return out
