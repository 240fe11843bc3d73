"""Objectives and the exact tree optimizers.

The core recursion solves the fixed-rule-set problem: with the candidate
roots supplied by the ancestry matrix, it recursively optimizes the left and
right side on the matching data partition and keeps the cheapest combination.
Because every shipped objective combines child costs monotonically, taking
the minimum inside the recursion is exact. The outer optimizer repeats this
for every k-combination of the rule table.

No subproblem results are cached: distinct roots over the same index set need
distinct optimal subtrees, so a cache would have to key on (indices, root)
pairs whose count makes it useless in practice. A :class:`SolveStats` counter
records how often (indices, root) subproblems repeat so the overlap is
observable without storing solutions.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Iterable, Sequence

from .data import Dataset
from .rules import AncestryMatrix, Rule, ancestry_matrix, classify
from .rule_systems import (
    MatrixDim,
    SceneSegment,
    split_segments,
    splits_bsp,
    splits_generic,
    splits_kd,
    splits_mcmp,
)
from .trees import DecisionTree, DLeaf, DNode


@dataclass(frozen=True)
class CostValue:
    """Scalar cost plus an optional aggregate (e.g. sub-chain dimensions)."""

    cost: float
    payload: tuple | None = None


def _score_cost(value: CostValue) -> float:
    return value.cost


@dataclass(frozen=True)
class Objective:
    """Leaf cost, monotone combine, and the scalar used for comparisons.

    ``combine`` must be nondecreasing in each child's score for a fixed
    branch context; that is what licenses minimizing inside the recursion.
    """

    leaf_cost: Callable[[Any], CostValue]
    combine: Callable[[CostValue, CostValue, Any], CostValue]
    score: Callable[[CostValue], float] = _score_cost


@dataclass(frozen=True)
class SolveConstraints:
    min_leaf: int = 0
    max_depth: int | None = None
    thinning: Callable | None = None


@dataclass
class SolveStats:
    """Instrumentation: recursion size and repeated-subproblem tallies."""

    nodes: int = 0
    subproblems: Counter = field(default_factory=Counter)

    def record(self, indices: tuple[int, ...], root: int) -> None:
        self.subproblems[(indices, root)] += 1

    @property
    def repeated(self) -> int:
        return sum(c - 1 for c in self.subproblems.values() if c > 1)


def majority_label(data: Dataset) -> int | None:
    """Most frequent label, ties broken toward the smallest label id."""
    if not data:
        return None
    counts: Counter = Counter(s.label for s in data)
    best = max(counts.items(), key=lambda kv: (kv[1], -kv[0]))
    return best[0]


def misclassification_cost(data: Dataset) -> CostValue:
    """Points whose label differs from the leaf majority."""
    if not data:
        return CostValue(0.0)
    m = majority_label(data)
    return CostValue(float(sum(1 for s in data if s.label != m)))


def _add(a: CostValue, b: CostValue, ctx: Any) -> CostValue:
    return CostValue(a.cost + b.cost)


def _add_plus_one(a: CostValue, b: CostValue, ctx: Any) -> CostValue:
    return CostValue(a.cost + b.cost + 1.0)


def _chain_leaf(dim: MatrixDim) -> CostValue:
    return CostValue(0.0, (dim.rows, dim.cols))


def _chain_combine(a: CostValue, b: CostValue, ctx: Any) -> CostValue:
    p, q = a.payload
    q2, r = b.payload
    if q != q2:
        raise ValueError(f"non-conforming chain dimensions {a.payload} x {b.payload}")
    return CostValue(a.cost + b.cost + p * q * r, (p, r))


def _balance_leaf(data: Dataset) -> CostValue:
    return CostValue(float(len(data)) ** 2)


MISCLASSIFICATION = Objective(misclassification_cost, _add)
TREE_SIZE = Objective(lambda data: CostValue(1.0), _add_plus_one)
CHAIN_COST = Objective(_chain_leaf, _chain_combine)
LEAF_BALANCE = Objective(_balance_leaf, _add)


def tree_cost(tree: DecisionTree, objective: Objective) -> CostValue:
    """Fold an objective over a completed tree."""
    if isinstance(tree, DLeaf):
        return objective.leaf_cost(tree.data)
    u = tree_cost(tree.left, objective)
    v = tree_cost(tree.right, objective)
    return objective.combine(u, v, tree.rule_id)


def min_by(candidates: Iterable[DecisionTree], objective: Objective) -> DecisionTree:
    """Candidate with minimal score; ties keep the earliest candidate."""
    best = None
    best_score = None
    for tree in candidates:
        s = objective.score(tree_cost(tree, objective))
        if best is None or s < best_score:
            best, best_score = tree, s
    if best is None:
        raise ValueError("cannot minimize over an empty candidate list")
    return best


class _Partitioner:
    """Row-index views of one dataset with per-rule sign vectors cached.

    Predicate evaluations are shared across the whole solve; the recursion
    passes row-index tuples around and only materializes samples at leaves.
    """

    def __init__(self, rules: Sequence[Rule], data: Dataset):
        self.rules = rules
        self.data = tuple(data)
        self.all_rows = tuple(range(len(self.data)))
        self._signs: dict[int, tuple[int, ...]] = {}

    def signs(self, rid: int) -> tuple[int, ...]:
        cached = self._signs.get(rid)
        if cached is None:
            rule = self.rules[rid]
            cached = tuple(classify(rule, s.point) for s in self.data)
            self._signs[rid] = cached
        return cached

    def split(self, rid: int, rows: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
        signs = self.signs(rid)
        pos = tuple(i for i in rows if signs[i] > 0)
        neg = tuple(i for i in rows if signs[i] < 0)
        return pos, neg

    def materialize(self, rows: tuple[int, ...]) -> Dataset:
        return tuple(self.data[i] for i in rows)


def _solve_rows(
    idx: tuple[int, ...],
    rows: tuple[int, ...],
    budget: int | None,
    ctx: _Partitioner,
    matrix: AncestryMatrix,
    objective: Objective,
    cons: SolveConstraints,
    stats: SolveStats | None,
) -> tuple[DecisionTree, CostValue] | None:
    if stats is not None:
        stats.nodes += 1
    if not idx:
        if len(rows) < cons.min_leaf:
            return None
        leaf_data = ctx.materialize(rows)
        return DLeaf(leaf_data), objective.leaf_cost(leaf_data)
    if budget is not None and budget <= 0:
        return None
    sub_budget = None if budget is None else budget - 1
    best = None
    best_score = None
    for left, rid, right in splits_generic(idx, matrix):
        if stats is not None:
            stats.record(idx, rid)
        pos, neg = ctx.split(rid, rows)
        u = _solve_rows(left, pos, sub_budget, ctx, matrix, objective, cons, stats)
        if u is None:
            continue
        v = _solve_rows(right, neg, sub_budget, ctx, matrix, objective, cons, stats)
        if v is None:
            continue
        cost = objective.combine(u[1], v[1], rid)
        s = objective.score(cost)
        if best is None or s < best_score:
            best, best_score = (DNode(u[0], rid, v[0]), cost), s
    return best


def _thin(candidates: list, dominates: Callable) -> list:
    kept: list = []
    for cand in candidates:
        if any(dominates(old, cand) for old in kept):
            continue
        kept = [old for old in kept if not dominates(cand, old)]
        kept.append(cand)
    return kept


def _solve_rows_thinned(
    idx: tuple[int, ...],
    rows: tuple[int, ...],
    budget: int | None,
    ctx: _Partitioner,
    matrix: AncestryMatrix,
    objective: Objective,
    cons: SolveConstraints,
    dominates: Callable,
) -> list[tuple[DecisionTree, CostValue]]:
    if not idx:
        if len(rows) < cons.min_leaf:
            return []
        leaf_data = ctx.materialize(rows)
        return [(DLeaf(leaf_data), objective.leaf_cost(leaf_data))]
    if budget is not None and budget <= 0:
        return []
    sub_budget = None if budget is None else budget - 1
    out: list[tuple[DecisionTree, CostValue]] = []
    for left, rid, right in splits_generic(idx, matrix):
        pos, neg = ctx.split(rid, rows)
        for u in _solve_rows_thinned(left, pos, sub_budget, ctx, matrix, objective, cons, dominates):
            for v in _solve_rows_thinned(right, neg, sub_budget, ctx, matrix, objective, cons, dominates):
                out.append((DNode(u[0], rid, v[0]), objective.combine(u[1], v[1], rid)))
    return _thin(out, dominates)


def _pick_best(candidates, objective):
    best = None
    best_score = None
    for cand in candidates:
        s = objective.score(cand[1])
        if best is None or s < best_score:
            best, best_score = cand, s
    return best


def solve_ruleset(
    indices: Iterable[int],
    matrix: AncestryMatrix,
    rules: Sequence[Rule],
    data: Dataset,
    objective: Objective,
    constraints: SolveConstraints | None = None,
    stats: SolveStats | None = None,
) -> DecisionTree | None:
    """Optimal tree using exactly the given rule indices, or None.

    An empty index set yields a single leaf holding the data. Otherwise every
    feasible root is tried, the two sides are solved on the matching data
    partition, and the cheapest combination wins (ties keep the earliest
    root). None means the constraints eliminated every candidate or no tree
    over these indices is consistent with the matrix.
    """
    cons = constraints or SolveConstraints()
    ctx = _Partitioner(rules, data)
    idx = tuple(sorted(indices))
    if cons.thinning is not None:
        cands = _solve_rows_thinned(idx, ctx.all_rows, cons.max_depth, ctx, matrix, objective, cons, cons.thinning)
        best = _pick_best(cands, objective)
    else:
        best = _solve_rows(idx, ctx.all_rows, cons.max_depth, ctx, matrix, objective, cons, stats)
    return None if best is None else best[0]


def solve_ruleset_thinned(
    indices: Iterable[int],
    matrix: AncestryMatrix,
    rules: Sequence[Rule],
    data: Dataset,
    objective: Objective,
    preorder: Callable,
    constraints: SolveConstraints | None = None,
) -> DecisionTree | None:
    """Like :func:`solve_ruleset`, keeping a dominance-thinned candidate list.

    ``preorder(a, b)`` must be reflexive, transitive and consistent with the
    objective's combine: whenever it declares ``a`` at least as good as ``b``,
    extending ``a`` can never score worse than extending ``b``. The winner's
    score then matches the unthinned solve.
    """
    cons = constraints or SolveConstraints()
    cons = SolveConstraints(cons.min_leaf, cons.max_depth, preorder)
    return solve_ruleset(indices, matrix, rules, data, objective, cons)


def never_dominates(a, b) -> bool:
    """Trivial preorder: thinning keeps every candidate."""
    return False


def _root_of(tree: DecisionTree):
    return tree.rule_id if isinstance(tree, DNode) else None


def score_dominates(objective: Objective) -> Callable:
    """Dominance among candidates sharing a root: lower-or-equal score wins."""

    def dominates(a, b) -> bool:
        return _root_of(a[0]) == _root_of(b[0]) and objective.score(a[1]) <= objective.score(b[1])

    return dominates


def _leaf_partition(tree: DecisionTree) -> tuple:
    if isinstance(tree, DLeaf):
        return (tuple(tree.data),)
    return _leaf_partition(tree.left) + _leaf_partition(tree.right)


def partition_dominates(objective: Objective) -> Callable:
    """Dominance among candidates inducing the same leaf partition."""

    def dominates(a, b) -> bool:
        return (
            sorted(_leaf_partition(a[0])) == sorted(_leaf_partition(b[0]))
            and objective.score(a[1]) <= objective.score(b[1])
        )

    return dominates


def solve(
    rules: Sequence[Rule],
    k: int,
    data: Dataset,
    objective: Objective,
    constraints: SolveConstraints | None = None,
    stats: SolveStats | None = None,
) -> DecisionTree | None:
    """Optimal tree with exactly k rules drawn from the table, or None.

    Every k-combination is solved independently on its slice of the pairwise
    ancestry matrix; combination winners are compared by score with ties going
    to the lexicographically smallest combination.
    """
    if k > len(rules):
        raise ValueError(f"cannot choose {k} of {len(rules)} rules")
    cons = constraints or SolveConstraints()
    matrix = ancestry_matrix(rules) if k > 0 else AncestryMatrix(())
    ctx = _Partitioner(rules, data)
    best = None
    best_score = None
    for combo in itertools.combinations(range(len(rules)), k):
        if cons.thinning is not None:
            res = _pick_best(
                _solve_rows_thinned(combo, ctx.all_rows, cons.max_depth, ctx, matrix, objective, cons, cons.thinning),
                objective,
            )
        else:
            res = _solve_rows(combo, ctx.all_rows, cons.max_depth, ctx, matrix, objective, cons, stats)
        if res is None:
            continue
        s = objective.score(res[1])
        if best is None or s < best_score:
            best, best_score = res, s
    return None if best is None else best[0]


def solve_bsp(segments: Sequence[SceneSegment]) -> DecisionTree:
    """Smallest partition tree for a scene of segments.

    Every fragment eventually serves as a cut: a region recurses until empty,
    each step consuming one fragment as the branch rule and distributing the
    rest (with fragmentation) to the two sides. Minimized on total node count.
    """
    if not segments:
        raise ValueError("scene has no segments")

    def rec(frags: tuple[SceneSegment, ...]) -> tuple[DecisionTree, CostValue]:
        if not frags:
            return DLeaf(()), TREE_SIZE.leaf_cost(())
        best = None
        best_score = None
        for pos, root, neg in splits_bsp(frags):
            u = rec(pos)
            v = rec(neg)
            cost = TREE_SIZE.combine(u[1], v[1], root)
            if best is None or cost.cost < best_score:
                best, best_score = (DNode(u[0], root, v[0]), cost), cost.cost
        return best

    return rec(tuple(segments))[0]


def bsp_tree_from_order(segments: Sequence[SceneSegment], order: Sequence[int]) -> DecisionTree:
    """Classical construction: cut in a fixed priority order of the originals.

    ``order`` ranks original payload ids; in each region the fragment whose
    original comes first is the cut. Used as the randomized baseline the
    exact solver is compared against.
    """
    rank = {payload: pos for pos, payload in enumerate(order)}

    def rec(frags: tuple[SceneSegment, ...]) -> DecisionTree:
        if not frags:
            return DLeaf(())
        root_pos = min(range(len(frags)), key=lambda i: (rank[frags[i].payload], i))
        root = frags[root_pos]
        rest = [s for i, s in enumerate(frags) if i != root_pos]
        pos, neg = split_segments(root, rest)
        return DNode(rec(pos), root, rec(neg))

    return rec(tuple(segments))


def solve_mcmp(dims: Sequence[MatrixDim]) -> DecisionTree:
    """Cheapest association order for a matrix chain (leaf-labeled tree)."""
    seq = tuple(dims)
    if not seq:
        raise ValueError("empty matrix chain")
    for a, b in zip(seq, seq[1:]):
        if a.cols != b.rows:
            raise ValueError(f"adjacent matrices do not conform: {a} x {b}")

    def rec(items: tuple[MatrixDim, ...]) -> tuple[DecisionTree, CostValue]:
        if len(items) == 1:
            return DLeaf(items[0]), CHAIN_COST.leaf_cost(items[0])
        best = None
        best_score = None
        for prefix, _, suffix in splits_mcmp(items):
            u = rec(prefix)
            v = rec(suffix)
            cost = CHAIN_COST.combine(u[1], v[1], None)
            if best is None or cost.cost < best_score:
                best, best_score = (DNode(u[0], None, v[0]), cost), cost.cost
        return best

    return rec(seq)[0]


def parenthesization(tree: DecisionTree) -> str:
    """Render a chain tree as an association string like ((A×B)×C)."""

    def label(i: int) -> str:
        return chr(ord("A") + i) if i < 26 else f"M{i}"

    def rec(node: DecisionTree, counter: list[int]) -> str:
        if isinstance(node, DLeaf):
            name = label(counter[0])
            counter[0] += 1
            return name
        return f"({rec(node.left, counter)}×{rec(node.right, counter)})"

    return rec(tree, [0])


def solve_kd(data: Dataset, max_depth: int, objective: Objective | None = None) -> DecisionTree:
    """Optimal balanced-split tree with depth-cycled dimensions.

    Every branch at depth d splits on dimension d mod D, so all nodes of one
    level share a dimension. Regions split while points remain and the depth
    budget allows; the branch payload is (pivot point, dimension). The default
    objective sums squared leaf sizes.
    """
    obj = objective or LEAF_BALANCE
    seq = tuple(data)
    if not seq:
        return DLeaf(())
    ndims = len(seq[0].point)

    def rec(items: Dataset, depth: int) -> tuple[DecisionTree, CostValue]:
        if not items or depth >= max_depth:
            return DLeaf(items), obj.leaf_cost(items)
        d = depth % ndims
        best = None
        best_score = None
        for left, pivot, right in splits_kd(depth, items):
            u = rec(left, depth + 1)
            v = rec(right, depth + 1)
            cost = obj.combine(u[1], v[1], (pivot.point, d))
            s = obj.score(cost)
            if best is None or s < best_score:
                best, best_score = (DNode(u[0], (pivot.point, d), v[0]), cost), s
        return best

    return rec(seq, 0)[0]
