"""Random forest of Gini-impurity decision trees over count features.

Split thresholds are midpoints between consecutive distinct observed values.
The split chosen minimizes

    weighted = (n_l * (1 - (l1^2 + l0^2) / n_l^2)
                + n_r * (1 - (r1^2 + r0^2) / n_r^2)) / n

with deterministic tie-breaks: lowest weighted impurity, then lowest feature
column, then lowest threshold. A node becomes a leaf when it is pure or no
candidate feature admits a valid split. Trees vote with their leaf majority
(leaf ties vote nongang); the forest score is the gang-vote fraction.

Per-tree randomness (bootstrap rows, per-split feature subsets) comes from
a generator seeded by (rng_seed, tree_index), so growing order or
parallelism cannot change the model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class TreeNode:
    column: int = -1
    threshold: float = 0.0
    left: "TreeNode | None" = None
    right: "TreeNode | None" = None
    counts: tuple[int, int] | None = None  # leaf: (nongang, gang)

    @property
    def is_leaf(self) -> bool:
        return self.counts is not None


@dataclass(frozen=True)
class ForestParams:
    trees: tuple[TreeNode, ...]


def _resolve_max_features(max_features, d: int) -> int:
    if max_features is None or max_features == "all":
        return d
    if max_features == "sqrt":
        return min(d, math.isqrt(d - 1) + 1 if d > 1 else 1)
    m = int(max_features)
    if not 1 <= m <= d:
        raise ValueError(f"max_features {m} outside [1, {d}]")
    return m


def _find_split(X: np.ndarray, y: np.ndarray, rows: np.ndarray,
                cols: np.ndarray) -> tuple[int, float] | None:
    """Best (column, threshold) over the candidate columns, or None."""
    sub = X[np.ix_(rows, cols)]
    ys = y[rows].astype(np.float64)
    n = len(rows)

    order = np.argsort(sub, axis=0, kind="stable")
    svals = np.take_along_axis(sub, order, axis=0)
    sy = ys[order]

    left_pos = np.cumsum(sy, axis=0)[:-1]          # gang count left of split
    left_n = np.arange(1, n, dtype=np.float64)[:, None]
    total_pos = ys.sum()
    right_pos = total_pos - left_pos
    right_n = n - left_n

    l0 = left_n - left_pos
    r0 = right_n - right_pos
    gini_l = 1.0 - (left_pos * left_pos + l0 * l0) / (left_n * left_n)
    gini_r = 1.0 - (right_pos * right_pos + r0 * r0) / (right_n * right_n)
    weighted = (left_n * gini_l + right_n * gini_r) / n

    valid = svals[:-1] < svals[1:]
    weighted = np.where(valid, weighted, np.inf)

    # First-minimum argmins implement the tie-break: positions scan
    # thresholds ascending, and cols arrive sorted by global column id.
    per_col_pos = np.argmin(weighted, axis=0)
    per_col_val = weighted[per_col_pos, np.arange(len(cols))]
    best_col = int(np.argmin(per_col_val))
    if not np.isfinite(per_col_val[best_col]):
        return None
    pos = int(per_col_pos[best_col])
    threshold = (svals[pos, best_col] + svals[pos + 1, best_col]) / 2.0
    return int(cols[best_col]), float(threshold)


def _build_tree(X: np.ndarray, y: np.ndarray, rows: np.ndarray,
                rng: np.random.Generator, max_features: int,
                min_samples_leaf: int, max_depth: int | None,
                depth: int = 0) -> TreeNode:
    labels = y[rows]
    pos = int(labels.sum())
    counts = (len(rows) - pos, pos)
    if pos == 0 or pos == len(rows):
        return TreeNode(counts=counts)
    if max_depth is not None and depth >= max_depth:
        return TreeNode(counts=counts)
    if len(rows) < 2 * min_samples_leaf:
        return TreeNode(counts=counts)

    d = X.shape[1]
    if max_features < d:
        cols = np.sort(rng.choice(d, size=max_features, replace=False))
    else:
        cols = np.arange(d)
    split = _find_split(X, y, rows, cols)
    if split is None:
        return TreeNode(counts=counts)
    column, threshold = split
    goes_left = X[rows, column] < threshold
    left_rows = rows[goes_left]
    right_rows = rows[~goes_left]
    if min(len(left_rows), len(right_rows)) < min_samples_leaf:
        return TreeNode(counts=counts)
    left = _build_tree(X, y, left_rows, rng, max_features,
                       min_samples_leaf, max_depth, depth + 1)
    right = _build_tree(X, y, right_rows, rng, max_features,
                        min_samples_leaf, max_depth, depth + 1)
    return TreeNode(column=column, threshold=threshold, left=left, right=right)


def train_forest(X: np.ndarray, y: np.ndarray, n_trees: int, max_features,
                 bootstrap: bool, min_samples_leaf: int,
                 max_depth: int | None, rng_seed: int) -> ForestParams:
    n, d = X.shape
    m = _resolve_max_features(max_features, d)
    trees = []
    for t in range(n_trees):
        rng = np.random.default_rng([rng_seed, t])
        if bootstrap:
            rows = rng.integers(0, n, size=n)
        else:
            rows = np.arange(n)
        trees.append(_build_tree(X, y, rows, rng, m, min_samples_leaf, max_depth))
    return ForestParams(trees=tuple(trees))


def _tree_vote(node: TreeNode, x: np.ndarray) -> int:
    while not node.is_leaf:
        node = node.left if x[node.column] < node.threshold else node.right
    n0, n1 = node.counts
    return 1 if n1 > n0 else 0


def score_forest(params: ForestParams, x: np.ndarray) -> float:
    votes = sum(_tree_vote(tree, x) for tree in params.trees)
    return votes / len(params.trees)
