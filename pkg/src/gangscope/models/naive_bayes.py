"""Multinomial naive Bayes over term-frequency vectors."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class NaiveBayesParams:
    """Class priors and per-class term probabilities (rows: nongang, gang)."""
    class_prior: tuple[float, float]
    feature_prob: np.ndarray


def train_naive_bayes(X: np.ndarray, y: np.ndarray, alpha: float) -> NaiveBayesParams:
    n, d = X.shape
    priors = []
    probs = np.zeros((2, d), dtype=np.float64)
    for c in (0, 1):
        rows = X[y == c]
        priors.append(len(rows) / n)
        term_counts = rows.sum(axis=0)
        total = term_counts.sum() + alpha * d
        if total == 0:
            # No terms in this class and no smoothing: fall back to uniform.
            probs[c] = np.full(d, 1.0 / d)
        else:
            probs[c] = (term_counts + alpha) / total
    return NaiveBayesParams(class_prior=(priors[0], priors[1]), feature_prob=probs)


def score_naive_bayes(params: NaiveBayesParams, x: np.ndarray) -> float:
    """Posterior probability of the gang class."""
    nonzero = x > 0
    log_post = np.zeros(2)
    with np.errstate(divide="ignore"):
        log_prob = np.log(params.feature_prob[:, nonzero])
    for c in (0, 1):
        prior = params.class_prior[c]
        if prior == 0.0:
            log_post[c] = -np.inf
            continue
        # x[nonzero] is strictly positive, so a zero-probability term sends
        # the whole class score to -inf without producing 0 * inf.
        log_post[c] = np.log(prior) + float(log_prob[c] @ x[nonzero])
    if np.all(np.isneginf(log_post)):
        # Every class rules the document out; fall back to the priors.
        total = params.class_prior[0] + params.class_prior[1]
        return params.class_prior[1] / total if total else 0.5
    top = log_post.max()
    weights = np.exp(log_post - top)
    return float(weights[1] / weights.sum())
