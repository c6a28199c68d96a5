"""Linear SVM trained by deterministic subgradient descent on the hinge loss.

Objective: (l2 / 2) * ||w||^2 + (1/n) * sum_i max(0, 1 - s_i (x_i . w + b)),
with s in {-1, +1}. Updates follow the classic 1/(l2 * t) step schedule,
cycling through the samples in their canonical order for a fixed number of
epochs; the bias learns with the same step but is unregularized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SvmParams:
    weights: np.ndarray
    bias: float


def train_svm(X: np.ndarray, y: np.ndarray, l2: float, epochs: int) -> SvmParams:
    n, d = X.shape
    s = 2.0 * y - 1.0
    w = np.zeros(d)
    b = 0.0
    t = 0
    for _ in range(epochs):
        for i in range(n):
            t += 1
            eta = 1.0 / (l2 * t)
            if s[i] * (X[i] @ w + b) < 1.0:
                w = (1.0 - eta * l2) * w + eta * s[i] * X[i]
                b += eta * s[i]
            else:
                w = (1.0 - eta * l2) * w
    return SvmParams(weights=w, bias=b)


def svm_objective(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray,
                  l2: float) -> float:
    s = 2.0 * y - 1.0
    hinge = np.maximum(0.0, 1.0 - s * (X @ w + b))
    return float(l2 / 2.0 * (w @ w) + hinge.mean())


def score_svm(params: SvmParams, x: np.ndarray) -> float:
    """Margin squashed through a fixed logistic link."""
    z = float(params.weights @ x + params.bias)
    if z >= 0:
        return float(1.0 / (1.0 + np.exp(-z)))
    ez = np.exp(z)
    return float(ez / (1.0 + ez))
