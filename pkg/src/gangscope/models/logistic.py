"""L2-regularized logistic regression trained by full-batch gradient descent.

Objective (y encoded 0/1, m_i the signed margin):

    J(w, b) = (1/n) * sum_i log(1 + exp(-s_i * (x_i . w + b)))
              + (l2 / (2n)) * ||w||^2,   s_i = 2 y_i - 1

The bias is unregularized. Descent uses Armijo backtracking from unit step
and stops when the gradient's max-norm drops below tol.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class LogisticParams:
    weights: np.ndarray
    bias: float


def _sigmoid(z: np.ndarray) -> np.ndarray:
    out = np.empty_like(z)
    pos = z >= 0
    out[pos] = 1.0 / (1.0 + np.exp(-z[pos]))
    ez = np.exp(z[~pos])
    out[~pos] = ez / (1.0 + ez)
    return out


def _softplus(z: np.ndarray) -> np.ndarray:
    # log(1 + e^z), stable for large |z|.
    return np.maximum(z, 0.0) + np.log1p(np.exp(-np.abs(z)))


def logistic_objective(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray,
                       l2: float) -> float:
    n = len(y)
    margins = (X @ w + b) * (2.0 * y - 1.0)
    return float(_softplus(-margins).mean() + l2 / (2.0 * n) * (w @ w))


def logistic_gradient(w: np.ndarray, b: float, X: np.ndarray, y: np.ndarray,
                      l2: float) -> tuple[np.ndarray, float]:
    n = len(y)
    residual = _sigmoid(X @ w + b) - y
    grad_w = X.T @ residual / n + (l2 / n) * w
    grad_b = float(residual.mean())
    return grad_w, grad_b


def train_logistic(X: np.ndarray, y: np.ndarray, l2: float, tol: float,
                   max_iter: int) -> LogisticParams:
    n, d = X.shape
    w = np.zeros(d)
    b = 0.0
    value = logistic_objective(w, b, X, y, l2)
    for _ in range(max_iter):
        grad_w, grad_b = logistic_gradient(w, b, X, y, l2)
        grad_norm = max(float(np.max(np.abs(grad_w))) if d else 0.0, abs(grad_b))
        if grad_norm <= tol:
            break
        step = 1.0
        sq = float(grad_w @ grad_w) + grad_b * grad_b
        improved = False
        while step > 1e-16:
            cand_w = w - step * grad_w
            cand_b = b - step * grad_b
            cand_value = logistic_objective(cand_w, cand_b, X, y, l2)
            if cand_value <= value - 1e-4 * step * sq:
                improved = True
                break
            step *= 0.5
        if not improved:
            break
        w, b, value = cand_w, cand_b, cand_value
    return LogisticParams(weights=w, bias=b)


def score_logistic(params: LogisticParams, x: np.ndarray) -> float:
    z = float(params.weights @ x + params.bias)
    return float(_sigmoid(np.array([z]))[0])
