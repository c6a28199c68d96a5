"""Four supervised learners over sparse term-frequency vectors.

All learners share one contract: train(spec, X, y) -> TrainedModel and
predict(model, x) -> Prediction, where a prediction's score is the
gang-class confidence in [0, 1] and the label is gang exactly when the
score exceeds 0.5 (a tie at 0.5 goes to nongang).

Training canonicalizes the sample order internally (sorting by label and
vector content) before anything stochastic or accumulative happens, so a
permutation of the training set can never change the trained parameters.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from ..corpus import GANG, NONGANG
from ..features import FeatureVector
from .naive_bayes import NaiveBayesParams, score_naive_bayes, train_naive_bayes
from .logistic import (LogisticParams, logistic_gradient, logistic_objective,
                       score_logistic, train_logistic)
from .svm import SvmParams, score_svm, svm_objective, train_svm
from .forest import (ForestParams, TreeNode, score_forest, train_forest)

NAIVE_BAYES = "naive_bayes"
LOGISTIC_REGRESSION = "logistic_regression"
RANDOM_FOREST = "random_forest"
SVM = "svm"
ALGORITHMS = (NAIVE_BAYES, LOGISTIC_REGRESSION, RANDOM_FOREST, SVM)

DEFAULT_HYPERPARAMS: dict[str, dict] = {
    NAIVE_BAYES: {"alpha": 1.0},
    LOGISTIC_REGRESSION: {"l2": 1.0, "tol": 1e-6, "max_iter": 5000},
    RANDOM_FOREST: {"n_trees": 100, "max_features": "sqrt", "bootstrap": True,
                    "min_samples_leaf": 1, "max_depth": None},
    SVM: {"l2": 1.0, "epochs": 50},
}

MODEL_FORMAT_VERSION = 1


class ModelError(ValueError):
    """Raised for invalid specs, inputs, or mismatched vectors."""


@dataclass(frozen=True)
class ModelSpec:
    algorithm: str
    hyperparams: tuple[tuple[str, object], ...] = ()
    rng_seed: int = 0

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ModelError(f"unknown algorithm {self.algorithm!r}")
        if isinstance(self.hyperparams, Mapping):
            object.__setattr__(self, "hyperparams",
                               tuple(sorted(self.hyperparams.items())))
        known = set(DEFAULT_HYPERPARAMS[self.algorithm])
        unknown = {k for k, _ in self.hyperparams} - known
        if unknown:
            raise ModelError(
                f"unknown hyperparams for {self.algorithm}: {sorted(unknown)}")

    def resolved_hyperparams(self) -> dict:
        merged = dict(DEFAULT_HYPERPARAMS[self.algorithm])
        merged.update(dict(self.hyperparams))
        return merged

    def to_dict(self) -> dict:
        return {"algorithm": self.algorithm,
                "hyperparams": dict(self.hyperparams),
                "rng_seed": self.rng_seed}

    @classmethod
    def from_dict(cls, payload: dict) -> "ModelSpec":
        return cls(algorithm=payload["algorithm"],
                   hyperparams=tuple(sorted(payload.get("hyperparams", {}).items())),
                   rng_seed=payload.get("rng_seed", 0))


@dataclass(frozen=True)
class Prediction:
    label: str
    score: float


@dataclass(frozen=True)
class TrainedModel:
    spec: ModelSpec
    fingerprint: str
    dim: int
    params: object
    class_labels: tuple[str, str] = (NONGANG, GANG)


def _canonical_order(X: Sequence[FeatureVector], y: Sequence[str]) -> list[int]:
    keys = [(y[i], X[i].counts, X[i].mask) for i in range(len(y))]
    return sorted(range(len(y)), key=keys.__getitem__)


def _validate_training_input(X: Sequence[FeatureVector], y: Sequence[str]):
    if len(X) != len(y):
        raise ModelError("dimension mismatch: |X| != |y|")
    if len(X) < 2:
        raise ModelError("need at least 2 training samples")
    labels = set(y)
    if not labels <= {GANG, NONGANG}:
        raise ModelError(f"labels must be gang/nongang, got {sorted(labels)}")
    if len(labels) < 2:
        raise ModelError("single-class input")
    fingerprints = {v.fingerprint for v in X}
    if len(fingerprints) != 1:
        raise ModelError("fingerprint mismatch across training vectors")
    dims = {v.dim for v in X}
    if len(dims) != 1:
        raise ModelError("dimension mismatch across training vectors")


def _densify(X: Sequence[FeatureVector]) -> np.ndarray:
    return np.stack([v.dense() for v in X])


def train(spec: ModelSpec, X: Sequence[FeatureVector], y: Sequence[str]) -> TrainedModel:
    """Train a model as configured by the ModelSpec; deterministic given
    spec.rng_seed."""
    _validate_training_input(X, y)
    order = _canonical_order(X, y)
    Xd = _densify([X[i] for i in order])
    yd = np.array([1.0 if y[i] == GANG else 0.0 for i in order])
    hp = spec.resolved_hyperparams()

    if spec.algorithm == NAIVE_BAYES:
        params = train_naive_bayes(Xd, yd, alpha=float(hp["alpha"]))
    elif spec.algorithm == LOGISTIC_REGRESSION:
        params = train_logistic(Xd, yd, l2=float(hp["l2"]), tol=float(hp["tol"]),
                                max_iter=int(hp["max_iter"]))
    elif spec.algorithm == RANDOM_FOREST:
        params = train_forest(Xd, yd, n_trees=int(hp["n_trees"]),
                              max_features=hp["max_features"],
                              bootstrap=bool(hp["bootstrap"]),
                              min_samples_leaf=int(hp["min_samples_leaf"]),
                              max_depth=hp["max_depth"],
                              rng_seed=spec.rng_seed)
    else:
        params = train_svm(Xd, yd, l2=float(hp["l2"]), epochs=int(hp["epochs"]))

    return TrainedModel(spec=spec, fingerprint=X[0].fingerprint,
                        dim=X[0].dim, params=params)


def predict(model: TrainedModel, x: FeatureVector) -> Prediction:
    if x.fingerprint != model.fingerprint:
        raise ModelError("fingerprint mismatch between model and vector")
    xd = x.dense()
    params = model.params
    if isinstance(params, NaiveBayesParams):
        score = score_naive_bayes(params, xd)
    elif isinstance(params, LogisticParams):
        score = score_logistic(params, xd)
    elif isinstance(params, ForestParams):
        score = score_forest(params, xd)
    elif isinstance(params, SvmParams):
        score = score_svm(params, xd)
    else:  # pragma: no cover
        raise ModelError(f"unknown parameter type {type(params).__name__}")
    label = GANG if score > 0.5 else NONGANG
    return Prediction(label=label, score=float(score))


# --- parameter (de)serialization -------------------------------------------

def _tree_to_dict(node: TreeNode) -> dict:
    if node.is_leaf:
        return {"counts": list(node.counts)}
    return {"column": node.column, "threshold": node.threshold,
            "left": _tree_to_dict(node.left), "right": _tree_to_dict(node.right)}


def _tree_from_dict(payload: dict) -> TreeNode:
    if "counts" in payload:
        n0, n1 = payload["counts"]
        return TreeNode(counts=(int(n0), int(n1)))
    return TreeNode(column=int(payload["column"]),
                    threshold=float(payload["threshold"]),
                    left=_tree_from_dict(payload["left"]),
                    right=_tree_from_dict(payload["right"]))


def params_to_dict(params: object) -> dict:
    if isinstance(params, NaiveBayesParams):
        return {"kind": "naive_bayes",
                "class_prior": list(params.class_prior),
                "feature_prob": params.feature_prob.tolist()}
    if isinstance(params, LogisticParams):
        return {"kind": "logistic",
                "weights": params.weights.tolist(), "bias": params.bias}
    if isinstance(params, SvmParams):
        return {"kind": "svm",
                "weights": params.weights.tolist(), "bias": params.bias}
    if isinstance(params, ForestParams):
        return {"kind": "forest",
                "trees": [_tree_to_dict(t) for t in params.trees]}
    raise ModelError(f"unknown parameter type {type(params).__name__}")


def params_from_dict(payload: dict) -> object:
    kind = payload.get("kind")
    if kind == "naive_bayes":
        prior = payload["class_prior"]
        return NaiveBayesParams(class_prior=(prior[0], prior[1]),
                                feature_prob=np.array(payload["feature_prob"]))
    if kind == "logistic":
        return LogisticParams(weights=np.array(payload["weights"]),
                              bias=float(payload["bias"]))
    if kind == "svm":
        return SvmParams(weights=np.array(payload["weights"]),
                         bias=float(payload["bias"]))
    if kind == "forest":
        return ForestParams(trees=tuple(_tree_from_dict(t)
                                        for t in payload["trees"]))
    raise ModelError(f"unknown parameter kind {kind!r}")


def model_to_dict(model: TrainedModel) -> dict:
    return {
        "format_version": MODEL_FORMAT_VERSION,
        "spec": model.spec.to_dict(),
        "fingerprint": model.fingerprint,
        "dim": model.dim,
        "class_labels": list(model.class_labels),
        "params": params_to_dict(model.params),
    }


def model_from_dict(payload: dict) -> TrainedModel:
    version = payload.get("format_version")
    if version != MODEL_FORMAT_VERSION:
        raise ModelError(f"unsupported model format version {version!r}")
    labels = payload.get("class_labels", [NONGANG, GANG])
    return TrainedModel(spec=ModelSpec.from_dict(payload["spec"]),
                        fingerprint=payload["fingerprint"],
                        dim=int(payload["dim"]),
                        params=params_from_dict(payload["params"]),
                        class_labels=(labels[0], labels[1]))
