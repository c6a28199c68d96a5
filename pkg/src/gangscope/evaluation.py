"""Stratified k-fold cross-validation and per-class metric computation.

Gang is the positive class for the gang-side metrics; the non-gang side is
computed symmetrically with non-gang as positive. Any 0/0 ratio is defined
as 0. Fold-averaged metrics are the arithmetic mean of the per-fold metrics
(the headline convention here); metrics of the summed confusion counts are
reported alongside as "pooled" because the two differ in general.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .clients import ClientBundle
from .corpus import CorpusSnapshot, GANG
from .features import (BLOCKS, assemble_vector, block_availability, block_bit,
                       blocks_mask, build_vocabulary, canonical_blocks,
                       extract_profile_terms, DEFAULT_COMMENT_CAP)
from .models import ModelSpec, Prediction, predict, train
from .textprep import Lexicons
from .util import canonical_json

logger = logging.getLogger(__name__)


class EvalError(ValueError):
    pass


@dataclass(frozen=True)
class FoldAssignment:
    k: int
    rng_seed: int
    assignment: tuple[tuple[str, int], ...]

    def fold_of(self) -> dict[str, int]:
        return dict(self.assignment)

    def test_ids(self, fold: int) -> list[str]:
        return sorted(pid for pid, f in self.assignment if f == fold)

    def train_ids(self, fold: int) -> list[str]:
        return sorted(pid for pid, f in self.assignment if f != fold)


def stratified_kfold(labels: Sequence[tuple[str, str]], k: int,
                     rng_seed: int = 0) -> FoldAssignment:
    """Within each class, shuffle ids (seeded) and deal them round-robin.

    Per-fold class counts then differ by at most one across folds.
    """
    if k < 2:
        raise EvalError("k must be at least 2")
    by_class: dict[str, list[str]] = {}
    for pid, label in labels:
        by_class.setdefault(label, []).append(pid)

    assignment: list[tuple[str, int]] = []
    for class_index, class_label in enumerate(sorted(by_class)):
        ids = sorted(by_class[class_label])
        if len(ids) < k:
            raise EvalError(
                f"class {class_label!r} has {len(ids)} members, fewer than k={k}")
        rng = np.random.default_rng([rng_seed, class_index])
        order = rng.permutation(len(ids))
        for position, idx in enumerate(order):
            assignment.append((ids[idx], position % k))
    assignment.sort()
    return FoldAssignment(k=k, rng_seed=rng_seed, assignment=tuple(assignment))


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    tn: int = 0
    fn: int = 0

    def total(self) -> int:
        return self.tp + self.fp + self.tn + self.fn

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(self.tp + other.tp, self.fp + other.fp,
                               self.tn + other.tn, self.fn + other.fn)

    def to_dict(self) -> dict:
        return {"tp": self.tp, "fp": self.fp, "tn": self.tn, "fn": self.fn}


@dataclass(frozen=True)
class ClassMetrics:
    precision: float
    recall: float
    f1: float

    def to_dict(self) -> dict:
        return {"precision": self.precision, "recall": self.recall, "f1": self.f1}


@dataclass(frozen=True)
class MetricsResult:
    confusion: ConfusionCounts
    gang: ClassMetrics
    nongang: ClassMetrics


def _ratio(num: int | float, den: int | float) -> float:
    return num / den if den else 0.0


def _prf(tp: int, fp: int, fn: int) -> ClassMetrics:
    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    f1 = _ratio(2 * precision * recall, precision + recall)
    return ClassMetrics(precision=precision, recall=recall, f1=f1)


def _pred_label(pred) -> str:
    return pred.label if isinstance(pred, Prediction) else pred


def compute_metrics(preds: Sequence, truth: Sequence[str]) -> MetricsResult:
    if len(preds) != len(truth):
        raise EvalError("length mismatch between predictions and truth")
    tp = fp = tn = fn = 0
    for pred, actual in zip(preds, truth):
        predicted = _pred_label(pred)
        if predicted == GANG:
            if actual == GANG:
                tp += 1
            else:
                fp += 1
        else:
            if actual == GANG:
                fn += 1
            else:
                tn += 1
    confusion = ConfusionCounts(tp=tp, fp=fp, tn=tn, fn=fn)
    return MetricsResult(confusion=confusion,
                         gang=_prf(tp, fp, fn),
                         nongang=_prf(tn, fn, fp))


def _mean_metrics(folds: Sequence[ClassMetrics]) -> ClassMetrics:
    return ClassMetrics(
        precision=sum(m.precision for m in folds) / len(folds),
        recall=sum(m.recall for m in folds) / len(folds),
        f1=sum(m.f1 for m in folds) / len(folds))


@dataclass(frozen=True)
class EvalReport:
    config: dict
    evaluated: dict
    folds: tuple[dict, ...]
    averaged: dict
    pooled: dict

    def to_dict(self) -> dict:
        return {"config": self.config, "evaluated": self.evaluated,
                "folds": list(self.folds), "averaged": self.averaged,
                "pooled": self.pooled}

    def to_json(self) -> str:
        return canonical_json(self.to_dict())

    def gang_f1(self) -> float:
        return self.averaged["gang"]["f1"]


def eligible_profiles(corpus: CorpusSnapshot, blocks: Sequence[str], mode: str,
                      masks: Mapping[str, int]) -> list[str]:
    """Profiles a CV run may use, given the availability filtering rules.

    Single-block runs keep only profiles where that block is available;
    model2 keeps only profiles with every chosen block available.
    """
    chosen = canonical_blocks(blocks)
    required = 0
    if len(chosen) == 1:
        required |= block_bit(chosen[0])
    if mode == "model2":
        required |= blocks_mask(chosen)
    out = []
    for record in corpus.labeled():
        mask = masks[record.profile_id]
        if mask & required == required:
            out.append(record.profile_id)
    return sorted(out)


def cross_validate(corpus: CorpusSnapshot, spec: ModelSpec,
                   blocks: Sequence[str] = BLOCKS, mode: str = "model1",
                   k: int = 10, min_df=None, rng_seed: int = 0,
                   clients: ClientBundle | None = None,
                   lexicons: Lexicons | None = None,
                   comment_cap: int = DEFAULT_COMMENT_CAP) -> EvalReport:
    """Per fold: build the vocabulary on the training ids only, train, score
    the held-out fold, and report per-fold plus averaged per-class metrics.
    """
    chosen = canonical_blocks(blocks)
    labeled = corpus.labeled()
    terms_cache = {}
    masks = {}
    for record in labeled:
        terms_cache[record.profile_id] = extract_profile_terms(
            record, clients, lexicons, comment_cap)
        masks[record.profile_id] = block_availability(record, clients, lexicons)

    ids = eligible_profiles(corpus, chosen, mode, masks)
    label_of = {pid: corpus[pid].label for pid in ids}
    folds = stratified_kfold([(pid, label_of[pid]) for pid in ids], k, rng_seed)

    fold_rows = []
    gang_folds, nongang_folds = [], []
    total_confusion = ConfusionCounts()
    for fold in range(k):
        train_ids = folds.train_ids(fold)
        test_ids = folds.test_ids(fold)
        train_records = [corpus[pid] for pid in train_ids]
        vocab = build_vocabulary(train_records, chosen, min_df,
                                 precomputed_terms=terms_cache)

        def vector_of(pid: str):
            return assemble_vector(
                corpus[pid], vocab, mode,
                precomputed=(terms_cache[pid], masks[pid]))

        X_train, y_train = [], []
        for pid in train_ids:
            vector = vector_of(pid)
            if vector is not None:
                X_train.append(vector)
                y_train.append(label_of[pid])
        model = train(spec, X_train, y_train)

        preds, y_test = [], []
        for pid in test_ids:
            vector = vector_of(pid)
            if vector is not None:
                preds.append(predict(model, vector))
                y_test.append(label_of[pid])
        result = compute_metrics(preds, y_test)

        gang_folds.append(result.gang)
        nongang_folds.append(result.nongang)
        total_confusion = total_confusion + result.confusion
        fold_rows.append({
            "fold": fold,
            "confusion": result.confusion.to_dict(),
            "gang": result.gang.to_dict(),
            "nongang": result.nongang.to_dict(),
            "vocabulary_fingerprint": vocab.fingerprint,
        })

    pooled_gang = _prf(total_confusion.tp, total_confusion.fp, total_confusion.fn)
    pooled_nongang = _prf(total_confusion.tn, total_confusion.fn, total_confusion.fp)

    n_gang = sum(1 for pid in ids if label_of[pid] == GANG)
    config = {
        "blocks": list(chosen),
        "mode": mode,
        "k": k,
        "min_df": _echo_min_df(chosen, min_df),
        "rng_seed": rng_seed,
        "spec": spec.to_dict(),
        "stratified": True,
        "averaging": "mean_of_folds",
    }
    return EvalReport(
        config=config,
        evaluated={"gang": n_gang, "nongang": len(ids) - n_gang},
        folds=tuple(fold_rows),
        averaged={"gang": _mean_metrics(gang_folds).to_dict(),
                  "nongang": _mean_metrics(nongang_folds).to_dict()},
        pooled={"confusion": total_confusion.to_dict(),
                "gang": pooled_gang.to_dict(),
                "nongang": pooled_nongang.to_dict()})


def _echo_min_df(blocks: Sequence[str], min_df) -> dict:
    from .features import _normalize_min_df
    resolved = _normalize_min_df(min_df)
    return {b: resolved[b] for b in blocks}


def render_report_table(reports: Sequence[tuple[str, EvalReport]]) -> str:
    """Tab-separated comparison table: one row per (feature set, algorithm)."""
    lines = ["features\tprofiles {gang : nongang}\tclassifier"
             "\tgang_precision\tgang_recall\tgang_f1"
             "\tnongang_precision\tnongang_recall\tnongang_f1"]
    for name, report in reports:
        counts = report.evaluated
        gang = report.averaged["gang"]
        nongang = report.averaged["nongang"]
        lines.append(
            f"{name}\t{counts['gang'] + counts['nongang']} "
            f"{{{counts['gang']} : {counts['nongang']}}}"
            f"\t{report.config['spec']['algorithm']}"
            f"\t{gang['precision']:.4f}\t{gang['recall']:.4f}\t{gang['f1']:.4f}"
            f"\t{nongang['precision']:.4f}\t{nongang['recall']:.4f}"
            f"\t{nongang['f1']:.4f}")
    return "\n".join(lines) + "\n"
