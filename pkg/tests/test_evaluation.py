"""Stratified folding, metric formulas, and cross-validation behavior."""

import numpy as np
import pytest
from hypothesis import given, strategies as st

from gangscope.corpus import GANG, NONGANG
from gangscope.evaluation import (ConfusionCounts, EvalError, compute_metrics,
                                  cross_validate, render_report_table,
                                  stratified_kfold)
from gangscope.models import ModelSpec, Prediction

from tests.oracles import metrics_oracle


def fake_labels(n_gang, n_nongang):
    return ([(f"g{i:05d}", GANG) for i in range(n_gang)]
            + [(f"n{i:05d}", NONGANG) for i in range(n_nongang)])


def test_stratified_paper_scale_counts():
    folds = stratified_kfold(fake_labels(400, 2865), k=10, rng_seed=3)
    fold_of = folds.fold_of()
    for fold in range(10):
        ids = [pid for pid, f in fold_of.items() if f == fold]
        gang = sum(1 for pid in ids if pid.startswith("g"))
        nongang = len(ids) - gang
        assert gang == 40
        assert nongang in (286, 287)


def test_stratified_perfect_split():
    folds = stratified_kfold(fake_labels(2, 2), k=2, rng_seed=0)
    for fold in (0, 1):
        ids = folds.test_ids(fold)
        assert sum(1 for pid in ids if pid.startswith("g")) == 1
        assert sum(1 for pid in ids if pid.startswith("n")) == 1


def test_stratified_small_class_rejected():
    with pytest.raises(EvalError, match="fewer than k"):
        stratified_kfold(fake_labels(5, 100), k=10)


def test_folds_partition_input():
    labels = fake_labels(13, 29)
    folds = stratified_kfold(labels, k=4, rng_seed=1)
    seen = []
    for fold in range(4):
        seen.extend(folds.test_ids(fold))
    assert sorted(seen) == sorted(pid for pid, _ in labels)
    for fold in range(4):
        assert not (set(folds.test_ids(fold)) & set(folds.train_ids(fold)))


def test_stratified_deterministic_per_seed():
    a = stratified_kfold(fake_labels(20, 30), k=5, rng_seed=9)
    b = stratified_kfold(fake_labels(20, 30), k=5, rng_seed=9)
    c = stratified_kfold(fake_labels(20, 30), k=5, rng_seed=10)
    assert a == b
    assert a != c


def test_metrics_derived_example():
    # tp=4, fp=1, fn=2 -> P=0.8, R=0.6667, F1=0.7273
    preds = [GANG] * 5 + [NONGANG] * 2
    truth = [GANG] * 4 + [NONGANG] + [GANG] * 2
    result = compute_metrics(preds, truth)
    assert result.confusion == ConfusionCounts(tp=4, fp=1, tn=0, fn=2)
    assert result.gang.precision == pytest.approx(0.8, abs=1e-12)
    assert result.gang.recall == pytest.approx(2 / 3, abs=1e-12)
    assert result.gang.f1 == pytest.approx(8 / 11, abs=1e-12)


def test_metrics_all_correct():
    preds = [GANG, NONGANG, GANG]
    result = compute_metrics(preds, preds)
    for side in (result.gang, result.nongang):
        assert side.precision == side.recall == side.f1 == 1.0


def test_metrics_zero_over_zero_is_zero():
    result = compute_metrics([NONGANG, NONGANG], [NONGANG, NONGANG])
    assert result.gang.precision == 0.0
    assert result.gang.recall == 0.0
    assert result.gang.f1 == 0.0
    assert result.nongang.precision == 1.0


def test_metrics_accept_prediction_objects():
    preds = [Prediction(label=GANG, score=0.9), Prediction(label=NONGANG, score=0.1)]
    result = compute_metrics(preds, [GANG, NONGANG])
    assert result.confusion.tp == 1
    assert result.confusion.tn == 1


def test_metrics_length_mismatch():
    with pytest.raises(EvalError, match="length mismatch"):
        compute_metrics([GANG], [GANG, NONGANG])


@given(st.lists(st.tuples(st.sampled_from([GANG, NONGANG]),
                          st.sampled_from([GANG, NONGANG])),
                min_size=1, max_size=40),
       st.randoms())
def test_metrics_permutation_invariant(pairs, rnd):
    preds = [p for p, _ in pairs]
    truth = [t for _, t in pairs]
    base = compute_metrics(preds, truth)
    order = list(range(len(pairs)))
    rnd.shuffle(order)
    shuffled = compute_metrics([preds[i] for i in order],
                               [truth[i] for i in order])
    assert base == shuffled


def test_metrics_match_oracle_on_random_confusions():
    rng = np.random.default_rng(12)
    for _ in range(25):
        tp, fp, tn, fn = (int(v) for v in rng.integers(0, 12, size=4))
        preds = [GANG] * (tp + fp) + [NONGANG] * (fn + tn)
        truth = ([GANG] * tp + [NONGANG] * fp + [GANG] * fn + [NONGANG] * tn)
        result = compute_metrics(preds, truth)
        want = metrics_oracle(tp, fp, tn, fn)
        assert (result.gang.precision, result.gang.recall, result.gang.f1) \
            == want["gang"]
        assert (result.nongang.precision, result.nongang.recall,
                result.nongang.f1) == want["nongang"]


# --- cross validation over the synthetic corpus -------------------------------

def test_cross_validate_separable_corpus(synth_complete):
    report = cross_validate(
        synth_complete.corpus,
        ModelSpec(algorithm="naive_bayes"),
        blocks=("T",), k=4, rng_seed=2,
        clients=synth_complete.clients)
    assert report.gang_f1() >= 0.95
    assert report.evaluated == {"gang": 12, "nongang": 28}


def test_cross_validate_no_leakage_fingerprints(synth_complete):
    report = cross_validate(
        synth_complete.corpus, ModelSpec(algorithm="naive_bayes"),
        blocks=("T", "P"), k=3, rng_seed=0, clients=synth_complete.clients)
    fingerprints = [row["vocabulary_fingerprint"] for row in report.folds]
    assert len(set(fingerprints)) == len(fingerprints)  # one vocab per fold


def test_cross_validate_deterministic(synth_complete):
    kwargs = dict(blocks=("T", "E"), k=3, rng_seed=5,
                  clients=synth_complete.clients)
    spec = ModelSpec(algorithm="random_forest", rng_seed=5,
                     hyperparams=(("n_trees", 10),))
    a = cross_validate(synth_complete.corpus, spec, **kwargs)
    b = cross_validate(synth_complete.corpus, spec, **kwargs)
    assert a.to_json() == b.to_json()


def test_cross_validate_model2_counts_complete_subset(synth_holes):
    from gangscope.features import FULL_MASK, block_availability
    complete = sum(
        1 for record in synth_holes.corpus.labeled()
        if block_availability(record, synth_holes.clients) == FULL_MASK)
    report = cross_validate(
        synth_holes.corpus, ModelSpec(algorithm="naive_bayes"),
        mode="model2", k=2, rng_seed=1, clients=synth_holes.clients)
    assert report.evaluated["gang"] + report.evaluated["nongang"] == complete


def test_cross_validate_single_block_filters_availability(synth_holes):
    from gangscope.features import block_availability, block_bit
    available = sum(
        1 for record in synth_holes.corpus.labeled()
        if block_availability(record, synth_holes.clients) & block_bit("Y"))
    report = cross_validate(
        synth_holes.corpus, ModelSpec(algorithm="naive_bayes"),
        blocks=("Y",), k=2, rng_seed=1, clients=synth_holes.clients)
    assert report.evaluated["gang"] + report.evaluated["nongang"] == available


def test_averaged_is_mean_of_folds_not_pooled(synth_complete):
    report = cross_validate(
        synth_complete.corpus, ModelSpec(algorithm="naive_bayes"),
        blocks=("P",), k=3, rng_seed=7, clients=synth_complete.clients)
    mean_f1 = sum(row["gang"]["f1"] for row in report.folds) / len(report.folds)
    assert report.averaged["gang"]["f1"] == pytest.approx(mean_f1, abs=1e-15)
    assert "confusion" in report.pooled


def test_render_report_table(synth_complete):
    report = cross_validate(
        synth_complete.corpus, ModelSpec(algorithm="naive_bayes"),
        blocks=("T",), k=2, rng_seed=0, clients=synth_complete.clients)
    table = render_report_table([("T", report)])
    assert table.startswith("features\t")
    assert "naive_bayes" in table
    assert "{12 : 28}" in table
