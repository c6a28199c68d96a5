"""Corpus-level training, model persistence, and batch scoring.

A model file bundles the trained parameters with the vocabulary that
defines its columns, so scoring can rebuild identical vectors later; loads
reject unknown format versions and any vocabulary/model fingerprint
disagreement.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

from .clients import ClientBundle
from .corpus import CorpusSnapshot, UNLABELED
from .evaluation import eligible_profiles
from .features import (DEFAULT_COMMENT_CAP, Vocabulary, assemble_vector,
                       block_availability, build_vocabulary, canonical_blocks,
                       extract_profile_terms, BLOCKS, MODEL1)
from .models import (ModelError, ModelSpec, Prediction, TrainedModel,
                     model_from_dict, model_to_dict, predict, train)
from .textprep import Lexicons
from .util import canonical_json

logger = logging.getLogger(__name__)

BUNDLE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class ModelBundle:
    vocab: Vocabulary
    model: TrainedModel
    mode: str


def train_on_corpus(corpus: CorpusSnapshot, spec: ModelSpec,
                    blocks: Sequence[str] = BLOCKS, mode: str = MODEL1,
                    min_df=None, clients: ClientBundle | None = None,
                    lexicons: Lexicons | None = None,
                    comment_cap: int = DEFAULT_COMMENT_CAP) -> ModelBundle:
    """Build a vocabulary over the eligible labeled profiles and train."""
    chosen = canonical_blocks(blocks)
    masks = {r.profile_id: block_availability(r, clients, lexicons)
             for r in corpus.labeled()}
    ids = eligible_profiles(corpus, chosen, mode, masks)
    if not ids:
        raise ModelError("no eligible labeled profiles to train on")
    records = [corpus[pid] for pid in ids]
    vocab = build_vocabulary(records, chosen, min_df, clients, lexicons,
                             comment_cap)
    X, y = [], []
    for record in records:
        vector = assemble_vector(record, vocab, mode, clients, lexicons,
                                 comment_cap)
        if vector is not None:
            X.append(vector)
            y.append(record.label)
    model = train(spec, X, y)
    return ModelBundle(vocab=vocab, model=model, mode=mode)


def bundle_to_dict(bundle: ModelBundle) -> dict:
    return {
        "format_version": BUNDLE_FORMAT_VERSION,
        "mode": bundle.mode,
        "vocabulary": bundle.vocab.to_dict(),
        "model": model_to_dict(bundle.model),
    }


def save_bundle(bundle: ModelBundle, path: str | Path) -> None:
    Path(path).write_text(canonical_json(bundle_to_dict(bundle)) + "\n",
                          encoding="utf-8")


def load_bundle(path: str | Path) -> ModelBundle:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    version = payload.get("format_version")
    if version != BUNDLE_FORMAT_VERSION:
        raise ModelError(f"unsupported model bundle version {version!r}")
    vocab = Vocabulary.from_dict(payload["vocabulary"])
    model = model_from_dict(payload["model"])
    if vocab.fingerprint != model.fingerprint:
        raise ModelError("vocabulary fingerprint does not match the model")
    return ModelBundle(vocab=vocab, model=model,
                       mode=payload.get("mode", MODEL1))


@dataclass(frozen=True)
class ScoredProfile:
    profile_id: str
    prediction: Prediction
    partial_features: bool = False

    def to_dict(self) -> dict:
        return {"profile_id": self.profile_id,
                "label": self.prediction.label,
                "score": self.prediction.score,
                "partial_features": self.partial_features}


def score_profiles(corpus: CorpusSnapshot, bundle: ModelBundle,
                   mode: str | None = None,
                   clients: ClientBundle | None = None,
                   lexicons: Lexicons | None = None,
                   comment_cap: int = DEFAULT_COMMENT_CAP,
                   include_labeled: bool = False) -> list[ScoredProfile]:
    """Batch-score profiles (unlabeled only, unless include_labeled).

    Under model2, a profile missing a block is still scored, via its model1
    vector, and flagged partial_features.
    """
    mode = mode or bundle.mode
    scored = []
    for record in sorted(corpus, key=lambda r: r.profile_id):
        if not include_labeled and record.label != UNLABELED:
            continue
        terms = extract_profile_terms(record, clients, lexicons, comment_cap)
        mask = block_availability(record, clients, lexicons)
        vector = assemble_vector(record, bundle.vocab, mode, clients, lexicons,
                                 comment_cap, precomputed=(terms, mask))
        partial = False
        if vector is None:
            vector = assemble_vector(record, bundle.vocab, MODEL1, clients,
                                     lexicons, comment_cap,
                                     precomputed=(terms, mask))
            partial = True
        scored.append(ScoredProfile(profile_id=record.profile_id,
                                    prediction=predict(bundle.model, vector),
                                    partial_features=partial))
    return scored
