"""HTTP facade over corpus, training, scoring, analysis, and the triage queue.

All label writes funnel through the corpus label log, so the state served
here is always reproducible by replaying that log over the base corpus.
Training jobs run one at a time in a background thread; everything else is
synchronous. A single shared token (optional) gates every endpoint.
"""

from __future__ import annotations

import logging
import threading
from dataclasses import dataclass, field
from typing import Sequence

from fastapi import Depends, FastAPI, HTTPException, Request
from fastapi.middleware.cors import CORSMiddleware

from . import analysis
from .clients import ClientBundle
from .corpus import (CorpusSnapshot, LabelLog, LABELS, UNLABELED, apply_label,
                     ingest_corpus)
from .emoji import detect_chains, extract_emoji_events
from .evaluation import cross_validate
from .features import BLOCKS, MODEL1
from .models import ModelError, ModelSpec, TrainedModel
from .models.logistic import LogisticParams
from .models.naive_bayes import NaiveBayesParams
from .models.svm import SvmParams
from .pipeline import ModelBundle, ScoredProfile, score_profiles, train_on_corpus
from .textprep import Lexicons

import numpy as np

logger = logging.getLogger(__name__)

PENDING = "pending"
LABELED = "labeled"
SKIPPED = "skipped"

DEFAULT_VIDEO_KEYWORDS = ("gangsta", "hip-hop")
EVIDENCE_TERMS_PER_BLOCK = 5


def _term_weights(model: TrainedModel) -> np.ndarray | None:
    """Per-column weight used to rank evidence terms, when the model has one."""
    params = model.params
    if isinstance(params, (LogisticParams, SvmParams)):
        return params.weights
    if isinstance(params, NaiveBayesParams):
        with np.errstate(divide="ignore"):
            logp = np.log(params.feature_prob)
        ratio = logp[1] - logp[0]
        return np.where(np.isfinite(ratio), ratio, 0.0)
    return None


def build_evidence(record, bundle: ModelBundle,
                   clients: ClientBundle | None,
                   lexicons: Lexicons | None = None) -> dict:
    """The signal families an analyst reviews: per-block top terms, emoji
    chains, image tags, and linked-video keyword hits."""
    from .features import extract_profile_terms

    clients = clients or ClientBundle()
    terms = extract_profile_terms(record, clients, lexicons)
    weights = _term_weights(bundle.model)

    block_terms: dict[str, list[dict]] = {}
    for block in bundle.vocab.blocks:
        rows = []
        for term, count in terms[block].items():
            column = bundle.vocab.column(block, term)
            if column is None:
                continue
            weight = float(weights[column]) if weights is not None else None
            contribution = count * weight if weight is not None else float(count)
            rows.append({"term": term, "count": count, "weight": weight,
                         "contribution": contribution})
        rows.sort(key=lambda r: (-r["contribution"], r["term"]))
        block_terms[block] = rows[:EVIDENCE_TERMS_PER_BLOCK]

    chains: dict[str, int] = {}
    for tweet in record.tweets:
        for chain in detect_chains(extract_emoji_events(tweet.text)):
            key = " ".join(chain)
            chains[key] = chains.get(key, 0) + 1
    chain_rows = sorted(chains.items(), key=lambda kv: (-kv[1], kv[0]))

    image_tags = []
    for ref in (record.profile_image_ref, record.cover_image_ref):
        if not ref:
            continue
        tagged = clients.image_tagger.tag_image(ref)
        if tagged is not None:
            image_tags.extend(tagged.terms())

    youtube = {"video_ids": [], "keyword_hits": [], "descriptions": []}
    for tweet in record.tweets:
        for video_id in tweet.youtube_video_ids:
            youtube["video_ids"].append(video_id)
            meta = clients.video_client.fetch_video_metadata(video_id)
            if meta is None:
                continue
            description = meta.description
            youtube["descriptions"].append(description[:120])
            hits = [kw for kw in DEFAULT_VIDEO_KEYWORDS
                    if kw in description.lower()]
            youtube["keyword_hits"].extend(h for h in hits
                                           if h not in youtube["keyword_hits"])

    return {"description": record.description,
            "blocks": block_terms,
            "emoji_chains": [{"chain": c, "count": n} for c, n in chain_rows],
            "image_tags": sorted(set(image_tags)),
            "youtube": youtube}


@dataclass
class TriageItem:
    profile_id: str
    score: float
    evidence: dict
    status: str = PENDING
    partial_features: bool = False
    label: str | None = None

    def to_dict(self) -> dict:
        return {"profile_id": self.profile_id, "score": self.score,
                "evidence": self.evidence, "status": self.status,
                "partial_features": self.partial_features, "label": self.label}


class TriageQueue:
    """Score-ordered review queue; labeled items never return to pending."""

    def __init__(self, items: Sequence[TriageItem]):
        self._items = sorted(items, key=lambda i: (-i.score, i.profile_id))
        self._by_id = {i.profile_id: i for i in self._items}

    def __len__(self) -> int:
        return len(self._items)

    def items(self, min_score: float | None = None,
              max_score: float | None = None,
              status: str | None = PENDING,
              offset: int = 0, limit: int | None = None) -> list[TriageItem]:
        out = []
        for item in self._items:
            if status is not None and item.status != status:
                continue
            if min_score is not None and item.score < min_score:
                continue
            if max_score is not None and item.score > max_score:
                continue
            out.append(item)
        if limit is None:
            return out[offset:]
        return out[offset:offset + limit]

    def next_pending(self) -> TriageItem | None:
        for item in self._items:
            if item.status == PENDING:
                return item
        return None

    def get(self, profile_id: str) -> TriageItem | None:
        return self._by_id.get(profile_id)


def queue_from_scores(scored: Sequence[ScoredProfile], corpus: CorpusSnapshot,
                      bundle: ModelBundle, clients: ClientBundle | None,
                      lexicons: Lexicons | None = None) -> TriageQueue:
    items = []
    for entry in scored:
        record = corpus[entry.profile_id]
        items.append(TriageItem(
            profile_id=entry.profile_id,
            score=entry.prediction.score,
            evidence=build_evidence(record, bundle, clients, lexicons),
            partial_features=entry.partial_features))
    return TriageQueue(items)


@dataclass
class TrainJob:
    state: str = "idle"  # idle | running | done | failed
    error: str | None = None
    config: dict | None = None


@dataclass
class AppState:
    corpus: CorpusSnapshot = field(default_factory=CorpusSnapshot)
    label_log: LabelLog = field(default_factory=LabelLog)
    clients: ClientBundle = field(default_factory=ClientBundle)
    lexicons: Lexicons | None = None
    bundle: ModelBundle | None = None
    queue: TriageQueue | None = None
    train_job: TrainJob = field(default_factory=TrainJob)
    label_lock: threading.Lock = field(default_factory=threading.Lock)
    train_lock: threading.Lock = field(default_factory=threading.Lock)


def _spec_from_payload(payload: dict) -> ModelSpec:
    return ModelSpec(algorithm=payload.get("algorithm", "random_forest"),
                     hyperparams=tuple(sorted(payload.get("hyperparams", {}).items())),
                     rng_seed=int(payload.get("rng_seed", 0)))


def create_app(state: AppState, token: str | None = None) -> FastAPI:
    app = FastAPI(title="gangscope service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    def check_token(request: Request) -> None:
        if token is None:
            return
        header = request.headers.get("authorization", "")
        if header != f"Bearer {token}":
            raise HTTPException(status_code=401, detail="invalid token")

    guard = Depends(check_token)

    @app.get("/corpus/stats", dependencies=[guard])
    def corpus_stats():
        counts = state.corpus.counts
        return {"profiles": len(state.corpus), "counts": counts,
                "label_log_entries": len(state.label_log.entries()),
                "pending_triage": (len(state.queue.items()) if state.queue else 0)}

    @app.post("/corpus/ingest", dependencies=[guard])
    def corpus_ingest(payload: dict):
        path = payload.get("path")
        if not path:
            raise HTTPException(status_code=400, detail="missing path")
        try:
            state.corpus = ingest_corpus(path, payload.get("cap_policy", "reject"))
        except Exception as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        state.queue = None
        return {"profiles": len(state.corpus), "counts": state.corpus.counts}

    @app.post("/train", dependencies=[guard])
    def train_endpoint(payload: dict):
        if not state.train_lock.acquire(blocking=False):
            raise HTTPException(status_code=409, detail="training already running")
        spec = _spec_from_payload(payload.get("spec", {}))
        blocks = tuple(payload.get("blocks", list(BLOCKS)))
        mode = payload.get("mode", MODEL1)
        min_df = payload.get("min_df")
        state.train_job = TrainJob(state="running",
                                   config={"spec": spec.to_dict(),
                                           "blocks": list(blocks), "mode": mode})

        def run():
            try:
                bundle = train_on_corpus(state.corpus, spec, blocks, mode,
                                         min_df, state.clients, state.lexicons)
                state.bundle = bundle
                state.train_job.state = "done"
            except Exception as exc:
                state.train_job.state = "failed"
                state.train_job.error = str(exc)
            finally:
                state.train_lock.release()

        threading.Thread(target=run, daemon=True).start()
        return {"status": "started"}

    @app.get("/train/status", dependencies=[guard])
    def train_status():
        job = state.train_job
        return {"state": job.state, "error": job.error, "config": job.config}

    @app.post("/cv", dependencies=[guard])
    def cv_endpoint(payload: dict):
        spec = _spec_from_payload(payload.get("spec", {}))
        try:
            report = cross_validate(
                state.corpus, spec,
                blocks=tuple(payload.get("blocks", list(BLOCKS))),
                mode=payload.get("mode", MODEL1),
                k=int(payload.get("k", 10)),
                min_df=payload.get("min_df"),
                rng_seed=int(payload.get("rng_seed", 0)),
                clients=state.clients, lexicons=state.lexicons)
        except ValueError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        return report.to_dict()

    @app.post("/score", dependencies=[guard])
    def score_endpoint(payload: dict | None = None):
        payload = payload or {}
        if state.bundle is None:
            raise HTTPException(status_code=409, detail="no trained model")
        try:
            scored = score_profiles(
                state.corpus, state.bundle, mode=payload.get("mode"),
                clients=state.clients, lexicons=state.lexicons,
                include_labeled=bool(payload.get("include_labeled", False)))
        except ModelError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        state.queue = queue_from_scores(scored, state.corpus, state.bundle,
                                        state.clients, state.lexicons)
        return {"scored": [s.to_dict() for s in scored]}

    @app.get("/triage/queue", dependencies=[guard])
    def triage_queue(min_score: float | None = None,
                     max_score: float | None = None,
                     provenance: str | None = None,
                     status: str | None = PENDING,
                     offset: int = 0, limit: int = 50):
        if state.queue is None:
            return {"items": [], "total": 0}
        if status in ("", "all"):
            status = None
        items = state.queue.items(min_score=min_score, max_score=max_score,
                                  status=status)
        if provenance:
            items = [i for i in items
                     if state.corpus[i.profile_id].provenance == provenance]
        total = len(items)
        page = items[offset:offset + limit]
        return {"items": [i.to_dict() for i in page], "total": total,
                "offset": offset}

    @app.get("/triage/next", dependencies=[guard])
    def triage_next():
        if state.queue is None:
            return {"item": None}
        item = state.queue.next_pending()
        return {"item": item.to_dict() if item else None}

    @app.post("/triage/{profile_id}/label", dependencies=[guard])
    def triage_label(profile_id: str, payload: dict):
        label = payload.get("label")
        annotator = payload.get("annotator", "")
        if label not in LABELS:
            raise HTTPException(status_code=400, detail=f"unknown label {label!r}")
        if profile_id not in state.corpus:
            raise HTTPException(status_code=404,
                                detail=f"unknown profile {profile_id!r}")
        with state.label_lock:
            item = state.queue.get(profile_id) if state.queue else None
            if item is not None and item.status == LABELED:
                if item.label == label:
                    return {"status": "ok", "label": label, "idempotent": True}
                raise HTTPException(
                    status_code=409,
                    detail={"conflict": True, "winning_label": item.label})
            current = state.corpus[profile_id].label
            if item is None and current != UNLABELED:
                if current == label:
                    return {"status": "ok", "label": label, "idempotent": True}
                raise HTTPException(
                    status_code=409,
                    detail={"conflict": True, "winning_label": current})
            state.corpus = apply_label(state.corpus, profile_id, label,
                                       annotator, log=state.label_log)
            if item is not None:
                item.status = LABELED
                item.label = label
        return {"status": "ok", "label": label, "idempotent": False}

    @app.get("/analysis/{stat}", dependencies=[guard])
    def analysis_endpoint(stat: str, class_label: str = "gang",
                          block: str = "T", k: int = 20,
                          top_k: int | None = None,
                          emoji_a: str | None = None,
                          emoji_b: str | None = None,
                          keywords: str = ",".join(DEFAULT_VIDEO_KEYWORDS)):
        try:
            if stat == "top_terms":
                rows = analysis.top_terms(state.corpus, class_label, block, k,
                                          state.clients, state.lexicons)
                return {"rows": [{"term": t, "count": c} for t, c in rows]}
            if stat == "curse_rate":
                return {"curse_rate": analysis.curse_rate(state.corpus, class_label)}
            if stat == "emoji_stats":
                return analysis.emoji_stats(state.corpus, class_label, top_k).to_dict()
            if stat == "chain_cooccurrence":
                if not emoji_a or not emoji_b:
                    raise HTTPException(status_code=400,
                                        detail="emoji_a and emoji_b required")
                value = analysis.chain_cooccurrence(state.corpus, class_label,
                                                    emoji_a, emoji_b)
                return {"fraction": value}
            if stat == "youtube_stats":
                stats = analysis.youtube_stats(
                    state.corpus, class_label,
                    [kw for kw in keywords.split(",") if kw],
                    state.clients.video_client)
                return stats.to_dict()
        except analysis.AnalysisError as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        raise HTTPException(status_code=404, detail=f"unknown stat {stat!r}")

    return app
