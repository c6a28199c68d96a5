"""Profile records, corpus persistence, and the discovery/labeling workflow.

The canonical corpus file is line-delimited JSON, one profile per line,
UTF-8, snake_case keys. Unknown top-level keys are preserved on round-trip.
Snapshots are immutable values: every mutation returns a new snapshot, and
label changes additionally flow through an append-only label log so any
snapshot can be reproduced by replay.
"""

from __future__ import annotations

import json
import logging
import re
import threading
from dataclasses import dataclass, replace
from datetime import datetime, timezone
from pathlib import Path
from typing import Iterable, Iterator, Mapping, Sequence

from .textprep import default_variant_groups

logger = logging.getLogger(__name__)

GANG = "gang"
NONGANG = "nongang"
UNLABELED = "unlabeled"
UNSURE = "unsure"
LABELS = (GANG, NONGANG, UNLABELED, UNSURE)
TRAINING_LABELS = (GANG, NONGANG)

PROVENANCES = ("seed_term", "rapper_seed", "retweet_expansion",
               "follow_expansion", "stream_sample", "imported")

TWEET_CAP = 3200
DESCRIPTION_CAP = 160

_YOUTUBE_RE = re.compile(
    r"(?:https?://)?(?:www\.|m\.)?"
    r"(?:youtube\.com/(?:watch\?(?:[\w.~%=&-]*&)?v=|embed/|shorts/|v/)|youtu\.be/)"
    r"([A-Za-z0-9_-]{5,32})")


class CorpusError(ValueError):
    """Raised for malformed corpus files and invalid corpus operations."""


def extract_youtube_ids(text: str) -> tuple[str, ...]:
    """Video keys from a tweet's URLs, in appearance order, deduplicated."""
    seen: dict[str, None] = {}
    for m in _YOUTUBE_RE.finditer(text):
        seen.setdefault(m.group(1))
    return tuple(seen)


@dataclass(frozen=True)
class TweetRecord:
    tweet_id: str
    text: str
    retweeted_author_id: str | None = None
    youtube_video_ids: tuple[str, ...] = ()


@dataclass(frozen=True)
class ProfileRecord:
    profile_id: str
    description: str = ""
    location_raw: str = ""
    tweets: tuple[TweetRecord, ...] = ()
    follower_ids: frozenset[str] = frozenset()
    followee_ids: frozenset[str] = frozenset()
    profile_image_ref: str | None = None
    cover_image_ref: str | None = None
    label: str = UNLABELED
    provenance: str = "imported"
    annotator: str | None = None
    labeled_at: str | None = None
    extra: tuple[tuple[str, object], ...] = ()


def normalize_description(text: str) -> str:
    """Collapse whitespace runs; truncate past the 160-character cap."""
    normalized = " ".join(text.split())
    if len(normalized) > DESCRIPTION_CAP:
        logger.warning("description truncated to %d characters", DESCRIPTION_CAP)
        normalized = normalized[:DESCRIPTION_CAP]
    return normalized


def make_tweet(tweet_id: str, text: str,
               retweeted_author_id: str | None = None,
               youtube_video_ids: Sequence[str] | None = None) -> TweetRecord:
    """Build a tweet, deriving (or validating) its video keys from the text."""
    derivable = extract_youtube_ids(text)
    if youtube_video_ids is None:
        ids = derivable
    else:
        stray = [v for v in youtube_video_ids if v not in derivable]
        if stray:
            raise CorpusError(
                f"tweet {tweet_id!r}: youtube_video_ids {stray} not extractable "
                f"from the tweet text")
        ids = tuple(youtube_video_ids)
    return TweetRecord(tweet_id=tweet_id, text=text,
                       retweeted_author_id=retweeted_author_id,
                       youtube_video_ids=ids)


class CorpusSnapshot:
    """Immutable map of profile_id to ProfileRecord."""

    def __init__(self, profiles: Mapping[str, ProfileRecord] | Iterable[ProfileRecord] = ()):
        if isinstance(profiles, Mapping):
            records = list(profiles.values())
        else:
            records = list(profiles)
        table: dict[str, ProfileRecord] = {}
        for record in records:
            if record.profile_id in table:
                raise CorpusError(f"duplicate profile_id {record.profile_id!r}")
            table[record.profile_id] = record
        self._profiles = table

    @property
    def profiles(self) -> Mapping[str, ProfileRecord]:
        return dict(self._profiles)

    @property
    def counts(self) -> dict[str, int]:
        """Per-label record counts, always a fresh recount."""
        counts = {label: 0 for label in LABELS}
        for record in self._profiles.values():
            counts[record.label] += 1
        return counts

    def __len__(self) -> int:
        return len(self._profiles)

    def __iter__(self) -> Iterator[ProfileRecord]:
        return iter(self._profiles.values())

    def __contains__(self, profile_id: str) -> bool:
        return profile_id in self._profiles

    def get(self, profile_id: str) -> ProfileRecord | None:
        return self._profiles.get(profile_id)

    def __getitem__(self, profile_id: str) -> ProfileRecord:
        try:
            return self._profiles[profile_id]
        except KeyError:
            raise CorpusError(f"unknown profile_id {profile_id!r}") from None

    def ids(self) -> list[str]:
        return sorted(self._profiles)

    def with_record(self, record: ProfileRecord) -> "CorpusSnapshot":
        table = dict(self._profiles)
        table[record.profile_id] = record
        return CorpusSnapshot(table)

    def labeled(self, labels: Sequence[str] = TRAINING_LABELS) -> list[ProfileRecord]:
        wanted = set(labels)
        return [r for r in self._profiles.values() if r.label in wanted]


# --- canonical line format ----------------------------------------------

_TWEET_KEYS = ("tweet_id", "text", "retweeted_author_id", "youtube_video_ids")
_RECORD_KEYS = ("profile_id", "description", "location_raw", "tweets",
                "follower_ids", "followee_ids", "profile_image_ref",
                "cover_image_ref", "label", "provenance", "annotator",
                "labeled_at")


def record_to_dict(record: ProfileRecord) -> dict:
    out: dict = {
        "profile_id": record.profile_id,
        "description": record.description,
        "location_raw": record.location_raw,
        "tweets": [
            {"tweet_id": t.tweet_id, "text": t.text,
             "retweeted_author_id": t.retweeted_author_id,
             "youtube_video_ids": list(t.youtube_video_ids)}
            for t in record.tweets
        ],
        "follower_ids": sorted(record.follower_ids),
        "followee_ids": sorted(record.followee_ids),
        "profile_image_ref": record.profile_image_ref,
        "cover_image_ref": record.cover_image_ref,
        "label": record.label,
        "provenance": record.provenance,
        "annotator": record.annotator,
        "labeled_at": record.labeled_at,
    }
    for key, value in sorted(record.extra):
        out[key] = value
    return out


def dumps_record(record: ProfileRecord) -> str:
    return json.dumps(record_to_dict(record), ensure_ascii=False,
                      separators=(",", ":"))


def _require(condition: bool, line_no: int, message: str) -> None:
    if not condition:
        raise CorpusError(f"line {line_no}: {message}")


def record_from_dict(obj: dict, line_no: int = 0,
                     cap_policy: str = "reject") -> ProfileRecord:
    _require(isinstance(obj, dict), line_no, "record is not an object")
    profile_id = obj.get("profile_id")
    _require(isinstance(profile_id, str) and bool(profile_id), line_no,
             "missing or empty profile_id")

    description = obj.get("description", "")
    _require(isinstance(description, str), line_no, "description must be text")
    description = normalize_description(description)

    location_raw = obj.get("location_raw", "")
    _require(isinstance(location_raw, str), line_no, "location_raw must be text")

    raw_tweets = obj.get("tweets", [])
    _require(isinstance(raw_tweets, list), line_no, "tweets must be a list")
    if len(raw_tweets) > TWEET_CAP:
        if cap_policy == "reject":
            raise CorpusError(
                f"line {line_no}: profile {profile_id!r} has {len(raw_tweets)} "
                f"tweets, above the {TWEET_CAP} cap")
        logger.warning("profile %s: tweets truncated to %d", profile_id, TWEET_CAP)
        raw_tweets = raw_tweets[:TWEET_CAP]

    tweets = []
    for t in raw_tweets:
        _require(isinstance(t, dict), line_no, "tweet is not an object")
        unknown = set(t) - set(_TWEET_KEYS)
        _require(not unknown, line_no, f"unknown tweet keys {sorted(unknown)}")
        _require(isinstance(t.get("tweet_id"), str), line_no, "tweet_id must be text")
        _require(isinstance(t.get("text"), str), line_no, "tweet text must be text")
        try:
            tweets.append(make_tweet(
                t["tweet_id"], t["text"],
                retweeted_author_id=t.get("retweeted_author_id"),
                youtube_video_ids=t.get("youtube_video_ids")))
        except CorpusError as exc:
            raise CorpusError(f"line {line_no}: {exc}") from None

    label = obj.get("label") or UNLABELED
    _require(label in LABELS, line_no, f"unknown label {label!r}")
    provenance = obj.get("provenance") or "imported"
    _require(provenance in PROVENANCES, line_no, f"unknown provenance {provenance!r}")

    extra = tuple(sorted((k, v) for k, v in obj.items() if k not in _RECORD_KEYS))

    return ProfileRecord(
        profile_id=profile_id,
        description=description,
        location_raw=location_raw,
        tweets=tuple(tweets),
        follower_ids=frozenset(obj.get("follower_ids", [])),
        followee_ids=frozenset(obj.get("followee_ids", [])),
        profile_image_ref=obj.get("profile_image_ref"),
        cover_image_ref=obj.get("cover_image_ref"),
        label=label,
        provenance=provenance,
        annotator=obj.get("annotator"),
        labeled_at=obj.get("labeled_at"),
        extra=extra,
    )


def ingest_corpus(path: str | Path, cap_policy: str = "reject") -> CorpusSnapshot:
    """Load a line-delimited corpus file into a snapshot.

    cap_policy controls what happens to profiles above the tweet cap:
    "reject" raises, "truncate" keeps the first 3,200 tweets with a warning.
    Over-long descriptions are always truncated (with a warning).
    """
    if cap_policy not in ("reject", "truncate"):
        raise CorpusError(f"unknown cap_policy {cap_policy!r}")
    path = Path(path)
    if not path.is_file():
        raise CorpusError(f"corpus file not readable: {path}")
    records: dict[str, ProfileRecord] = {}
    with path.open(encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise CorpusError(f"line {line_no}: invalid JSON ({exc.msg})") from None
            record = record_from_dict(obj, line_no, cap_policy)
            if record.profile_id in records:
                raise CorpusError(
                    f"line {line_no}: duplicate profile_id {record.profile_id!r}")
            records[record.profile_id] = record
    return CorpusSnapshot(records)


def serialize_corpus(corpus: CorpusSnapshot, path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as fh:
        for record in corpus:
            fh.write(dumps_record(record))
            fh.write("\n")


# --- label log ------------------------------------------------------------

class LabelLog:
    """Append-only log of label transitions; file-backed when given a path.

    Appends are serialized by a lock; reads may go on concurrently since
    lines are only ever added.
    """

    def __init__(self, path: str | Path | None = None):
        self.path = Path(path) if path is not None else None
        self._memory: list[dict] = []
        self._lock = threading.Lock()
        if self.path is not None and not self.path.exists():
            self.path.touch()

    def append(self, entry: dict) -> None:
        line = json.dumps(entry, ensure_ascii=False, separators=(",", ":"))
        with self._lock:
            if self.path is not None:
                with self.path.open("a", encoding="utf-8") as fh:
                    fh.write(line + "\n")
            else:
                self._memory.append(json.loads(line))

    def entries(self) -> list[dict]:
        if self.path is None:
            return list(self._memory)
        out = []
        for line in self.path.read_text(encoding="utf-8").splitlines():
            if line.strip():
                out.append(json.loads(line))
        return out


def _now_iso() -> str:
    return datetime.now(timezone.utc).isoformat(timespec="seconds")


def apply_label(corpus: CorpusSnapshot, profile_id: str, label: str,
                annotator: str, log: LabelLog | None = None,
                timestamp: str | None = None) -> CorpusSnapshot:
    """The single entry point through which a record's label may change."""
    if label not in LABELS:
        raise CorpusError(f"unknown label {label!r}")
    record = corpus[profile_id]
    stamp = timestamp or _now_iso()
    if log is not None:
        log.append({"profile_id": profile_id, "old_label": record.label,
                    "new_label": label, "annotator": annotator,
                    "timestamp": stamp})
    updated = replace(record, label=label, annotator=annotator, labeled_at=stamp)
    return corpus.with_record(updated)


def replay_label_log(corpus: CorpusSnapshot, log: LabelLog) -> CorpusSnapshot:
    """Reapply every logged transition to a base snapshot, in order."""
    for entry in log.entries():
        corpus = apply_label(corpus, entry["profile_id"], entry["new_label"],
                             entry["annotator"], log=None,
                             timestamp=entry["timestamp"])
    return corpus


# --- discovery ------------------------------------------------------------

DEFAULT_EXPANSION_CAP = 100


def _expand_terms(terms: Sequence[str],
                  groups: Sequence[frozenset[str]]) -> set[str]:
    expanded = {t.lower() for t in terms}
    for term in list(expanded):
        for group in groups:
            if term in group:
                expanded.update(group)
    return expanded


def discover_candidates(corpus: CorpusSnapshot, method: str,
                        seeds: Sequence[str],
                        expand_variants: bool = False,
                        variant_groups: Sequence[frozenset[str]] | None = None,
                        cap: int | None = DEFAULT_EXPANSION_CAP) -> list[str]:
    """Find candidate profiles via seed terms, retweets, or the follow graph.

    seed_terms matches the raw description case-insensitively (substring,
    with and without a leading #) and has no breadth cap; retweet and follow
    expansion exclude the seeds and any already-labeled profile and are
    capped per call. Expansion may name ids that are not in the corpus yet;
    those are candidates for import.
    """
    if method == "seed_terms":
        if not seeds:
            raise CorpusError("empty term list")
        terms = {t.lower() for t in seeds}
        if expand_variants:
            groups = default_variant_groups() if variant_groups is None else variant_groups
            terms = _expand_terms(sorted(terms), groups)
        terms |= {t.lstrip("#") for t in terms}
        matched = []
        for record in corpus:
            if record.label != UNLABELED:
                continue
            description = record.description.lower()
            if any(term in description for term in terms):
                matched.append(record.profile_id)
        return sorted(matched)

    if method not in ("retweet", "follow"):
        raise CorpusError(f"unknown discovery method {method!r}")
    if not seeds:
        raise CorpusError("empty seed id list")
    seed_ids = set(seeds)
    for seed in seed_ids:
        if seed not in corpus:
            raise CorpusError(f"unknown seed id {seed!r}")

    found: set[str] = set()
    for seed in seed_ids:
        record = corpus[seed]
        if method == "retweet":
            found.update(t.retweeted_author_id for t in record.tweets
                         if t.retweeted_author_id)
        else:
            found.update(record.follower_ids)
            found.update(record.followee_ids)

    results = []
    for candidate in found:
        if candidate in seed_ids:
            continue
        known = corpus.get(candidate)
        if known is not None and known.label != UNLABELED:
            continue
        results.append(candidate)
    results.sort()
    if cap is not None:
        results = results[:cap]
    return results


def filter_us_profiles(corpus: CorpusSnapshot, geocoder) -> CorpusSnapshot:
    """Keep profiles whose stated location geocodes to the US.

    Empty, unknown, and geocoder-failing locations are discarded, with the
    discard count logged.
    """
    kept = []
    discarded = 0
    for record in corpus:
        try:
            result = geocoder.geocode(record.location_raw)
        except Exception:
            logger.warning("geocoder failed on %r; treating as unknown",
                           record.profile_id)
            result = "unknown"
        if result == "us":
            kept.append(record)
        else:
            discarded += 1
    logger.info("US filter kept %d profiles, discarded %d", len(kept), discarded)
    return CorpusSnapshot(kept)
