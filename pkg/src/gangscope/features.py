"""Block-structured sparse term-frequency vectors over five feature families.

Blocks, in fixed order: T (tweet text stems), P (profile description stems),
E (emoji tokens), I (image tags), Y (stems of linked videos' descriptions
and comments). A vocabulary assigns each kept term a dense in-block index;
blocks occupy disjoint global column ranges in block order. A profile's
availability mask records which blocks have any data at all, one bit per
block, written T-first ("10100" means T and E present).
"""

from __future__ import annotations

import logging
from collections import Counter
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np

from .clients import ClientBundle
from .corpus import ProfileRecord
from .textprep import Lexicons, tokenize_and_normalize
from .emoji import extract_emoji_tokens
from .util import fingerprint_of

logger = logging.getLogger(__name__)

BLOCKS = ("T", "P", "E", "I", "Y")
FULL_MASK = 0b11111
DEFAULT_MIN_DF = {"T": 2, "P": 1, "E": 1, "I": 1, "Y": 2}
DEFAULT_COMMENT_CAP = 200


def block_bit(block: str) -> int:
    return 1 << (len(BLOCKS) - 1 - BLOCKS.index(block))


def blocks_mask(blocks: Iterable[str]) -> int:
    mask = 0
    for block in blocks:
        mask |= block_bit(block)
    return mask


def mask_to_string(mask: int) -> str:
    return format(mask, f"0{len(BLOCKS)}b")


def canonical_blocks(blocks: Iterable[str]) -> tuple[str, ...]:
    chosen = set(blocks)
    unknown = chosen - set(BLOCKS)
    if unknown:
        raise ValueError(f"unknown feature blocks {sorted(unknown)}")
    if not chosen:
        raise ValueError("empty block set")
    return tuple(b for b in BLOCKS if b in chosen)


def _normalize_min_df(min_df: int | Mapping[str, int] | None) -> dict[str, int]:
    if min_df is None:
        return dict(DEFAULT_MIN_DF)
    if isinstance(min_df, int):
        return {b: min_df for b in BLOCKS}
    table = dict(DEFAULT_MIN_DF)
    table.update(min_df)
    return table


def extract_profile_terms(profile: ProfileRecord,
                          clients: ClientBundle | None = None,
                          lexicons: Lexicons | None = None,
                          comment_cap: int = DEFAULT_COMMENT_CAP) -> dict[str, Counter]:
    """Raw per-block term counts for one profile (no vocabulary filtering).

    Image tags count once per image that returned them (profile and cover
    can each contribute); video text is aggregated over distinct linked
    videos, with at most comment_cap comments read per video.
    """
    clients = clients or ClientBundle()
    stopwords = lexicons.stopwords if lexicons else None
    seeds = lexicons.seed_terms if lexicons else None
    terms: dict[str, Counter] = {block: Counter() for block in BLOCKS}

    for tweet in profile.tweets:
        doc = tokenize_and_normalize(tweet.text, stopwords, seeds)
        terms["T"].update(doc.stems)
        terms["E"].update(doc.emoji_tokens)

    terms["P"].update(tokenize_and_normalize(profile.description, stopwords, seeds).stems)

    for ref in (profile.profile_image_ref, profile.cover_image_ref):
        if not ref:
            continue
        tagged = clients.image_tagger.tag_image(ref)
        if tagged is None:
            continue
        for term in set(tagged.terms()):
            terms["I"][term] += 1

    seen_videos: dict[str, None] = {}
    for tweet in profile.tweets:
        for video_id in tweet.youtube_video_ids:
            seen_videos.setdefault(video_id)
    for video_id in seen_videos:
        meta = clients.video_client.fetch_video_metadata(video_id)
        if meta is None:
            continue
        terms["Y"].update(tokenize_and_normalize(meta.description, stopwords, seeds).stems)
        for comment in meta.comments[:comment_cap]:
            terms["Y"].update(tokenize_and_normalize(comment, stopwords, seeds).stems)
    return terms


def block_availability(profile: ProfileRecord,
                       clients: ClientBundle | None = None,
                       lexicons: Lexicons | None = None) -> int:
    """5-bit availability mask for one profile.

    T, P, E follow from the normalized text itself; I and Y are about data
    presence (an image that tags, a video that resolves), not term counts.
    """
    clients = clients or ClientBundle()
    stopwords = lexicons.stopwords if lexicons else None
    seeds = lexicons.seed_terms if lexicons else None
    mask = 0

    has_emoji = False
    for tweet in profile.tweets:
        if not (mask & block_bit("T")):
            if tokenize_and_normalize(tweet.text, stopwords, seeds).stems:
                mask |= block_bit("T")
        if not has_emoji and extract_emoji_tokens(tweet.text):
            has_emoji = True
    if has_emoji:
        mask |= block_bit("E")

    if tokenize_and_normalize(profile.description, stopwords, seeds).stems:
        mask |= block_bit("P")

    for ref in (profile.profile_image_ref, profile.cover_image_ref):
        if ref and clients.image_tagger.tag_image(ref) is not None:
            mask |= block_bit("I")
            break

    for tweet in profile.tweets:
        found = False
        for video_id in tweet.youtube_video_ids:
            if clients.video_client.fetch_video_metadata(video_id) is not None:
                mask |= block_bit("Y")
                found = True
                break
        if found:
            break
    return mask


class Vocabulary:
    """Per-block term-to-column maps built from training profiles only."""

    def __init__(self, block_terms: Mapping[str, Sequence[str]],
                 min_df: Mapping[str, int],
                 document_frequency: Mapping[str, Mapping[str, int]],
                 training_ids: Sequence[str]):
        self.blocks = canonical_blocks(block_terms.keys())
        self.block_terms: dict[str, tuple[str, ...]] = {
            b: tuple(sorted(block_terms[b])) for b in self.blocks}
        self.min_df = {b: int(min_df[b]) for b in self.blocks}
        self.document_frequency = {
            b: dict(document_frequency.get(b, {})) for b in self.blocks}
        self.training_ids = tuple(sorted(training_ids))

        self._offsets: dict[str, int] = {}
        self._index: dict[str, dict[str, int]] = {}
        offset = 0
        for block in self.blocks:
            self._offsets[block] = offset
            self._index[block] = {t: offset + i
                                  for i, t in enumerate(self.block_terms[block])}
            offset += len(self.block_terms[block])
        self.total_dim = offset

        self.fingerprint = fingerprint_of({
            "training_ids": list(self.training_ids),
            "min_df": self.min_df,
            "blocks": list(self.blocks),
            "terms": {b: list(self.block_terms[b]) for b in self.blocks},
        })

    def size(self, block: str) -> int:
        return len(self.block_terms[block])

    def block_range(self, block: str) -> tuple[int, int]:
        start = self._offsets[block]
        return start, start + self.size(block)

    def column(self, block: str, term: str) -> int | None:
        return self._index[block].get(term)

    def term_at(self, column: int) -> tuple[str, str]:
        for block in self.blocks:
            start, stop = self.block_range(block)
            if start <= column < stop:
                return block, self.block_terms[block][column - start]
        raise IndexError(column)

    def to_dict(self) -> dict:
        return {
            "blocks": list(self.blocks),
            "terms": {b: list(self.block_terms[b]) for b in self.blocks},
            "min_df": self.min_df,
            "document_frequency": self.document_frequency,
            "training_ids": list(self.training_ids),
        }

    @classmethod
    def from_dict(cls, payload: dict) -> "Vocabulary":
        return cls(block_terms=payload["terms"], min_df=payload["min_df"],
                   document_frequency=payload.get("document_frequency", {}),
                   training_ids=payload.get("training_ids", ()))

    def export(self, path: str | Path) -> None:
        """Tab-separated table: block, term, in-block index, column, df."""
        lines = ["block\tterm\tindex\tcolumn\tdf"]
        for block in self.blocks:
            start, _ = self.block_range(block)
            for i, term in enumerate(self.block_terms[block]):
                df = self.document_frequency.get(block, {}).get(term, 0)
                lines.append(f"{block}\t{term}\t{i}\t{start + i}\t{df}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def build_vocabulary(training_profiles: Sequence[ProfileRecord],
                     blocks: Iterable[str] = BLOCKS,
                     min_df: int | Mapping[str, int] | None = None,
                     clients: ClientBundle | None = None,
                     lexicons: Lexicons | None = None,
                     comment_cap: int = DEFAULT_COMMENT_CAP,
                     precomputed_terms: Mapping[str, Mapping[str, Counter]] | None = None,
                     ) -> Vocabulary:
    """Collect per-block terms from training profiles, keep those that occur
    in at least min_df distinct profiles, and index them lexicographically.

    precomputed_terms (profile_id -> block -> Counter) lets callers that
    extract terms once reuse them across folds.
    """
    if not training_profiles:
        raise ValueError("training profile list is empty")
    chosen = canonical_blocks(blocks)
    thresholds = _normalize_min_df(min_df)

    df: dict[str, Counter] = {b: Counter() for b in chosen}
    for profile in training_profiles:
        if precomputed_terms is not None:
            terms = precomputed_terms[profile.profile_id]
        else:
            terms = extract_profile_terms(profile, clients, lexicons, comment_cap)
        for block in chosen:
            for term in terms[block]:
                df[block][term] += 1

    kept = {b: [t for t, n in df[b].items() if n >= thresholds[b]] for b in chosen}
    kept_df = {b: {t: df[b][t] for t in kept[b]} for b in chosen}
    return Vocabulary(block_terms=kept,
                      min_df={b: thresholds[b] for b in chosen},
                      document_frequency=kept_df,
                      training_ids=[p.profile_id for p in training_profiles])


@dataclass(frozen=True)
class FeatureVector:
    """Sparse nonnegative counts over a vocabulary's global columns."""
    counts: tuple[tuple[int, int], ...]
    mask: int
    dim: int
    fingerprint: str

    def dense(self) -> np.ndarray:
        x = np.zeros(self.dim, dtype=np.float64)
        for column, count in self.counts:
            x[column] = count
        return x

    def block_counts(self, vocab: Vocabulary, block: str) -> dict[int, int]:
        start, stop = vocab.block_range(block)
        return {c: n for c, n in self.counts if start <= c < stop}


def extract_block(profile: ProfileRecord, block: str, vocab: Vocabulary,
                  clients: ClientBundle | None = None,
                  lexicons: Lexicons | None = None,
                  comment_cap: int = DEFAULT_COMMENT_CAP) -> dict[int, int]:
    """In-vocabulary counts for one block; out-of-vocabulary terms vanish."""
    if block not in vocab.blocks:
        raise ValueError(f"vocabulary does not cover block {block!r}")
    terms = extract_profile_terms(profile, clients, lexicons, comment_cap)
    return _block_counts_from_terms(terms, block, vocab)


def _block_counts_from_terms(terms: Mapping[str, Counter], block: str,
                             vocab: Vocabulary) -> dict[int, int]:
    counts: dict[int, int] = {}
    for term, n in terms[block].items():
        column = vocab.column(block, term)
        if column is not None:
            counts[column] = n
    return counts


MODEL1 = "model1"
MODEL2 = "model2"
MODES = (MODEL1, MODEL2)


def assemble_vector(profile: ProfileRecord, vocab: Vocabulary, mode: str,
                    clients: ClientBundle | None = None,
                    lexicons: Lexicons | None = None,
                    comment_cap: int = DEFAULT_COMMENT_CAP,
                    precomputed: tuple[Mapping[str, Counter], int] | None = None,
                    ) -> FeatureVector | None:
    """Build one profile's vector, or None (skip) under model2 when any of
    the vocabulary's blocks is unavailable.

    Under model1, unavailable blocks are zeroed out: their columns stay zero
    and the availability bit stays 0.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}")
    if precomputed is not None:
        terms, mask = precomputed
    else:
        terms = extract_profile_terms(profile, clients, lexicons, comment_cap)
        mask = block_availability(profile, clients, lexicons)

    if mode == MODEL2:
        required = blocks_mask(vocab.blocks)
        if mask & required != required:
            return None

    counts: dict[int, int] = {}
    for block in vocab.blocks:
        if mask & block_bit(block):
            counts.update(_block_counts_from_terms(terms, block, vocab))
    ordered = tuple(sorted(counts.items()))
    return FeatureVector(counts=ordered, mask=mask, dim=vocab.total_dim,
                         fingerprint=vocab.fingerprint)
