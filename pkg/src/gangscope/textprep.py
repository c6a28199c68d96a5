"""Deterministic text normalization for tweets and profile descriptions.

Pipeline: lowercase, split on Unicode whitespace and punctuation, drop URLs
and mentions, strip the leading # from hashtags, remove stopwords and seed
terms (matched on the pre-stem lowercase surface), stem what remains, and
collect emoji tokens separately in appearance order.
"""

from __future__ import annotations

import re
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable

from . import emoji as emj
from ._porter import stem as porter_stem

_URL_RE = re.compile(r"(?:https?://|www\.)\S+", re.IGNORECASE)
_MENTION_RE = re.compile(r"@\w+")
_HASHTAG_RE = re.compile(r"#\w+")
_WORD_RE = re.compile(r"[^\W_]+")

WORD = "word"
HASHTAG = "hashtag"
MENTION = "mention"
URL = "url"
EMOJI = "emoji"
OTHER = "other"


@dataclass(frozen=True)
class Token:
    surface: str
    kind: str


def tokenize(text: str) -> list[Token]:
    """Split raw text into typed tokens, longest-match, left to right."""
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        if text[i].isspace():
            i += 1
            continue
        m = _URL_RE.match(text, i)
        if m:
            tokens.append(Token(m.group(), URL))
            i = m.end()
            continue
        m = _MENTION_RE.match(text, i)
        if m:
            tokens.append(Token(m.group(), MENTION))
            i = m.end()
            continue
        m = _HASHTAG_RE.match(text, i)
        if m:
            tokens.append(Token(m.group(), HASHTAG))
            i = m.end()
            continue
        cluster = emj.match_cluster(text, i)
        if cluster is not None:
            consumed, token = cluster
            tokens.append(Token(token, EMOJI))
            i += consumed
            continue
        m = _WORD_RE.match(text, i)
        if m:
            tokens.append(Token(m.group(), WORD))
            i = m.end()
            continue
        tokens.append(Token(text[i], OTHER))
        i += 1
    return tokens


def load_term_file(path: str | Path) -> frozenset[str]:
    """One lowercase term per line; blank lines ignored; # prefix allowed."""
    terms = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        term = line.strip().lower()
        if term:
            terms.add(term)
    return frozenset(terms)


def load_variant_groups(path: str | Path) -> tuple[frozenset[str], ...]:
    """Spelling-variant groups: one term per line, blank line between groups."""
    groups: list[frozenset[str]] = []
    current: set[str] = set()
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        term = line.strip().lower()
        if term:
            current.add(term)
        elif current:
            groups.append(frozenset(current))
            current = set()
    if current:
        groups.append(frozenset(current))
    return tuple(groups)


def _data_path(name: str) -> Path:
    return Path(str(resources.files("gangscope").joinpath("data", name)))


@lru_cache(maxsize=None)
def default_stopwords() -> frozenset[str]:
    return load_term_file(_data_path("stopwords.txt"))


@lru_cache(maxsize=None)
def default_seed_terms() -> frozenset[str]:
    return load_term_file(_data_path("seed_terms.txt"))


@lru_cache(maxsize=None)
def default_curse_lexicon() -> frozenset[str]:
    return load_term_file(_data_path("curse_words.txt"))


@lru_cache(maxsize=None)
def default_variant_groups() -> tuple[frozenset[str], ...]:
    # The shipped file is comma-joined groups, one group per line, because
    # the group boundary has to survive reformatting tools that strip blank
    # lines; load_variant_groups handles the one-term-per-line layout too.
    groups = []
    for line in _data_path("variants.txt").read_text(encoding="utf-8").splitlines():
        terms = frozenset(t.strip().lower() for t in line.split(",") if t.strip())
        if terms:
            groups.append(terms)
    return tuple(groups)


@dataclass(frozen=True)
class Lexicons:
    """The term lists the normalizer consults."""
    stopwords: frozenset[str]
    seed_terms: frozenset[str]

    @classmethod
    def default(cls) -> "Lexicons":
        return cls(stopwords=default_stopwords(), seed_terms=default_seed_terms())


@dataclass
class NormalizedDoc:
    """Stemmed word/hashtag terms plus emoji tokens in source order."""
    stems: Counter = field(default_factory=Counter)
    emoji_tokens: tuple[str, ...] = ()


def _expand_seed_surfaces(seed_terms: Iterable[str]) -> frozenset[str]:
    expanded = set()
    for seed in seed_terms:
        s = seed.lower()
        expanded.add(s)
        expanded.add(s.lstrip("#"))
    return frozenset(expanded)


def _seed_stems(seed_terms: Iterable[str]) -> frozenset[str]:
    return frozenset(porter_stem(s.lower().lstrip("#")) for s in seed_terms)


def tokenize_and_normalize(text: str,
                           stopwords: frozenset[str] | None = None,
                           seed_terms: frozenset[str] | None = None) -> NormalizedDoc:
    """Normalize one document.

    Stopwords and seed terms are matched on the lowercase pre-stem surface
    (hashtags match both with and without their #). Any word whose stem
    collides with a seed term's stem is dropped as well, so seed vocabulary
    can never leak into features through inflected forms.
    """
    if stopwords is None:
        stopwords = default_stopwords()
    if seed_terms is None:
        seed_terms = default_seed_terms()
    seed_surfaces = _expand_seed_surfaces(seed_terms)
    seed_stems = _seed_stems(seed_terms)

    stems: Counter = Counter()
    for token in tokenize(text):
        if token.kind not in (WORD, HASHTAG):
            continue
        surface = token.surface.lower()
        term = surface.lstrip("#") if token.kind == HASHTAG else surface
        if surface in seed_surfaces or term in seed_surfaces:
            continue
        if term in stopwords:
            continue
        stemmed = porter_stem(term)
        if not stemmed or stemmed in seed_stems:
            continue
        stems[stemmed] += 1
    return NormalizedDoc(stems=stems,
                         emoji_tokens=tuple(emj.extract_emoji_tokens(text)))


def lower_word_terms(text: str) -> list[str]:
    """Lowercased word/hashtag terms before any stopword or seed filtering.

    This is the token stream curse-rate statistics run over.
    """
    terms = []
    for token in tokenize(text):
        if token.kind == WORD:
            terms.append(token.surface.lower())
        elif token.kind == HASHTAG:
            terms.append(token.surface.lower().lstrip("#"))
    return terms
