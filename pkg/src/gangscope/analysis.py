"""Corpus statistics comparing the two classes: term ranks, curse rates,
emoji distributions and chains, and linked-video statistics.

Every statistic here is a plain aggregation that an independent brute-force
pass can recompute exactly; rankings break ties lexicographically so output
is a total order.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .clients import ClientBundle, VideoClient
from .corpus import CorpusSnapshot
from .emoji import chain_bigrams, extract_emoji_events
from .features import BLOCKS, extract_profile_terms
from .textprep import Lexicons, default_curse_lexicon, lower_word_terms


class AnalysisError(ValueError):
    pass


def _class_records(corpus: CorpusSnapshot, label: str):
    return [r for r in corpus if r.label == label]


def top_terms(corpus: CorpusSnapshot, label: str, block: str, k: int,
              clients: ClientBundle | None = None,
              lexicons: Lexicons | None = None) -> list[tuple[str, int]]:
    """Top-k (term, aggregate count) for one class and block, ties lexicographic."""
    if block not in BLOCKS:
        raise AnalysisError(f"unknown block {block!r}")
    totals: Counter = Counter()
    for record in _class_records(corpus, label):
        totals.update(extract_profile_terms(record, clients, lexicons)[block])
    ranked = sorted(totals.items(), key=lambda tc: (-tc[1], tc[0]))
    return ranked[:k]


def curse_rate(corpus: CorpusSnapshot, label: str,
               lexicon: frozenset[str] | None = None) -> float:
    """Fraction of word tokens (pre-stopword-removal, lowercased) that are
    curse terms, over the class's tweets."""
    if lexicon is None:
        lexicon = default_curse_lexicon()
    if not lexicon:
        raise AnalysisError("empty curse lexicon")
    curse_terms = frozenset(t.lstrip("#") for t in lexicon)
    words = 0
    curses = 0
    for record in _class_records(corpus, label):
        for tweet in record.tweets:
            for term in lower_word_terms(tweet.text):
                words += 1
                if term in curse_terms:
                    curses += 1
    return curses / words if words else 0.0


@dataclass(frozen=True)
class EmojiStats:
    """Ranked emoji distribution plus the chain-bigram table for one class."""
    distribution: tuple[tuple[str, int, float], ...]  # (emoji, count, fraction)
    total_tokens: int
    bigrams: tuple[tuple[tuple[str, str], int], ...]

    def to_dict(self) -> dict:
        return {
            "total_tokens": self.total_tokens,
            "distribution": [
                {"emoji": e, "count": c, "fraction": f}
                for e, c, f in self.distribution],
            "bigrams": [
                {"first": a, "second": b, "count": c}
                for (a, b), c in self.bigrams],
        }


def emoji_stats(corpus: CorpusSnapshot, label: str,
                top_k: int | None = None) -> EmojiStats:
    counts: Counter = Counter()
    pair_counts: Counter = Counter()
    for record in _class_records(corpus, label):
        for tweet in record.tweets:
            events = extract_emoji_events(tweet.text)
            counts.update(e.surface for e in events)
            pair_counts.update(chain_bigrams(events))
    total = sum(counts.values())
    ranked = sorted(counts.items(), key=lambda tc: (-tc[1], tc[0]))
    if top_k is not None:
        ranked = ranked[:top_k]
    distribution = tuple((emoji, count, count / total if total else 0.0)
                         for emoji, count in ranked)
    bigrams = tuple(sorted(pair_counts.items(),
                           key=lambda pc: (-pc[1], pc[0])))
    return EmojiStats(distribution=distribution, total_tokens=total,
                      bigrams=bigrams)


def chain_cooccurrence(corpus: CorpusSnapshot, label: str,
                       emoji_a: str, emoji_b: str) -> float:
    """Fraction of the class's profiles with the ordered chain bigram (a, b).

    A profile counts once no matter how often the pair repeats.
    """
    records = _class_records(corpus, label)
    if not records:
        return 0.0
    wanted = (emoji_a, emoji_b)
    hits = 0
    for record in records:
        if any(wanted in chain_bigrams(extract_emoji_events(t.text))
               for t in record.tweets):
            hits += 1
    return hits / len(records)


@dataclass(frozen=True)
class YoutubeStats:
    share_fraction: float          # profiles with >= 1 link / class size
    keyword_fraction: float        # resolvable links matching any keyword
    mean_links_per_sharing_profile: float

    def to_dict(self) -> dict:
        return {"share_fraction": self.share_fraction,
                "keyword_fraction": self.keyword_fraction,
                "mean_links_per_sharing_profile":
                    self.mean_links_per_sharing_profile}


def youtube_stats(corpus: CorpusSnapshot, label: str,
                  keywords: Sequence[str],
                  video_client: VideoClient) -> YoutubeStats:
    """Video-link statistics for one class.

    Keyword matching is a case-insensitive substring search over the video
    description; links whose video does not resolve drop out of the keyword
    denominator. All-zero inputs report 0 for every field.
    """
    records = _class_records(corpus, label)
    lowered = [kw.lower() for kw in keywords]
    sharing_profiles = 0
    total_links = 0
    resolvable_links = 0
    keyword_links = 0
    for record in records:
        profile_links = 0
        for tweet in record.tweets:
            for video_id in tweet.youtube_video_ids:
                profile_links += 1
                meta = video_client.fetch_video_metadata(video_id)
                if meta is None:
                    continue
                resolvable_links += 1
                description = meta.description.lower()
                if any(kw in description for kw in lowered):
                    keyword_links += 1
        total_links += profile_links
        if profile_links:
            sharing_profiles += 1
    return YoutubeStats(
        share_fraction=sharing_profiles / len(records) if records else 0.0,
        keyword_fraction=keyword_links / resolvable_links if resolvable_links else 0.0,
        mean_links_per_sharing_profile=(
            total_links / sharing_profiles if sharing_profiles else 0.0))


def term_table_tsv(rows: Sequence[tuple[str, int]]) -> str:
    lines = ["term\tcount"]
    lines.extend(f"{term}\t{count}" for term, count in rows)
    return "\n".join(lines) + "\n"
