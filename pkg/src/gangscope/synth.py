"""Synthetic corpus generator with class-disjoint planted signals.

Builds a labeled corpus whose two classes use disjoint term pools in every
feature block: tweet words, description words, emoji (including a
cop-then-pistol chain planted only in gang profiles), image tags, and
linked-video text. Deterministic for a given seed.

Two knobs weaken the plant per block:
  missing_rate[block]    fraction of profiles with no data at all for the
                         block (availability bit 0)
  signal_dropout[block]  fraction of profiles whose block content comes from
                         the class-neutral pool instead (present but
                         uninformative)
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping

import numpy as np

from . import emoji as emj
from .clients import ClientBundle, FixtureGeocoder, FixtureImageTagger, FixtureVideoClient
from .corpus import CorpusSnapshot, ProfileRecord, make_tweet, GANG, NONGANG, UNLABELED
from .features import BLOCKS

GANG_TWEET_TERMS = ("smoke", "high", "money", "opps", "gang", "trap",
                    "drill", "block", "shooter", "blood")
NONGANG_TWEET_TERMS = ("love", "happy", "coffee", "book", "travel", "garden",
                       "photo", "recipe", "sunshine", "puppy")
NEUTRAL_TWEET_TERMS = ("today", "weather", "city", "morning", "weekend",
                       "lunch", "meeting", "evening", "friday", "street")

GANG_PROFILE_TERMS = ("free", "rip", "gang", "streets", "brazy")
NONGANG_PROFILE_TERMS = ("love", "life", "live", "music", "book")
NEUTRAL_PROFILE_TERMS = ("hello", "world", "account", "official", "daily")

GANG_EMOJI = (emj.COP, emj.PISTOL, emj.FUEL_PUMP, emj.HUNDRED_POINTS,
              emj.IMP, emj.SKULL, emj.MONEY_BAG, emj.COLLISION)
NONGANG_EMOJI = (emj.FACE_WITH_TEARS_OF_JOY, emj.RED_HEART, emj.SPARKLES,
                 emj.MUSICAL_NOTES, emj.SUN, emj.DOG_FACE)
NEUTRAL_EMOJI = (emj.FIRE,)

GANG_IMAGE_TAGS = ("trigger", "bullet", "worship", "rifle", "cash", "tattoo")
NONGANG_IMAGE_TAGS = ("beach", "seashore", "dawn", "wildlife", "sand", "pet")
SHARED_IMAGE_TAGS = ("people", "adult", "man")
NEUTRAL_IMAGE_TAGS = ("indoor", "outdoor", "portrait", "group")

GANG_VIDEO_TERMS = ("gangsta", "rap", "mixtape", "anthem", "drill")
NONGANG_VIDEO_TERMS = ("tutorial", "vlog", "piano", "cover", "cooking")
NEUTRAL_VIDEO_TERMS = ("video", "channel", "episode", "clip", "daily")
GANG_VIDEO_LEAD = "gangsta hip-hop"
NONGANG_VIDEO_LEAD = "weekly playlist"

US_LOCATIONS = ("Chicago, IL", "Los Angeles, CA", "Dayton, OH", "Atlanta, GA")
NON_US_LOCATIONS = ("London, UK", "Toronto, ON")

SEED_HASHTAG = "#FreeDaGuys"


@dataclass(frozen=True)
class SynthSpec:
    n_gang: int = 60
    n_nongang: int = 300
    seed: int = 7
    missing_rate: Mapping[str, float] = field(default_factory=dict)
    signal_dropout: Mapping[str, float] = field(default_factory=dict)
    labeled: bool = True


@dataclass
class SynthResult:
    corpus: CorpusSnapshot
    clients: ClientBundle
    tables: dict
    true_labels: dict[str, str]


def _pick(rng: np.random.Generator, pool, n: int) -> list[str]:
    return [pool[int(i)] for i in rng.integers(0, len(pool), size=n)]


def _rate(table: Mapping[str, float], block: str) -> float:
    return float(table.get(block, 0.0))


def generate(spec: SynthSpec) -> SynthResult:
    rng = np.random.default_rng(spec.seed)
    records: list[ProfileRecord] = []
    image_table: dict[str, list] = {}
    video_table: dict[str, dict] = {}
    geo_table: dict[str, str] = {loc: "us" for loc in US_LOCATIONS}
    geo_table.update({loc: "non_us" for loc in NON_US_LOCATIONS})
    true_labels: dict[str, str] = {}

    plan = ([(GANG, f"g{i:04d}") for i in range(spec.n_gang)]
            + [(NONGANG, f"n{i:04d}") for i in range(spec.n_nongang)])

    for label, pid in plan:
        gangish = label == GANG
        missing = {b: rng.random() < _rate(spec.missing_rate, b) for b in BLOCKS}
        neutral = {b: rng.random() < _rate(spec.signal_dropout, b) for b in BLOCKS}

        tweet_pool = (NEUTRAL_TWEET_TERMS if neutral["T"]
                      else (GANG_TWEET_TERMS if gangish else NONGANG_TWEET_TERMS))
        emoji_pool = (NEUTRAL_EMOJI if neutral["E"]
                      else (GANG_EMOJI if gangish else NONGANG_EMOJI))
        profile_pool = (NEUTRAL_PROFILE_TERMS if neutral["P"]
                        else (GANG_PROFILE_TERMS if gangish else NONGANG_PROFILE_TERMS))
        tag_pool = (NEUTRAL_IMAGE_TAGS if neutral["I"]
                    else (GANG_IMAGE_TAGS if gangish else NONGANG_IMAGE_TAGS))
        video_pool = (NEUTRAL_VIDEO_TERMS if neutral["Y"]
                      else (GANG_VIDEO_TERMS if gangish else NONGANG_VIDEO_TERMS))
        video_lead = ("" if neutral["Y"]
                      else (GANG_VIDEO_LEAD if gangish else NONGANG_VIDEO_LEAD))

        # Description (block P).
        if missing["P"]:
            description = ""
        else:
            words = _pick(rng, profile_pool, int(rng.integers(3, 6)))
            if gangish and not neutral["P"] and rng.random() < 0.25:
                words.append(SEED_HASHTAG)
            description = " ".join(words)

        # Tweets (blocks T and E) plus video links (block Y).
        n_tweets = int(rng.integers(6, 11))
        tweets = []
        n_videos = 0 if missing["Y"] else int(rng.integers(1, 4))
        chain_planted = False
        for t in range(n_tweets):
            parts: list[str] = []
            if not missing["T"]:
                parts.extend(_pick(rng, tweet_pool, int(rng.integers(3, 7))))
            if not missing["E"] and rng.random() < 0.7:
                if gangish and not neutral["E"] and (not chain_planted or rng.random() < 0.3):
                    parts.append(emj.COP + emj.PISTOL)
                    chain_planted = True
                parts.extend(_pick(rng, emoji_pool, int(rng.integers(1, 3))))
            if n_videos > 0 and t < n_videos:
                video_id = f"v{pid}{t}"
                parts.append(f"https://youtu.be/{video_id}")
                comments = [" ".join(_pick(rng, video_pool, 4))
                            for _ in range(int(rng.integers(1, 4)))]
                video_table[video_id] = {
                    "description": (video_lead + " "
                                    + " ".join(_pick(rng, video_pool, 5))).strip(),
                    "comments": comments,
                }
            text = " ".join(parts)
            retweeted = None
            if gangish and rng.random() < 0.15 and records:
                same_class = [r.profile_id for r in records
                              if true_labels[r.profile_id] == label]
                if same_class:
                    retweeted = same_class[int(rng.integers(0, len(same_class)))]
            tweets.append(make_tweet(f"{pid}-t{t}", text,
                                     retweeted_author_id=retweeted))

        # Images (block I).
        profile_image_ref = cover_image_ref = None
        if not missing["I"]:
            profile_image_ref = f"img-{pid}-profile"
            cover_image_ref = f"img-{pid}-cover"
            for ref in (profile_image_ref, cover_image_ref):
                tags = sorted(set(_pick(rng, tag_pool, 4))
                              | set(_pick(rng, SHARED_IMAGE_TAGS, 2)))
                image_table[ref] = [
                    [term, round(float(s), 4)]
                    for term, s in zip(tags, rng.uniform(0.5, 1.0, len(tags)))]

        location_pool = US_LOCATIONS if rng.random() < 0.9 else NON_US_LOCATIONS
        location = location_pool[int(rng.integers(0, len(location_pool)))]

        followers = frozenset(r.profile_id for r in records[-3:]
                              if rng.random() < 0.3)
        records.append(ProfileRecord(
            profile_id=pid,
            description=description,
            location_raw=location,
            tweets=tuple(tweets),
            follower_ids=followers,
            followee_ids=frozenset(),
            profile_image_ref=profile_image_ref,
            cover_image_ref=cover_image_ref,
            label=label if spec.labeled else UNLABELED,
            provenance="stream_sample",
        ))
        true_labels[pid] = label

    tables = {"image_tags": image_table, "videos": video_table,
              "geocodes": geo_table}
    clients = ClientBundle(
        image_tagger=FixtureImageTagger(image_table),
        video_client=FixtureVideoClient(video_table),
        geocoder=FixtureGeocoder(geo_table))
    return SynthResult(corpus=CorpusSnapshot(records), clients=clients,
                       tables=tables, true_labels=true_labels)


def write_fixture_files(tables: dict, fixtures_dir: str | Path) -> None:
    """Write the generator's client tables as fixture files."""
    fixtures_dir = Path(fixtures_dir)
    fixtures_dir.mkdir(parents=True, exist_ok=True)
    with (fixtures_dir / "image_tags.jsonl").open("w", encoding="utf-8") as fh:
        for ref in sorted(tables["image_tags"]):
            fh.write(json.dumps({"media_ref": ref,
                                 "tags": tables["image_tags"][ref]},
                                ensure_ascii=False) + "\n")
    with (fixtures_dir / "videos.jsonl").open("w", encoding="utf-8") as fh:
        for vid in sorted(tables["videos"]):
            row = {"video_id": vid, **tables["videos"][vid]}
            fh.write(json.dumps(row, ensure_ascii=False) + "\n")
    with (fixtures_dir / "geocodes.jsonl").open("w", encoding="utf-8") as fh:
        for loc in sorted(tables["geocodes"]):
            fh.write(json.dumps({"location": loc,
                                 "region": tables["geocodes"][loc]},
                                ensure_ascii=False) + "\n")
