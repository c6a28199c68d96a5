"""Adapters for external capabilities: image tagging, video metadata, geocoding.

Every adapter has a deterministic fixture mode keyed by local files, which is
the default (the hosted services this pipeline historically leaned on are
paid, defunct, or both). Custom live adapters can be plugged in by
implementing the same three-method surface. An adapter answers `None` for
"unavailable" — a missing key is data absence, never an error.

Fixture files are line-delimited JSON:
  image tags:  {"media_ref": ..., "tags": [[term, score], ...]}   (<= 20 tags)
  videos:      {"video_id": ..., "description": ..., "comments": [...]}
  geocodes:    {"location": ..., "region": "us" | "non_us"}
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from pathlib import Path
from typing import Mapping, Protocol, Sequence

logger = logging.getLogger(__name__)

MAX_IMAGE_TAGS = 20

GEO_US = "us"
GEO_NON_US = "non_us"
GEO_UNKNOWN = "unknown"


class FixtureError(ValueError):
    """Raised when a fixture file violates its schema."""


@dataclass(frozen=True)
class ImageTags:
    media_ref: str
    tags: tuple[tuple[str, float], ...]

    def terms(self) -> tuple[str, ...]:
        return tuple(term for term, _ in self.tags)


@dataclass(frozen=True)
class VideoMetadata:
    video_id: str
    description: str
    comments: tuple[str, ...]


class ImageTagClient(Protocol):
    def tag_image(self, media_ref: str) -> ImageTags | None: ...


class VideoClient(Protocol):
    def fetch_video_metadata(self, video_id: str) -> VideoMetadata | None: ...


class Geocoder(Protocol):
    def geocode(self, location_raw: str) -> str: ...


def _normalize_tags(media_ref: str, raw_tags) -> tuple[tuple[str, float], ...]:
    if not isinstance(raw_tags, list):
        raise FixtureError(f"{media_ref!r}: tags must be a list")
    if len(raw_tags) > MAX_IMAGE_TAGS:
        raise FixtureError(
            f"{media_ref!r}: {len(raw_tags)} tags exceeds the {MAX_IMAGE_TAGS} cap")
    tags = []
    for entry in raw_tags:
        try:
            term, score = entry
        except (TypeError, ValueError):
            raise FixtureError(f"{media_ref!r}: malformed tag entry {entry!r}") from None
        if not isinstance(term, str) or term != term.lower():
            raise FixtureError(f"{media_ref!r}: tag terms must be lowercase text")
        score = float(score)
        if not 0.0 <= score <= 1.0:
            raise FixtureError(f"{media_ref!r}: tag score {score} outside [0, 1]")
        tags.append((term, score))
    # Deterministic order: score descending, then lexicographic.
    tags.sort(key=lambda ts: (-ts[1], ts[0]))
    return tuple(tags)


def _read_jsonl(path: Path) -> list[dict]:
    rows = []
    for line_no, line in enumerate(path.read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        try:
            rows.append(json.loads(line))
        except json.JSONDecodeError as exc:
            raise FixtureError(f"{path}:{line_no}: invalid JSON ({exc.msg})") from None
    return rows


class FixtureImageTagger:
    def __init__(self, table: Mapping[str, Sequence] | None = None):
        self._table: dict[str, ImageTags] = {}
        for media_ref, raw_tags in (table or {}).items():
            self._table[media_ref] = ImageTags(media_ref, _normalize_tags(media_ref, list(raw_tags)))

    @classmethod
    def from_file(cls, path: str | Path) -> "FixtureImageTagger":
        table = {}
        for row in _read_jsonl(Path(path)):
            table[row["media_ref"]] = row.get("tags", [])
        return cls(table)

    def tag_image(self, media_ref: str) -> ImageTags | None:
        return self._table.get(media_ref)


class FixtureVideoClient:
    def __init__(self, table: Mapping[str, dict] | None = None):
        self._table: dict[str, VideoMetadata] = {}
        for video_id, meta in (table or {}).items():
            self._table[video_id] = VideoMetadata(
                video_id=video_id,
                description=str(meta.get("description", "")),
                comments=tuple(str(c) for c in meta.get("comments", ())))

    @classmethod
    def from_file(cls, path: str | Path) -> "FixtureVideoClient":
        table = {}
        for row in _read_jsonl(Path(path)):
            table[row["video_id"]] = row
        return cls(table)

    def fetch_video_metadata(self, video_id: str) -> VideoMetadata | None:
        return self._table.get(video_id)


class FixtureGeocoder:
    """Case-insensitive, whitespace-trimmed exact-match location lookup."""

    def __init__(self, table: Mapping[str, str] | None = None):
        self._table: dict[str, str] = {}
        for location, region in (table or {}).items():
            if region not in (GEO_US, GEO_NON_US):
                raise FixtureError(f"{location!r}: region must be us or non_us")
            self._table[location.strip().lower()] = region

    @classmethod
    def from_file(cls, path: str | Path) -> "FixtureGeocoder":
        table = {}
        for row in _read_jsonl(Path(path)):
            table[row["location"]] = row.get("region", GEO_NON_US)
        return cls(table)

    def geocode(self, location_raw: str) -> str:
        key = location_raw.strip().lower()
        if not key:
            return GEO_UNKNOWN
        return self._table.get(key, GEO_UNKNOWN)


@dataclass
class ClientBundle:
    """The external capabilities a pipeline run may consult."""
    image_tagger: ImageTagClient = field(default_factory=FixtureImageTagger)
    video_client: VideoClient = field(default_factory=FixtureVideoClient)
    geocoder: Geocoder = field(default_factory=FixtureGeocoder)

    @classmethod
    def from_fixture_dir(cls, fixtures_dir: str | Path) -> "ClientBundle":
        """Load image_tags.jsonl, videos.jsonl, geocodes.jsonl when present."""
        fixtures_dir = Path(fixtures_dir)
        bundle = cls()
        tags = fixtures_dir / "image_tags.jsonl"
        if tags.is_file():
            bundle.image_tagger = FixtureImageTagger.from_file(tags)
        videos = fixtures_dir / "videos.jsonl"
        if videos.is_file():
            bundle.video_client = FixtureVideoClient.from_file(videos)
        geo = fixtures_dir / "geocodes.jsonl"
        if geo.is_file():
            bundle.geocoder = FixtureGeocoder.from_file(geo)
        return bundle
