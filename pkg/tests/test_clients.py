"""Fixture adapter tests."""

import json

import pytest

from gangscope.clients import (ClientBundle, FixtureError, FixtureGeocoder,
                               FixtureImageTagger, FixtureVideoClient)


def test_image_tagger_returns_tags_verbatim():
    tagger = FixtureImageTagger({"m1": [["trigger", 0.9], ["people", 0.8]]})
    tags = tagger.tag_image("m1")
    assert tags.terms() == ("trigger", "people")
    assert tags.tags[0] == ("trigger", 0.9)


def test_image_tagger_missing_key_is_unavailable():
    assert FixtureImageTagger({}).tag_image("ghost") is None


def test_image_tagger_orders_by_score_then_term():
    tagger = FixtureImageTagger({"m": [["b", 0.5], ["a", 0.5], ["c", 0.9]]})
    assert tagger.tag_image("m").terms() == ("c", "a", "b")


def test_image_tagger_rejects_21_tags():
    table = {"m": [[f"t{i:02d}", 0.5] for i in range(21)]}
    with pytest.raises(FixtureError, match="21 tags"):
        FixtureImageTagger(table)


def test_image_tagger_rejects_uppercase_terms():
    with pytest.raises(FixtureError, match="lowercase"):
        FixtureImageTagger({"m": [["Trigger", 0.9]]})


def test_image_tagger_rejects_bad_score():
    with pytest.raises(FixtureError, match="outside"):
        FixtureImageTagger({"m": [["trigger", 1.5]]})


def test_video_client_lookup_and_miss():
    client = FixtureVideoClient({"v1": {"description": "gangsta hip-hop",
                                        "comments": ["fire", "classic"]}})
    meta = client.fetch_video_metadata("v1")
    assert meta.description == "gangsta hip-hop"
    assert meta.comments == ("fire", "classic")
    assert client.fetch_video_metadata("nope") is None


def test_geocoder_trimmed_case_insensitive():
    geo = FixtureGeocoder({"Los Angeles, CA": "us"})
    assert geo.geocode("los angeles, ca") == "us"
    assert geo.geocode("  LOS ANGELES, CA ") == "us"
    assert geo.geocode("") == "unknown"
    assert geo.geocode("atlantis") == "unknown"


def test_geocoder_rejects_bad_region():
    with pytest.raises(FixtureError, match="region"):
        FixtureGeocoder({"x": "mars"})


def test_bundle_from_fixture_dir(tmp_path):
    (tmp_path / "image_tags.jsonl").write_text(
        json.dumps({"media_ref": "m1", "tags": [["trigger", 0.9]]}) + "\n",
        encoding="utf-8")
    (tmp_path / "videos.jsonl").write_text(
        json.dumps({"video_id": "v1", "description": "d", "comments": []}) + "\n",
        encoding="utf-8")
    (tmp_path / "geocodes.jsonl").write_text(
        json.dumps({"location": "Chicago, IL", "region": "us"}) + "\n",
        encoding="utf-8")
    bundle = ClientBundle.from_fixture_dir(tmp_path)
    assert bundle.image_tagger.tag_image("m1").terms() == ("trigger",)
    assert bundle.video_client.fetch_video_metadata("v1").description == "d"
    assert bundle.geocoder.geocode("chicago, il") == "us"


def test_bundle_malformed_fixture_line(tmp_path):
    (tmp_path / "image_tags.jsonl").write_text("{oops\n", encoding="utf-8")
    with pytest.raises(FixtureError, match="invalid JSON"):
        ClientBundle.from_fixture_dir(tmp_path)


def test_empty_bundle_is_all_unavailable():
    bundle = ClientBundle()
    assert bundle.image_tagger.tag_image("x") is None
    assert bundle.video_client.fetch_video_metadata("x") is None
    assert bundle.geocoder.geocode("x") == "unknown"
