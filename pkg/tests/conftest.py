"""Shared fixtures: hand-built profiles and synthetic corpora."""

import pytest

from gangscope.clients import (ClientBundle, FixtureGeocoder,
                               FixtureImageTagger, FixtureVideoClient)
from gangscope.corpus import ProfileRecord, make_tweet
from gangscope import emoji as emj
from gangscope.synth import SynthSpec, generate


def build_profile(pid, label="unlabeled", description="", tweet_texts=(),
                  profile_image_ref=None, cover_image_ref=None, **kwargs):
    tweets = tuple(make_tweet(f"{pid}-t{i}", text)
                   for i, text in enumerate(tweet_texts))
    return ProfileRecord(profile_id=pid, label=label, description=description,
                         tweets=tweets, profile_image_ref=profile_image_ref,
                         cover_image_ref=cover_image_ref, **kwargs)


@pytest.fixture()
def feature_clients():
    return ClientBundle(
        image_tagger=FixtureImageTagger({
            "img-full-profile": [["trigger", 0.9], ["people", 0.7]],
            "img-full-cover": [["worship", 0.8], ["people", 0.6]],
        }),
        video_client=FixtureVideoClient({
            "vid00000full": {"description": "gangsta hip-hop anthem",
                             "comments": ["so real", "classic drill"]},
        }),
        geocoder=FixtureGeocoder({"Chicago, IL": "us"}))


@pytest.fixture()
def full_profile():
    return build_profile(
        "full", label="gang",
        description="free rip gang",
        tweet_texts=[
            f"money smoke opps {emj.COP}{emj.PISTOL}",
            "watch https://youtu.be/vid00000full tonight",
            f"trap high {emj.FUEL_PUMP}",
        ],
        profile_image_ref="img-full-profile",
        cover_image_ref="img-full-cover")


@pytest.fixture()
def empty_profile():
    return build_profile("void")


@pytest.fixture(scope="session")
def synth_complete():
    """Fully-populated labeled corpus: every profile has all five blocks."""
    return generate(SynthSpec(n_gang=12, n_nongang=28, seed=11))


@pytest.fixture(scope="session")
def synth_holes():
    """50-profile corpus with planted missing blocks."""
    return generate(SynthSpec(
        n_gang=15, n_nongang=35, seed=23,
        missing_rate={"T": 0.15, "P": 0.2, "E": 0.2, "I": 0.3, "Y": 0.3}))
