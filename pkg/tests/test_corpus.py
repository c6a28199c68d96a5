"""Corpus ingestion, round-trip, labeling, and discovery tests."""

import json

import pytest
from hypothesis import given, strategies as st

from gangscope.clients import FixtureGeocoder
from gangscope.corpus import (CorpusError, CorpusSnapshot, LabelLog,
                              ProfileRecord, TweetRecord, apply_label,
                              discover_candidates, dumps_record,
                              extract_youtube_ids, filter_us_profiles,
                              ingest_corpus, make_tweet, replay_label_log,
                              serialize_corpus)


def line(profile_id, **overrides):
    obj = {"profile_id": profile_id, "description": "", "location_raw": "",
           "tweets": [], "follower_ids": [], "followee_ids": []}
    obj.update(overrides)
    return json.dumps(obj, ensure_ascii=False)


def write_corpus(tmp_path, lines, name="corpus.jsonl"):
    path = tmp_path / name
    path.write_text("\n".join(lines) + ("\n" if lines else ""), encoding="utf-8")
    return path


def test_ingest_empty_file(tmp_path):
    path = write_corpus(tmp_path, [])
    corpus = ingest_corpus(path)
    assert len(corpus) == 0


def test_ingest_two_records(tmp_path):
    path = write_corpus(tmp_path, [line("a"), line("b")])
    corpus = ingest_corpus(path)
    assert len(corpus) == 2
    assert corpus.counts["unlabeled"] == 2


def test_ingest_rejects_duplicate_id(tmp_path):
    path = write_corpus(tmp_path, [line("a"), line("a")])
    with pytest.raises(CorpusError, match="line 2.*duplicate"):
        ingest_corpus(path)


def test_ingest_reports_line_number_on_bad_json(tmp_path):
    path = write_corpus(tmp_path, [line("a"), "{not json"])
    with pytest.raises(CorpusError, match="line 2"):
        ingest_corpus(path)


def test_ingest_unreadable_path(tmp_path):
    with pytest.raises(CorpusError, match="not readable"):
        ingest_corpus(tmp_path / "absent.jsonl")


def test_tweet_cap_reject_names_record(tmp_path):
    tweets = [{"tweet_id": f"t{i}", "text": "x"} for i in range(3201)]
    path = write_corpus(tmp_path, [line("big", tweets=tweets)])
    with pytest.raises(CorpusError, match="big.*3201.*3200"):
        ingest_corpus(path, cap_policy="reject")


def test_tweet_cap_truncate_keeps_first_3200(tmp_path):
    tweets = [{"tweet_id": f"t{i}", "text": "x"} for i in range(3201)]
    path = write_corpus(tmp_path, [line("big", tweets=tweets)])
    corpus = ingest_corpus(path, cap_policy="truncate")
    assert len(corpus["big"].tweets) == 3200
    assert corpus["big"].tweets[-1].tweet_id == "t3199"


def test_description_normalized_and_truncated(tmp_path):
    description = "word  " * 60  # collapses to 299 chars
    path = write_corpus(tmp_path, [line("a", description=description)])
    corpus = ingest_corpus(path)
    assert len(corpus["a"].description) == 160
    assert "  " not in corpus["a"].description


def test_unknown_keys_preserved_on_round_trip(tmp_path):
    raw = {"profile_id": "a", "display_hint": {"color": "red"}, "zz_custom": 7}
    path = write_corpus(tmp_path, [json.dumps(raw)])
    corpus = ingest_corpus(path)
    out = json.loads(dumps_record(corpus["a"]))
    assert out["display_hint"] == {"color": "red"}
    assert out["zz_custom"] == 7


def test_ingest_serialize_ingest_round_trips_bit_identically(tmp_path):
    lines = [
        line("a", description="FreeDaGuys #RIPDaGuys \U0001F52B", label="gang",
             provenance="seed_term",
             tweets=[{"tweet_id": "t0",
                      "text": "watch https://youtu.be/abc123XYZ_- now",
                      "retweeted_author_id": "b"}]),
        line("b", follower_ids=["a", "c"], followee_ids=["a"]),
    ]
    path = write_corpus(tmp_path, lines)
    first = ingest_corpus(path)
    out1 = tmp_path / "round1.jsonl"
    serialize_corpus(first, out1)
    second = ingest_corpus(out1)
    out2 = tmp_path / "round2.jsonl"
    serialize_corpus(second, out2)
    assert out1.read_bytes() == out2.read_bytes()


def test_youtube_id_extraction():
    text = ("see https://www.youtube.com/watch?v=dQw4w9WgXcQ and "
            "https://youtu.be/abc_def1234 and https://youtube.com/watch?v=dQw4w9WgXcQ")
    assert extract_youtube_ids(text) == ("dQw4w9WgXcQ", "abc_def1234")


def test_tweet_video_ids_must_be_extractable():
    with pytest.raises(CorpusError, match="not extractable"):
        make_tweet("t0", "no links here", youtube_video_ids=["ghost1"])


def test_tweet_video_ids_subset_preserved():
    tweet = make_tweet("t0", "https://youtu.be/keepme12345 x",
                       youtube_video_ids=[])
    assert tweet.youtube_video_ids == ()
    derived = make_tweet("t1", "https://youtu.be/keepme12345 x")
    assert derived.youtube_video_ids == ("keepme12345",)


# --- labeling ---------------------------------------------------------------

def small_corpus():
    return CorpusSnapshot([
        ProfileRecord(profile_id="a"),
        ProfileRecord(profile_id="b"),
        ProfileRecord(profile_id="c", label="gang"),
    ])


def test_apply_label_updates_counts():
    corpus = small_corpus()
    updated = apply_label(corpus, "a", "gang", "ann")
    assert updated.counts["gang"] == 2
    assert updated.counts["unlabeled"] == 1
    # original snapshot untouched
    assert corpus.counts["gang"] == 1


def test_relabel_counts_final_label_only():
    corpus = small_corpus()
    corpus = apply_label(corpus, "a", "gang", "ann")
    corpus = apply_label(corpus, "a", "nongang", "ann")
    assert corpus.counts["gang"] == 1
    assert corpus.counts["nongang"] == 1


def test_apply_label_unknown_id():
    corpus = small_corpus()
    with pytest.raises(CorpusError, match="unknown profile_id"):
        apply_label(corpus, "zz", "gang", "ann")
    assert corpus.counts == small_corpus().counts


def test_label_log_replay_reproduces_state(tmp_path):
    log = LabelLog(tmp_path / "labels.jsonl")
    base = small_corpus()
    current = apply_label(base, "a", "gang", "ann", log=log)
    current = apply_label(current, "b", "unsure", "ann", log=log)
    current = apply_label(current, "a", "nongang", "bob", log=log)

    replayed = replay_label_log(small_corpus(), LabelLog(tmp_path / "labels.jsonl"))
    assert replayed.counts == current.counts
    for pid in ("a", "b", "c"):
        assert replayed[pid].label == current[pid].label
        assert replayed[pid].annotator == current[pid].annotator


@given(st.lists(st.tuples(st.sampled_from(["a", "b", "c"]),
                          st.sampled_from(["gang", "nongang", "unsure"])),
                max_size=12))
def test_counts_equal_recount_after_any_label_sequence(moves):
    corpus = small_corpus()
    log = LabelLog()
    for pid, label in moves:
        corpus = apply_label(corpus, pid, label, "h", log=log,
                             timestamp="2020-01-01T00:00:00+00:00")
    recount = {}
    for record in corpus:
        recount[record.label] = recount.get(record.label, 0) + 1
    assert {k: v for k, v in corpus.counts.items() if v} == recount
    replayed = replay_label_log(small_corpus(), log)
    assert replayed.counts == corpus.counts


# --- discovery --------------------------------------------------------------

def discovery_corpus():
    return CorpusSnapshot([
        ProfileRecord(profile_id="seed1", description="FreeDaGuys #RIPDaGuys",
                      tweets=(TweetRecord("t1", "rt", retweeted_author_id="hit1"),
                              TweetRecord("t2", "rt", retweeted_author_id="labeled1")),
                      follower_ids=frozenset({"fol1"}),
                      followee_ids=frozenset({"fee1"})),
        ProfileRecord(profile_id="hit1", description="#FreeTheGuys forever"),
        ProfileRecord(profile_id="labeled1", description="#RIPDaGuys",
                      label="gang"),
        ProfileRecord(profile_id="other", description="gardening and tea"),
    ])


def test_seed_term_substring_match():
    found = discover_candidates(discovery_corpus(), "seed_terms", ["#RIPDaGuys"])
    assert found == ["seed1"]  # labeled1 is excluded: already labeled


def test_seed_term_variant_expansion():
    corpus = discovery_corpus()
    assert discover_candidates(corpus, "seed_terms", ["#FreeDaGuys"]) == ["seed1"]
    expanded = discover_candidates(corpus, "seed_terms", ["#FreeDaGuys"],
                                   expand_variants=True)
    assert expanded == ["hit1", "seed1"]


def test_seed_terms_monotone_under_term_addition():
    corpus = discovery_corpus()
    base = set(discover_candidates(corpus, "seed_terms", ["#FreeDaGuys"]))
    more = set(discover_candidates(corpus, "seed_terms",
                                   ["#FreeDaGuys", "gardening"]))
    assert base <= more


def test_empty_term_list_rejected():
    with pytest.raises(CorpusError, match="empty term list"):
        discover_candidates(discovery_corpus(), "seed_terms", [])


def test_retweet_expansion_single_edge():
    corpus = CorpusSnapshot([
        ProfileRecord(profile_id="A",
                      tweets=(TweetRecord("t", "x", retweeted_author_id="B"),)),
        ProfileRecord(profile_id="B"),
    ])
    assert discover_candidates(corpus, "retweet", ["A"]) == ["B"]


def test_retweet_excludes_seeds_and_labeled():
    found = discover_candidates(discovery_corpus(), "retweet", ["seed1"])
    assert found == ["hit1"]  # labeled1 excluded, seed excluded


def test_follow_union_and_cap():
    found = discover_candidates(discovery_corpus(), "follow", ["seed1"])
    assert found == ["fee1", "fol1"]
    capped = discover_candidates(discovery_corpus(), "follow", ["seed1"], cap=1)
    assert capped == ["fee1"]


def test_expansion_unknown_seed():
    with pytest.raises(CorpusError, match="unknown seed id"):
        discover_candidates(discovery_corpus(), "retweet", ["ghost"])


def test_expansion_never_returns_seed_or_labeled():
    corpus = discovery_corpus()
    for method in ("retweet", "follow"):
        found = discover_candidates(corpus, method, ["seed1"])
        assert "seed1" not in found
        assert "labeled1" not in found


# --- US filter --------------------------------------------------------------

def test_filter_us_profiles():
    corpus = CorpusSnapshot([
        ProfileRecord(profile_id="chi", location_raw="Chicago, IL"),
        ProfileRecord(profile_id="lon", location_raw="London, UK"),
        ProfileRecord(profile_id="na", location_raw=""),
        ProfileRecord(profile_id="odd", location_raw="somewhere odd"),
    ])
    geocoder = FixtureGeocoder({"Chicago, IL": "us", "London, UK": "non_us"})
    filtered = filter_us_profiles(corpus, geocoder)
    assert filtered.ids() == ["chi"]


def test_filter_us_empty_result():
    corpus = CorpusSnapshot([ProfileRecord(profile_id="x", location_raw="Paris")])
    filtered = filter_us_profiles(corpus, FixtureGeocoder({}))
    assert len(filtered) == 0


def test_filter_us_geocoder_failure_discards():
    class ExplodingGeocoder:
        def geocode(self, location):
            raise RuntimeError("boom")

    corpus = CorpusSnapshot([ProfileRecord(profile_id="x", location_raw="Chicago")])
    filtered = filter_us_profiles(corpus, ExplodingGeocoder())
    assert len(filtered) == 0
