"""Generator invariants: determinism, planted signals, fixture files."""

from gangscope import emoji as emj
from gangscope.analysis import chain_cooccurrence
from gangscope.clients import ClientBundle
from gangscope.corpus import dumps_record
from gangscope.features import FULL_MASK, block_availability
from gangscope.synth import SynthSpec, generate, write_fixture_files


def test_generator_deterministic():
    a = generate(SynthSpec(n_gang=5, n_nongang=10, seed=3))
    b = generate(SynthSpec(n_gang=5, n_nongang=10, seed=3))
    assert [dumps_record(r) for r in a.corpus] == [dumps_record(r) for r in b.corpus]
    assert a.tables == b.tables


def test_generator_seed_changes_output():
    a = generate(SynthSpec(n_gang=5, n_nongang=10, seed=3))
    b = generate(SynthSpec(n_gang=5, n_nongang=10, seed=4))
    assert [dumps_record(r) for r in a.corpus] != [dumps_record(r) for r in b.corpus]


def test_complete_spec_gives_full_masks(synth_complete):
    for record in synth_complete.corpus:
        assert block_availability(record, synth_complete.clients) == FULL_MASK


def test_cop_pistol_chain_only_in_gang(synth_complete):
    assert chain_cooccurrence(synth_complete.corpus, "gang",
                              emj.COP, emj.PISTOL) > 0.5
    assert chain_cooccurrence(synth_complete.corpus, "nongang",
                              emj.COP, emj.PISTOL) == 0.0


def test_missing_rates_create_incomplete_profiles(synth_holes):
    masks = [block_availability(r, synth_holes.clients)
             for r in synth_holes.corpus]
    assert any(m != FULL_MASK for m in masks)
    assert any(m == FULL_MASK for m in masks)


def test_fixture_files_round_trip(tmp_path, synth_complete):
    write_fixture_files(synth_complete.tables, tmp_path)
    bundle = ClientBundle.from_fixture_dir(tmp_path)
    ref, tags = next(iter(synth_complete.tables["image_tags"].items()))
    direct = synth_complete.clients.image_tagger.tag_image(ref)
    assert bundle.image_tagger.tag_image(ref) == direct
    vid = next(iter(synth_complete.tables["videos"]))
    assert (bundle.video_client.fetch_video_metadata(vid)
            == synth_complete.clients.video_client.fetch_video_metadata(vid))
    assert bundle.geocoder.geocode("Chicago, IL") == "us"
