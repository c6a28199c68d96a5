"""gangscope: curate, analyze, and classify social-media profile corpora to
flag likely street-gang-affiliated profiles, with a human-in-the-loop
triage queue."""

__version__ = "0.1.0"

from .corpus import (CorpusSnapshot, LabelLog, ProfileRecord, TweetRecord,
                     apply_label, discover_candidates, filter_us_profiles,
                     ingest_corpus, replay_label_log, serialize_corpus)
from .textprep import Lexicons, NormalizedDoc, Token, tokenize, tokenize_and_normalize
from .emoji import EmojiToken, detect_chains, extract_emoji_events, extract_emoji_tokens
from .features import (BLOCKS, FeatureVector, Vocabulary, assemble_vector,
                       block_availability, build_vocabulary, extract_block)
from .models import ModelSpec, Prediction, TrainedModel, predict, train
from .evaluation import (ConfusionCounts, EvalReport, FoldAssignment,
                         compute_metrics, cross_validate, stratified_kfold)
from .analysis import (chain_cooccurrence, curse_rate, emoji_stats, top_terms,
                       youtube_stats)
from .clients import (ClientBundle, FixtureGeocoder, FixtureImageTagger,
                      FixtureVideoClient, ImageTags, VideoMetadata)
from .pipeline import (ModelBundle, ScoredProfile, load_bundle, save_bundle,
                       score_profiles, train_on_corpus)

__all__ = [name for name in dir() if not name.startswith("_")]
