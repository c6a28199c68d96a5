#!/usr/bin/env python3
"""Batch scoring and the human-verification queue, end to end in process.

Trains on the labeled part of a corpus, scores the unlabeled remainder,
builds the evidence-bearing triage queue, and walks it: label, conflict,
and the label log as the single source of truth.

For the HTTP version of this flow run `gangscope serve` and the browser UI
in frontend/.
"""

import tempfile
from pathlib import Path

from gangscope.corpus import LabelLog, UNLABELED, apply_label, replay_label_log
from gangscope.models import ModelSpec
from gangscope.pipeline import score_profiles, train_on_corpus
from gangscope.service import queue_from_scores
from gangscope.synth import SynthSpec, generate

workdir = Path(tempfile.mkdtemp(prefix="gangscope-triage-"))
result = generate(SynthSpec(n_gang=15, n_nongang=45, seed=33))
corpus = result.corpus
log = LabelLog(workdir / "labels.jsonl")

# Hold some profiles out as "new, unreviewed" by clearing their labels.
held_out = corpus.ids()[::6]
for pid in held_out:
    corpus = apply_label(corpus, pid, UNLABELED, "setup", log=log)
print(f"{len(held_out)} profiles await review\n")

bundle = train_on_corpus(corpus, ModelSpec(algorithm="random_forest",
                                           rng_seed=33,
                                           hyperparams=(("n_trees", 30),)),
                         clients=result.clients)
scored = score_profiles(corpus, bundle, clients=result.clients)
queue = queue_from_scores(scored, corpus, bundle, result.clients)

item = queue.next_pending()
print(f"highest-scoring pending item: {item.profile_id} (score {item.score:.3f})")
print("evidence shown to the analyst:")
for block, rows in item.evidence["blocks"].items():
    if rows:
        terms = ", ".join(r["term"] for r in rows)
        print(f"  {block}: {terms}")
if item.evidence["emoji_chains"]:
    print(f"  chains: {item.evidence['emoji_chains'][:2]}")
if item.evidence["image_tags"]:
    print(f"  image tags: {item.evidence['image_tags'][:6]}")
if item.evidence["youtube"]["keyword_hits"]:
    print(f"  video keywords: {item.evidence['youtube']['keyword_hits']}")

# The analyst decides; the write goes through the label log.
truth = result.true_labels[item.profile_id]
corpus = apply_label(corpus, item.profile_id, truth, "demo-analyst", log=log)
item.status = "labeled"
item.label = truth
print(f"\nlabeled {item.profile_id} as {truth} "
      f"(true class: {result.true_labels[item.profile_id]})")

nxt = queue.next_pending()
print(f"next pending item: {nxt.profile_id} (score {nxt.score:.3f})")

replayed = replay_label_log(result.corpus, log)
assert replayed.counts == corpus.counts
print(f"\nlabel log at {log.path} holds {len(log.entries())} entries; "
      "replaying it over the base corpus reproduces this state exactly.")
