#!/usr/bin/env python3
"""Feature blocks, availability masks, and the two fusion modes.

Shows how a profile becomes a block-structured sparse vector, what the
availability mask means, and how model1 (zero out missing blocks) differs
from model2 (complete profiles only).
"""

from gangscope.features import (BLOCKS, FULL_MASK, assemble_vector,
                                block_availability, build_vocabulary,
                                mask_to_string)
from gangscope.synth import SynthSpec, generate

result = generate(SynthSpec(
    n_gang=10, n_nongang=20, seed=3,
    missing_rate={"I": 0.4, "Y": 0.4}))
records = list(result.corpus)

vocab = build_vocabulary(records, clients=result.clients)
print("vocabulary block sizes:",
      {b: vocab.size(b) for b in vocab.blocks},
      f"(total {vocab.total_dim} columns)")
print(f"fingerprint: {vocab.fingerprint[:16]}...\n")

complete = incomplete = None
for record in records:
    mask = block_availability(record, result.clients)
    if mask == FULL_MASK and complete is None:
        complete = record
    if mask != FULL_MASK and incomplete is None:
        incomplete = record

print(f"complete profile {complete.profile_id}: "
      f"mask {mask_to_string(block_availability(complete, result.clients))} "
      f"(order {''.join(BLOCKS)})")
v1 = assemble_vector(complete, vocab, "model1", result.clients)
v2 = assemble_vector(complete, vocab, "model2", result.clients)
print(f"  model1 and model2 agree on complete data: {v1 == v2}")

mask = block_availability(incomplete, result.clients)
print(f"\nincomplete profile {incomplete.profile_id}: mask {mask_to_string(mask)}")
v1 = assemble_vector(incomplete, vocab, "model1", result.clients)
v2 = assemble_vector(incomplete, vocab, "model2", result.clients)
print(f"  model1 vector: {len(v1.counts)} nonzero columns, "
      f"missing blocks zeroed out")
print(f"  model2 result: {'skip-marker' if v2 is None else 'vector'} "
      f"(model2 trains only on profiles with every block)")

nonzero_blocks = set()
for column, _ in v1.counts:
    block, _ = vocab.term_at(column)
    nonzero_blocks.add(block)
print(f"  blocks with nonzero columns: {sorted(nonzero_blocks)}")
