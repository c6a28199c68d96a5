#!/usr/bin/env python3
"""Class-comparison statistics: term ranks, curse rates, emoji, video links."""

from gangscope import emoji as emj
from gangscope.analysis import (chain_cooccurrence, curse_rate, emoji_stats,
                                top_terms, youtube_stats)
from gangscope.synth import SynthSpec, generate

result = generate(SynthSpec(n_gang=25, n_nongang=100, seed=21))
corpus, clients = result.corpus, result.clients

for label in ("gang", "nongang"):
    print(f"== {label} ==")
    ranked = top_terms(corpus, label, "T", k=5, clients=clients)
    print("  top tweet stems:      ", ", ".join(f"{t} ({c})" for t, c in ranked))
    ranked = top_terms(corpus, label, "P", k=5, clients=clients)
    print("  top profile stems:    ", ", ".join(f"{t} ({c})" for t, c in ranked))
    print(f"  curse rate:            {curse_rate(corpus, label):.4f}")

    stats = emoji_stats(corpus, label, top_k=5)
    dist = ", ".join(f"{e} {f:.2f}" for e, _, f in stats.distribution)
    print(f"  top emoji:             {dist}")
    pair_rate = chain_cooccurrence(corpus, label, emj.COP, emj.PISTOL)
    print(f"  cop->pistol chain in   {pair_rate:.2%} of profiles")

    yt = youtube_stats(corpus, label, ["gangsta", "hip-hop"],
                       clients.video_client)
    print(f"  video links:           {yt.share_fraction:.2%} of profiles share, "
          f"{yt.keyword_fraction:.2%} of links match keywords, "
          f"{yt.mean_links_per_sharing_profile:.1f} links per sharing profile")
    print()
