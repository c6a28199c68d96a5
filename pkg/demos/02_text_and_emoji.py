#!/usr/bin/env python3
"""Text normalization and emoji analysis on a handful of raw tweets."""

from gangscope import emoji as emj
from gangscope.emoji import detect_chains, extract_emoji_events
from gangscope.textprep import tokenize, tokenize_and_normalize

tweets = [
    "FREE all DA GUYS out here #FreeDaGuys \U0001F46E\U0001F3FD\U0001F52B",
    "people LOVE music https://youtu.be/dQw4w9WgXcQ @somebody",
    f"money moves {emj.MONEY_BAG}{emj.HUNDRED_POINTS}{emj.FIRE} all week",
]

for text in tweets:
    print(f"raw: {text}")
    kinds = [(t.surface, t.kind) for t in tokenize(text)]
    print(f"  tokens: {kinds}")

    doc = tokenize_and_normalize(text)
    print(f"  stems after stopword/seed removal: {dict(doc.stems)}")
    print(f"  emoji tokens (skin tones folded): {list(doc.emoji_tokens)}")

    chains = detect_chains(extract_emoji_events(text))
    print(f"  chains (runs of adjacent emoji): {[' '.join(c) for c in chains]}")
    print()
