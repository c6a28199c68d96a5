"""Emoji tokenization: cluster segmentation, modifier folding, chain detection.

A token is one emoji "cluster": a pictographic scalar plus any variation
selectors and skin-tone modifiers, extended through zero-width-joiner
sequences; a regional-indicator pair (flag) and a keycap sequence also count
as single clusters. Tokens are normalized by dropping skin tones and
variation selectors so visually equivalent variants compare equal.

A chain is a maximal run of two or more emoji tokens that were adjacent in
the source text, with nothing but whitespace between them.
"""

from __future__ import annotations

from dataclasses import dataclass

ZWJ = "‍"
KEYCAP = "⃣"
_VARIATION_SELECTORS = frozenset({"︎", "️"})
_SKIN_TONES = frozenset(chr(cp) for cp in range(0x1F3FB, 0x1F400))

_RI_LO, _RI_HI = 0x1F1E6, 0x1F1FF

# Pragmatic coverage of the pictographic blocks seen in tweets. Skin tones
# sit inside the first range and are excluded explicitly.
_BASE_RANGES = (
    (0x1F300, 0x1F5FF),  # symbols & pictographs (pistol, hundred, cop, ...)
    (0x1F600, 0x1F64F),  # emoticons
    (0x1F680, 0x1F6FF),  # transport & map
    (0x1F900, 0x1F9FF),  # supplemental symbols
    (0x1FA70, 0x1FAFF),  # symbols extended-A
    (0x2600, 0x26FF),    # miscellaneous symbols (fuel pump, gender signs)
    (0x2700, 0x27BF),    # dingbats (hearts, crosses)
    (0x1F000, 0x1F0FF),  # mahjong / cards
)
_BASE_SINGLES = frozenset({0x2B05, 0x2B06, 0x2B07, 0x2B1B, 0x2B1C,
                           0x2B50, 0x2B55, 0x203C, 0x2049})

# A few names used by fixtures, tests, and demo scripts.
PISTOL = "\U0001F52B"
COP = "\U0001F46E"
GUARDSMAN = "\U0001F482"
FUEL_PUMP = "⛽"
HUNDRED_POINTS = "\U0001F4AF"
FACE_WITH_TEARS_OF_JOY = "\U0001F602"
FIRE = "\U0001F525"
SKULL = "\U0001F480"
MONEY_BAG = "\U0001F4B0"
IMP = "\U0001F47F"
RED_HEART = "❤"
SPARKLES = "✨"
MUSICAL_NOTES = "\U0001F3B6"
SUN = "☀"
DOG_FACE = "\U0001F436"
COLLISION = "\U0001F4A5"


def is_emoji_base(ch: str) -> bool:
    cp = ord(ch)
    if ch in _SKIN_TONES:
        return False
    if cp in _BASE_SINGLES:
        return True
    return any(lo <= cp <= hi for lo, hi in _BASE_RANGES)


def _skip_modifiers(text: str, j: int) -> int:
    while j < len(text) and (text[j] in _VARIATION_SELECTORS or text[j] in _SKIN_TONES):
        j += 1
    return j


def match_cluster(text: str, i: int) -> tuple[int, str] | None:
    """Match one emoji cluster at position i.

    Returns (number of source chars consumed, normalized token) or None when
    text[i] does not start an emoji.
    """
    n = len(text)
    ch = text[i]
    cp = ord(ch)

    if ch in "0123456789#*":
        j = i + 1
        if j < n and text[j] in _VARIATION_SELECTORS:
            j += 1
        if j < n and text[j] == KEYCAP:
            return j + 1 - i, ch + KEYCAP
        return None

    if _RI_LO <= cp <= _RI_HI:
        if i + 1 < n and _RI_LO <= ord(text[i + 1]) <= _RI_HI:
            return 2, text[i: i + 2]
        return 1, ch

    if not is_emoji_base(ch):
        return None

    kept = [ch]
    j = _skip_modifiers(text, i + 1)
    # Extend through ZWJ only when a pictographic base follows.
    while (j + 1 < n and text[j] == ZWJ and is_emoji_base(text[j + 1])):
        kept.append(ZWJ)
        kept.append(text[j + 1])
        j = _skip_modifiers(text, j + 2)
    return j - i, "".join(kept)


@dataclass(frozen=True)
class EmojiToken:
    """One normalized emoji with its adjacency to the previous emoji.

    adjacent is True when only whitespace separated this token from the
    previous emoji token of the same text.
    """
    surface: str
    adjacent: bool


def extract_emoji_events(text: str) -> list[EmojiToken]:
    events: list[EmojiToken] = []
    i = 0
    prev_end: int | None = None
    n = len(text)
    while i < n:
        matched = match_cluster(text, i)
        if matched is None:
            i += 1
            continue
        consumed, token = matched
        adjacent = (prev_end is not None
                    and all(c.isspace() for c in text[prev_end:i]))
        events.append(EmojiToken(token, adjacent))
        prev_end = i + consumed
        i += consumed
    return events


def extract_emoji_tokens(text: str) -> list[str]:
    """All emoji tokens of a text, normalized, in appearance order."""
    return [e.surface for e in extract_emoji_events(text)]


def detect_chains(events: list[EmojiToken]) -> list[tuple[str, ...]]:
    """Maximal runs of >= 2 source-adjacent emoji tokens from one tweet."""
    chains: list[tuple[str, ...]] = []
    run: list[str] = []
    for event in events:
        if run and event.adjacent:
            run.append(event.surface)
            continue
        if len(run) >= 2:
            chains.append(tuple(run))
        run = [event.surface]
    if len(run) >= 2:
        chains.append(tuple(run))
    return chains


def chain_bigrams(events: list[EmojiToken]) -> list[tuple[str, str]]:
    """Ordered adjacent pairs inside chains, in appearance order."""
    pairs: list[tuple[str, str]] = []
    for chain in detect_chains(events):
        pairs.extend(zip(chain, chain[1:]))
    return pairs
