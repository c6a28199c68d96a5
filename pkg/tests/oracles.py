"""Independent brute-force implementations used as test oracles.

These deliberately re-implement contracts with naive loops so the optimized
paths in the package have something dumb and trustworthy to agree with.
"""

from collections import Counter

import numpy as np

from gangscope.emoji import chain_bigrams, extract_emoji_events
from gangscope.textprep import lower_word_terms


# --- metrics ---------------------------------------------------------------

def metrics_oracle(tp, fp, tn, fn):
    """Direct formula evaluation, 0/0 defined as 0."""
    def safe(num, den):
        return num / den if den else 0.0

    gp = safe(tp, tp + fp)
    gr = safe(tp, tp + fn)
    gf = safe(2 * gp * gr, gp + gr)
    np_ = safe(tn, tn + fn)
    nr = safe(tn, tn + fp)
    nf = safe(2 * np_ * nr, np_ + nr)
    return {"gang": (gp, gr, gf), "nongang": (np_, nr, nf)}


# --- exhaustive Gini decision tree ------------------------------------------

def _weighted_gini(y_left, y_right):
    ln, rn = len(y_left), len(y_right)
    n = ln + rn
    lp = sum(y_left)
    l0 = ln - lp
    rp = sum(y_right)
    r0 = rn - rp
    gini_l = 1.0 - (lp * lp + l0 * l0) / (ln * ln)
    gini_r = 1.0 - (rp * rp + r0 * r0) / (rn * rn)
    return (ln * gini_l + rn * gini_r) / n


def oracle_best_split(X, y):
    """Exhaustive search over every feature and midpoint threshold.

    Ties: lowest impurity, then lowest column, then lowest threshold. Returns
    (column, threshold) or None.
    """
    n, d = X.shape
    best = None
    best_value = None
    for column in range(d):
        values = sorted(set(float(v) for v in X[:, column]))
        for lo, hi in zip(values, values[1:]):
            threshold = (lo + hi) / 2.0
            left = [int(y[i]) for i in range(n) if X[i, column] < threshold]
            right = [int(y[i]) for i in range(n) if X[i, column] >= threshold]
            if not left or not right:
                continue
            value = _weighted_gini(left, right)
            if best_value is None or value < best_value:
                best_value = value
                best = (column, threshold)
    return best


def oracle_tree(X, y):
    """Recursive exhaustive-Gini tree; mirrors the documented leaf rules."""
    y = [int(v) for v in y]
    pos = sum(y)
    if pos == 0 or pos == len(y):
        return {"counts": (len(y) - pos, pos)}
    split = oracle_best_split(X, np.array(y))
    if split is None:
        return {"counts": (len(y) - pos, pos)}
    column, threshold = split
    left_idx = [i for i in range(len(y)) if X[i, column] < threshold]
    right_idx = [i for i in range(len(y)) if X[i, column] >= threshold]
    return {
        "column": column, "threshold": threshold,
        "left": oracle_tree(X[left_idx], [y[i] for i in left_idx]),
        "right": oracle_tree(X[right_idx], [y[i] for i in right_idx]),
    }


def oracle_tree_predict(tree, x):
    while "counts" not in tree:
        tree = tree["left"] if x[tree["column"]] < tree["threshold"] else tree["right"]
    n0, n1 = tree["counts"]
    return 1 if n1 > n0 else 0


# --- naive Bayes hand example -------------------------------------------------

def nb_hand_oracle():
    """Two-document multinomial example with add-one smoothing.

    gang doc 'a a b', nongang doc 'b b', vocabulary (a, b):
      P(a|g) = (2+1)/(3+2), P(b|g) = (1+1)/(3+2)
      P(a|n) = (0+1)/(2+2), P(b|n) = (2+1)/(2+2)
    Posterior for the one-word doc 'a' with equal priors:
      0.5*0.6 / (0.5*0.6 + 0.5*0.25)
    """
    likelihoods = (3 / 5, 2 / 5, 1 / 4, 3 / 4)
    posterior_gang = (0.5 * 0.6) / (0.5 * 0.6 + 0.5 * 0.25)
    return likelihoods, posterior_gang


# --- analysis recounts --------------------------------------------------------

def curse_rate_recount(corpus, label, lexicon):
    lexicon = {t.lstrip("#") for t in lexicon}
    tokens = []
    for record in corpus:
        if record.label != label:
            continue
        for tweet in record.tweets:
            tokens.extend(lower_word_terms(tweet.text))
    if not tokens:
        return 0.0
    return sum(1 for t in tokens if t in lexicon) / len(tokens)


def emoji_distribution_recount(corpus, label):
    counts = Counter()
    pairs = Counter()
    for record in corpus:
        if record.label != label:
            continue
        for tweet in record.tweets:
            events = extract_emoji_events(tweet.text)
            for event in events:
                counts[event.surface] += 1
            for pair in chain_bigrams(events):
                pairs[pair] += 1
    total = sum(counts.values())
    fractions = {e: c / total for e, c in counts.items()} if total else {}
    return counts, fractions, pairs


def chain_cooccurrence_recount(corpus, label, pair):
    members = [r for r in corpus if r.label == label]
    if not members:
        return 0.0
    hits = 0
    for record in members:
        seen = False
        for tweet in record.tweets:
            if pair in chain_bigrams(extract_emoji_events(tweet.text)):
                seen = True
        if seen:
            hits += 1
    return hits / len(members)


def youtube_stats_recount(corpus, label, keywords, video_client):
    members = [r for r in corpus if r.label == label]
    keywords = [k.lower() for k in keywords]
    sharing = 0
    links = 0
    resolvable = 0
    matched = 0
    for record in members:
        ids = []
        for tweet in record.tweets:
            ids.extend(tweet.youtube_video_ids)
        if ids:
            sharing += 1
        links += len(ids)
        for video_id in ids:
            meta = video_client.fetch_video_metadata(video_id)
            if meta is None:
                continue
            resolvable += 1
            if any(k in meta.description.lower() for k in keywords):
                matched += 1
    return {
        "share_fraction": sharing / len(members) if members else 0.0,
        "keyword_fraction": matched / resolvable if resolvable else 0.0,
        "mean_links_per_sharing_profile": links / sharing if sharing else 0.0,
    }
