"""Hashtag segmentation by unigram log-likelihood.

A hashtag body is first pre-split at boundaries that hashtag conventions
make unambiguous (camel case, acronym ends, letter/digit transitions,
underscores); each resulting chunk is then segmented with a dynamic
program that maximizes the sum of word scores. Known words score their
natural-log unigram probability; unknown segments are penalized linearly
in length, which keeps whole unknown chunks preferable to shrapnel.
"""

from __future__ import annotations

from .lexicons import SegmentationLexicon

# Score of an unknown segment per character (natural-log scale).
UNKNOWN_CHAR_PENALTY = -10.0


def word_score(word: str, lexicon: SegmentationLexicon) -> float:
    """Score a candidate segment under the lexicon."""
    logp = lexicon.log_prob(word)
    if logp is None:
        return UNKNOWN_CHAR_PENALTY * len(word)
    return logp


def presplit(body: str) -> list[str]:
    """Split a hashtag body at forced boundaries, preserving case.

    Boundaries: lowercase->uppercase, end of an uppercase acronym run
    ("COVIDNews" -> "COVID", "News"), and any letter<->digit transition.
    Underscores separate chunks and are dropped.
    """
    chunks: list[str] = []
    current: list[str] = []
    for i, ch in enumerate(body):
        if ch == "_":
            if current:
                chunks.append("".join(current))
                current = []
            continue
        if current:
            prev = current[-1]
            boundary = (
                (prev.islower() and ch.isupper())
                or (prev.isalpha() and ch.isdigit())
                or (prev.isdigit() and ch.isalpha())
                or (
                    prev.isupper()
                    and ch.isupper()
                    and i + 1 < len(body)
                    and body[i + 1].islower()
                )
            )
            if boundary:
                chunks.append("".join(current))
                current = []
        current.append(ch)
    if current:
        chunks.append("".join(current))
    return chunks


def best_segmentation(chunk: str, lexicon: SegmentationLexicon) -> list[str]:
    """Maximum-score segmentation of a lowercase chunk.

    Ties prefer fewer words, then a longer final word, so the result is
    deterministic even when every candidate is unknown.
    """
    n = len(chunk)
    if n == 0:
        return []
    best = [0.0] * (n + 1)
    words = [0] * (n + 1)
    back = [0] * (n + 1)
    for i in range(1, n + 1):
        best_score = float("-inf")
        best_words = i + 1
        best_j = 0
        for j in range(i):
            score = best[j] + word_score(chunk[j:i], lexicon)
            nwords = words[j] + 1
            if score > best_score or (score == best_score and nwords < best_words):
                best_score = score
                best_words = nwords
                best_j = j
        best[i] = best_score
        words[i] = best_words
        back[i] = best_j
    out: list[str] = []
    i = n
    while i > 0:
        j = back[i]
        out.append(chunk[j:i])
        i = j
    out.reverse()
    return out


def segmentation_score(segments: list[str], lexicon: SegmentationLexicon) -> float:
    """Total score of a segmentation (sum of per-word scores)."""
    total = 0.0
    for word in segments:
        total += word_score(word, lexicon)
    return total


def segment_body(body: str, lexicon: SegmentationLexicon) -> list[str]:
    """Segment a bare hashtag body (no '#') into lowercase words."""
    out: list[str] = []
    for chunk in presplit(body):
        out.extend(best_segmentation(chunk.lower(), lexicon))
    return out


def segment_hashtag(tag: str, lexicon: SegmentationLexicon) -> list[str]:
    """Segment a hashtag like "#SmartNews" into lowercase words.

    Raises ValueError for malformed tags (missing '#', empty body, no
    alphanumeric character, or characters outside [A-Za-z0-9_]); such
    input indicates a caller bug, not bad tweet text.
    """
    if not tag.startswith("#"):
        raise ValueError(f"hashtag must start with '#': {tag!r}")
    body = tag[1:]
    if not body:
        raise ValueError("hashtag body is empty")
    if not any(c.isalnum() for c in body):
        raise ValueError(f"hashtag body has no alphanumeric character: {tag!r}")
    for c in body:
        if not (c.isascii() and (c.isalnum() or c == "_")):
            raise ValueError(f"unexpected character {c!r} in hashtag {tag!r}")
    return segment_body(body, lexicon)
