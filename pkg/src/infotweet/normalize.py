"""Tweet text normalization pipeline.

Six steps, applied in a fixed order: lowercasing, ASCII folding,
punctuation normalization, contraction expansion, abbreviation expansion
and hashtag segmentation. The pipeline is deterministic, idempotent and
closed over printable ASCII; the dataset mask tokens "HTTPURL" and
"@USER" pass through every step verbatim.
"""

from __future__ import annotations

import re
import string
import unicodedata
from dataclasses import dataclass
from typing import Mapping

from .lexicons import ExpansionTable, Lexicons
from .segmentation import segment_body

PLACEHOLDERS = ("HTTPURL", "@USER")

_PLACEHOLDER_RE = re.compile("(" + "|".join(re.escape(p) for p in PLACEHOLDERS) + ")")
_DOT_RUN_RE = re.compile(r"\.{3,}")
_PUNCT_RUN_RE = re.compile(
    "([" + re.escape("".join(c for c in string.punctuation if c != ".")) + r"])\1{2,}"
)
_WS_RUN_RE = re.compile(r"\s+")
_HASHTAG_RE = re.compile(r"#+([A-Za-z0-9_]+)")

ALL_STEPS = (1, 2, 3, 4, 5, 6)


@dataclass(frozen=True)
class RawTweet:
    """A tweet as it appears in the corpus."""

    id: str
    text: str

    def __post_init__(self):
        if not self.id:
            raise ValueError("tweet id must be non-empty")
        if not self.text.strip():
            raise ValueError(f"tweet {self.id}: text is empty")


@dataclass(frozen=True)
class NormalizedTweet:
    """Pipeline output: normalized text plus the steps that produced it."""

    id: str
    text: str
    steps_applied: tuple[int, ...]


def _apply_outside_placeholders(text: str, fn) -> str:
    """Apply fn to the spans between placeholder occurrences."""
    parts = _PLACEHOLDER_RE.split(text)
    # Even indices are ordinary text, odd indices are placeholders.
    return "".join(
        part if i % 2 else fn(part) for i, part in enumerate(parts)
    )


def lowercase(text: str) -> str:
    """Step 1: lowercase everything except the placeholder tokens."""
    return _apply_outside_placeholders(text, str.lower)


def _fold_char(ch: str, table: Mapping[str, str]) -> str:
    if ch in table:
        return table[ch]
    if " " <= ch <= "~":
        return ch
    if ch in "\t\n\r\x0b\x0c":
        return " "
    folded = "".join(
        c for c in unicodedata.normalize("NFKD", ch) if " " <= c <= "~"
    )
    if folded and ch.lower() == ch and ch.upper() == ch:
        # Uncased symbols may decompose to cased ASCII (e.g. the trade
        # mark sign); lower the result so a lowercased input stays
        # lowercase through this step.
        return folded.lower()
    return folded


def replace_special_chars(text: str, table: Mapping[str, str]) -> str:
    """Step 2: map every non-ASCII character to ASCII or delete it.

    The replacement table wins; otherwise accented letters keep their
    base letters via compatibility decomposition, ASCII control
    whitespace becomes a space, and anything else (emoji included) is
    deleted. Printable ASCII passes through unchanged.
    """
    return _apply_outside_placeholders(
        text, lambda chunk: "".join(_fold_char(ch, table) for ch in chunk)
    )


def normalize_punctuation(text: str) -> str:
    """Step 3: collapse punctuation runs and whitespace.

    Runs of three or more of the same punctuation character collapse to
    one, except dot runs which collapse to an ellipsis of exactly three.
    Whitespace runs become a single space and the ends are trimmed.
    """

    def fix(chunk: str) -> str:
        chunk = _DOT_RUN_RE.sub("...", chunk)
        chunk = _PUNCT_RUN_RE.sub(r"\1", chunk)
        return _WS_RUN_RE.sub(" ", chunk)

    return _apply_outside_placeholders(text, fix).strip()


def expand_contractions(text: str, table: ExpansionTable | Mapping[str, str]) -> str:
    """Step 4: expand contractions to their canonical single reading."""
    if not isinstance(table, ExpansionTable):
        table = ExpansionTable(table)
    return _apply_outside_placeholders(text, table.expand)


def expand_abbreviations(text: str, table: ExpansionTable | Mapping[str, str]) -> str:
    """Step 5: expand whole-token abbreviations."""
    if not isinstance(table, ExpansionTable):
        table = ExpansionTable(table)
    return _apply_outside_placeholders(text, table.expand)


def segment_hashtags(text: str, lexicons: Lexicons) -> str:
    """Step 6: replace each hashtag with its segmented words.

    The '#' signs are dropped and the words are joined with single
    spaces. An underscore-only body splices to nothing, so any
    whitespace run that leaves behind is collapsed afterwards.
    """

    def replace(match: re.Match) -> str:
        return " ".join(segment_body(match.group(1), lexicons.unigrams))

    out = _apply_outside_placeholders(text, lambda c: _HASHTAG_RE.sub(replace, c))
    return _WS_RUN_RE.sub(" ", out).strip()


def normalize_text(text: str, lexicons: Lexicons) -> str:
    """Run the full six-step pipeline over raw text.

    When segmentation rewrites anything, the two expansion steps run
    once more over the result: splicing can uncover tokens the earlier
    passes never saw ("pls" inside "#plslisten", or a contraction formed
    where spliced words meet the surrounding text), and without the
    second pass the pipeline would not be idempotent.
    """
    text = lowercase(text)
    text = replace_special_chars(text, lexicons.charmap)
    text = normalize_punctuation(text)
    text = expand_contractions(text, lexicons.contractions)
    text = expand_abbreviations(text, lexicons.abbreviations)
    segmented = segment_hashtags(text, lexicons)
    if segmented != text:
        segmented = expand_contractions(segmented, lexicons.contractions)
        segmented = expand_abbreviations(segmented, lexicons.abbreviations)
    return segmented


def normalize(tweet: RawTweet, lexicons: Lexicons) -> NormalizedTweet:
    """Normalize one tweet, recording the applied steps."""
    return NormalizedTweet(
        id=tweet.id,
        text=normalize_text(tweet.text, lexicons),
        steps_applied=ALL_STEPS,
    )
