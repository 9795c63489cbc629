"""Lexicon files used by the tweet normalizer.

All lexicons are UTF-8 TSV files with one entry per line; lines starting
with '#' are comments. Replacement/expansion tables map a key to a
replacement string; the segmentation lexicon maps a word to an occurrence
count.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from importlib.resources import files
from pathlib import Path
from typing import Iterable, Iterator, Mapping


class LexiconError(ValueError):
    """A lexicon file is malformed."""


def _iter_entries(lines: Iterable[str], source: str) -> Iterator[tuple[int, str, str]]:
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n").rstrip("\r")
        if not line or line.startswith("#"):
            continue
        parts = line.split("\t")
        if len(parts) != 2:
            raise LexiconError(
                f"{source}:{lineno}: expected 'key<TAB>value', got {line!r}"
            )
        yield lineno, parts[0], parts[1]


def load_replacement_table(path: str | Path) -> dict[str, str]:
    """Load a character replacement table (single char -> ASCII string)."""
    path = Path(path)
    table: dict[str, str] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, key, value in _iter_entries(fh, str(path)):
            if len(key) != 1:
                raise LexiconError(
                    f"{path}:{lineno}: replacement key must be a single character"
                )
            table[key] = value
    return table


def load_expansion_table(path: str | Path) -> ExpansionTable:
    """Load a contraction or abbreviation dictionary."""
    path = Path(path)
    mapping: dict[str, str] = {}
    with path.open(encoding="utf-8") as fh:
        for lineno, key, value in _iter_entries(fh, str(path)):
            if not key or key != key.lower() or any(c.isspace() for c in key):
                raise LexiconError(
                    f"{path}:{lineno}: key must be lowercase without whitespace"
                )
            if not value:
                raise LexiconError(f"{path}:{lineno}: empty expansion")
            mapping[key] = value
    return ExpansionTable(mapping)


class ExpansionTable:
    """Whole-token replacement dictionary with a precompiled matcher.

    A key matches only when not glued to a letter, digit or apostrophe on
    either side, so "pls" expands in "pls," but never inside "plus".
    """

    def __init__(self, mapping: Mapping[str, str]):
        self.mapping = dict(mapping)
        if self.mapping:
            keys = sorted(self.mapping, key=len, reverse=True)
            alternation = "|".join(re.escape(k) for k in keys)
            self._pattern = re.compile(
                r"(?<![A-Za-z0-9'])(?:" + alternation + r")(?![A-Za-z0-9'])"
            )
        else:
            self._pattern = None

    def expand(self, text: str) -> str:
        if self._pattern is None:
            return text
        return self._pattern.sub(lambda m: self.mapping[m.group(0)], text)

    def __len__(self) -> int:
        return len(self.mapping)

    def __contains__(self, key: str) -> bool:
        return key in self.mapping


@dataclass(frozen=True)
class SegmentationLexicon:
    """Unigram occurrence counts backing hashtag segmentation."""

    entries: Mapping[str, int]
    total_count: int = field(init=False)

    def __post_init__(self):
        for word, count in self.entries.items():
            if not word or word != word.lower() or any(c.isspace() for c in word):
                raise LexiconError(f"bad segmentation entry {word!r}")
            if count < 0:
                raise LexiconError(f"negative count for {word!r}")
        object.__setattr__(self, "total_count", sum(self.entries.values()))

    @classmethod
    def from_file(cls, path: str | Path) -> "SegmentationLexicon":
        path = Path(path)
        entries: dict[str, int] = {}
        with path.open(encoding="utf-8") as fh:
            for lineno, word, count in _iter_entries(fh, str(path)):
                try:
                    entries[word] = int(count)
                except ValueError:
                    raise LexiconError(
                        f"{path}:{lineno}: count must be an integer"
                    ) from None
        return cls(entries)

    def log_prob(self, word: str) -> float | None:
        """Natural-log unigram probability, or None for unknown words."""
        count = self.entries.get(word, 0)
        if count <= 0 or self.total_count <= 0:
            return None
        return math.log(count / self.total_count)


@dataclass(frozen=True)
class Lexicons:
    """The four lexicons consumed by the normalization pipeline."""

    charmap: Mapping[str, str]
    contractions: ExpansionTable
    abbreviations: ExpansionTable
    unigrams: SegmentationLexicon

    @classmethod
    def load(
        cls,
        charmap: str | Path | None = None,
        contractions: str | Path | None = None,
        abbreviations: str | Path | None = None,
        unigrams: str | Path | None = None,
    ) -> "Lexicons":
        """Load lexicons, falling back to the packaged defaults per file."""
        data = files("infotweet").joinpath("data")
        return cls(
            charmap=load_replacement_table(
                charmap if charmap is not None else str(data / "charmap.tsv")
            ),
            contractions=load_expansion_table(
                contractions
                if contractions is not None
                else str(data / "contractions.tsv")
            ),
            abbreviations=load_expansion_table(
                abbreviations
                if abbreviations is not None
                else str(data / "abbreviations.tsv")
            ),
            unigrams=SegmentationLexicon.from_file(
                unigrams if unigrams is not None else str(data / "hashtag_unigrams.tsv")
            ),
        )
