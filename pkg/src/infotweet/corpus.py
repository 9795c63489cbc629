"""Corpus ingestion: TSV loading, split statistics and rebalancing.

Files are UTF-8 TSV with a header line. Labeled corpora use
"Id<TAB>Text<TAB>Label" with labels INFORMATIVE or UNINFORMATIVE;
unlabeled prediction input drops the Label column.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

LABEL_TO_INT = {"UNINFORMATIVE": 0, "INFORMATIVE": 1}
INT_TO_LABEL = {0: "UNINFORMATIVE", 1: "INFORMATIVE"}

_HEADER_LABELED = ["Id", "Text", "Label"]
_HEADER_UNLABELED = ["Id", "Text"]


class CorpusError(ValueError):
    """A corpus file violates the expected TSV format."""


@dataclass(frozen=True)
class LabeledExample:
    """One corpus row. label is 1 (INFORMATIVE), 0, or None when unknown."""

    id: str
    text: str
    label: int | None

    def __post_init__(self):
        if self.label not in (0, 1, None):
            raise ValueError(f"example {self.id}: label must be 0, 1 or None")


@dataclass(frozen=True)
class CorpusSplit:
    """An ordered, immutable collection of examples."""

    name: str
    examples: tuple[LabeledExample, ...]

    def __post_init__(self):
        seen = set()
        for ex in self.examples:
            if ex.id in seen:
                raise ValueError(f"duplicate id {ex.id!r} in split {self.name!r}")
            seen.add(ex.id)

    def __len__(self) -> int:
        return len(self.examples)

    def labels_known(self) -> bool:
        return all(ex.label is not None for ex in self.examples)


@dataclass(frozen=True)
class SplitStats:
    n_informative: int
    n_uninformative: int

    @property
    def total(self) -> int:
        return self.n_informative + self.n_uninformative


def load_split(path: str | Path, name: str | None = None) -> CorpusSplit:
    """Load a corpus TSV, mapping label strings to 0/1.

    Raises CorpusError with the offending line number for rows with the
    wrong column count or an unknown label string.
    """
    path = Path(path)
    if name is None:
        name = path.stem
    with path.open(encoding="utf-8") as fh:
        lines = fh.read().split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise CorpusError(f"{path}:1: missing header")
    header = [col.rstrip("\r") for col in lines[0].split("\t")]
    if header == _HEADER_LABELED:
        labeled = True
    elif header == _HEADER_UNLABELED:
        labeled = False
    else:
        raise CorpusError(
            f"{path}:1: expected header 'Id\\tText\\tLabel' or 'Id\\tText', "
            f"got {lines[0]!r}"
        )
    examples = []
    for lineno, line in enumerate(lines[1:], start=2):
        line = line.rstrip("\r")
        cols = line.split("\t")
        if len(cols) != len(header):
            raise CorpusError(
                f"{path}:{lineno}: expected {len(header)} columns, got {len(cols)}"
            )
        label: int | None = None
        if labeled:
            if cols[2] not in LABEL_TO_INT:
                raise CorpusError(
                    f"{path}:{lineno}: unknown label {cols[2]!r}"
                )
            label = LABEL_TO_INT[cols[2]]
        examples.append(LabeledExample(id=cols[0], text=cols[1], label=label))
    try:
        return CorpusSplit(name=name, examples=tuple(examples))
    except ValueError as exc:
        raise CorpusError(f"{path}: {exc}") from None


def write_split(split: CorpusSplit, path: str | Path) -> None:
    """Write a split back to TSV (text column bit-exact)."""
    path = Path(path)
    labeled = split.labels_known()
    if not labeled and any(ex.label is not None for ex in split.examples):
        raise ValueError("cannot write a split with a mix of known and unknown labels")
    with path.open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("\t".join(_HEADER_LABELED if labeled else _HEADER_UNLABELED) + "\n")
        for ex in split.examples:
            if labeled:
                fh.write(f"{ex.id}\t{ex.text}\t{INT_TO_LABEL[ex.label]}\n")
            else:
                fh.write(f"{ex.id}\t{ex.text}\n")


def stats(split: CorpusSplit) -> SplitStats:
    """Exact per-class counts. All labels must be known."""
    n_pos = 0
    n_neg = 0
    for ex in split.examples:
        if ex.label is None:
            raise ValueError(f"example {ex.id} has no label; cannot compute stats")
        if ex.label == 1:
            n_pos += 1
        else:
            n_neg += 1
    return SplitStats(n_informative=n_pos, n_uninformative=n_neg)


def rebalance(split: CorpusSplit, seed: int) -> CorpusSplit:
    """Down-sample the majority class to a 50:50 split, then shuffle.

    The PRNG is NumPy's PCG64 (np.random.default_rng(seed)): first the
    kept majority rows are drawn with rng.choice(n_majority, size=
    n_minority, replace=False) over majority rows in file order, then
    the combined examples (file order) are shuffled with one
    rng.permutation. Examples are never copied or altered, so the output
    is a sub-multiset of the input.
    """
    pos = [ex for ex in split.examples if ex.label == 1]
    neg = [ex for ex in split.examples if ex.label == 0]
    if any(ex.label is None for ex in split.examples):
        raise ValueError("rebalance requires labeled examples")
    if not pos or not neg:
        raise ValueError("rebalance requires both classes to be present")
    rng = np.random.default_rng(seed)
    if len(pos) == len(neg):
        kept = list(split.examples)
    else:
        majority, minority = (pos, neg) if len(pos) > len(neg) else (neg, pos)
        chosen = rng.choice(len(majority), size=len(minority), replace=False)
        keep_ids = {majority[i].id for i in chosen}
        kept = [
            ex
            for ex in split.examples
            if ex.label == minority[0].label or ex.id in keep_ids
        ]
    order = rng.permutation(len(kept))
    return CorpusSplit(name=split.name, examples=tuple(kept[i] for i in order))
