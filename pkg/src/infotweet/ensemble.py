"""Hard and soft voting over aligned prediction vectors.

Hard voting lets each model cast a binary vote (probability >= threshold)
and takes the majority; an exact tie falls back to the soft decision for
that example. Soft voting thresholds the mean probability. With a single
model the two rules coincide.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .classifier import PredictionVector
from .corpus import INT_TO_LABEL, LABEL_TO_INT, CorpusSplit

DEFAULT_THRESHOLD = 0.5


class AlignmentError(ValueError):
    """Prediction vectors do not share one id sequence."""


@dataclass(frozen=True)
class LabelSequence:
    """Final 0/1 labels, ordered like the evaluated split."""

    ids: tuple[str, ...]
    labels: np.ndarray

    def __post_init__(self):
        labels = np.asarray(self.labels, dtype=np.int64)
        object.__setattr__(self, "labels", labels)
        if labels.shape != (len(self.ids),):
            raise ValueError("ids and labels must have the same length")
        if labels.size and not np.isin(labels, (0, 1)).all():
            raise ValueError("labels must be 0 or 1")

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def entries(self) -> list[tuple[str, int]]:
        return list(zip(self.ids, self.labels.tolist()))


def aligned_probabilities(
    vectors: Sequence[PredictionVector],
) -> tuple[tuple[str, ...], np.ndarray]:
    """Stack N aligned vectors into an (N, n_examples) matrix."""
    if not vectors:
        raise AlignmentError("need at least one prediction vector")
    ids = vectors[0].ids
    for vector in vectors[1:]:
        if vector.ids != ids:
            raise AlignmentError(
                f"{vector.model_id}: id sequence differs from {vectors[0].model_id}"
            )
    return ids, np.stack([v.probs for v in vectors])


def hard_vote(
    vectors: Sequence[PredictionVector], threshold: float = DEFAULT_THRESHOLD
) -> LabelSequence:
    """Majority vote; exact ties use the soft decision on that example."""
    ids, probs = aligned_probabilities(vectors)
    n_models = probs.shape[0]
    positive_votes = (probs >= threshold).sum(axis=0)
    soft = (probs.mean(axis=0) >= threshold).astype(np.int64)
    labels = np.where(
        2 * positive_votes > n_models,
        1,
        np.where(2 * positive_votes < n_models, 0, soft),
    )
    return LabelSequence(ids=ids, labels=labels)


def soft_vote(
    vectors: Sequence[PredictionVector], threshold: float = DEFAULT_THRESHOLD
) -> LabelSequence:
    """Label 1 iff the mean probability reaches the threshold."""
    ids, probs = aligned_probabilities(vectors)
    return LabelSequence(ids=ids, labels=(probs.mean(axis=0) >= threshold).astype(np.int64))


def labels_from_split(split: CorpusSplit) -> LabelSequence:
    """Gold labels of a fully labeled split as a LabelSequence."""
    labels = []
    for ex in split.examples:
        if ex.label is None:
            raise ValueError(f"example {ex.id} has no label")
        labels.append(ex.label)
    return LabelSequence(
        ids=tuple(ex.id for ex in split.examples),
        labels=np.asarray(labels, dtype=np.int64),
    )


def write_labels(sequence: LabelSequence, path: str | Path) -> None:
    """Write the submission-format label file ("Id<TAB>Label")."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("Id\tLabel\n")
        for example_id, label in sequence.entries:
            fh.write(f"{example_id}\t{INT_TO_LABEL[label]}\n")


def load_labels(path: str | Path) -> LabelSequence:
    """Load a label file written by write_labels (header optional)."""
    path = Path(path)
    ids: list[str] = []
    labels: list[int] = []
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            if lineno == 1 and line.split("\t")[:2] == ["Id", "Label"]:
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise ValueError(f"{path}:{lineno}: expected 2 columns")
            if cols[1] not in LABEL_TO_INT:
                raise ValueError(f"{path}:{lineno}: unknown label {cols[1]!r}")
            ids.append(cols[0])
            labels.append(LABEL_TO_INT[cols[1]])
    return LabelSequence(ids=tuple(ids), labels=np.asarray(labels, dtype=np.int64))
