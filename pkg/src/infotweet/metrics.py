"""Evaluation: INFORMATIVE-class precision/recall/F1, accuracy, confusion
matrix and the error listing used for qualitative analysis."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal

from .corpus import CorpusSplit, LabeledExample
from .ensemble import LabelSequence

ErrorKind = Literal["false_positive", "false_negative"]


@dataclass(frozen=True)
class ConfusionMatrix:
    """Counts with INFORMATIVE (label 1) as the positive class."""

    tp: int
    fp: int
    fn: int
    tn: int

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn, self.tn) < 0:
            raise ValueError("confusion counts must be non-negative")

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class EvaluationReport:
    precision: float
    recall: float
    f1: float
    accuracy: float
    matrix: ConfusionMatrix
    flags: tuple[str, ...] = ()


def confusion(predicted: LabelSequence, gold: LabelSequence) -> ConfusionMatrix:
    """Count agreement between predictions and gold labels."""
    if predicted.ids != gold.ids:
        raise ValueError("predicted and gold id sequences differ")
    p = predicted.labels
    g = gold.labels
    return ConfusionMatrix(
        tp=int(((p == 1) & (g == 1)).sum()),
        fp=int(((p == 1) & (g == 0)).sum()),
        fn=int(((p == 0) & (g == 1)).sum()),
        tn=int(((p == 0) & (g == 0)).sum()),
    )


def report(matrix: ConfusionMatrix) -> EvaluationReport:
    """Positive-class precision/recall/F1 plus accuracy.

    An undefined precision or recall (zero denominator) is reported as
    0 with a flag naming the degenerate metric.
    """
    if matrix.total == 0:
        raise ValueError("cannot evaluate an empty confusion matrix")
    flags: list[str] = []
    if matrix.tp + matrix.fp > 0:
        precision = matrix.tp / (matrix.tp + matrix.fp)
    else:
        precision = 0.0
        flags.append("precision_undefined")
    if matrix.tp + matrix.fn > 0:
        recall = matrix.tp / (matrix.tp + matrix.fn)
    else:
        recall = 0.0
        flags.append("recall_undefined")
    if precision + recall > 0:
        f1 = 2.0 * precision * recall / (precision + recall)
    else:
        f1 = 0.0
    accuracy = (matrix.tp + matrix.tn) / matrix.total
    return EvaluationReport(
        precision=precision,
        recall=recall,
        f1=f1,
        accuracy=accuracy,
        matrix=matrix,
        flags=tuple(flags),
    )


def evaluate(predicted: LabelSequence, gold: LabelSequence) -> EvaluationReport:
    """confusion() then report() in one step."""
    return report(confusion(predicted, gold))


def error_listing(
    predicted: LabelSequence,
    gold: LabelSequence,
    corpus: CorpusSplit,
    kind: ErrorKind,
) -> list[LabeledExample]:
    """Misclassified examples of one kind, in corpus order.

    false_positive: gold UNINFORMATIVE predicted INFORMATIVE;
    false_negative: the reverse.
    """
    if predicted.ids != gold.ids:
        raise ValueError("predicted and gold id sequences differ")
    if kind == "false_positive":
        wanted_gold, wanted_pred = 0, 1
    elif kind == "false_negative":
        wanted_gold, wanted_pred = 1, 0
    else:
        raise ValueError(f"unknown error kind {kind!r}")
    by_id = dict(zip(gold.ids, zip(gold.labels.tolist(), predicted.labels.tolist())))
    out = []
    for ex in corpus.examples:
        pair = by_id.get(ex.id)
        if pair is None:
            continue
        g, p = pair
        if g == wanted_gold and p == wanted_pred:
            out.append(ex)
    return out


def render_matrix(matrix: ConfusionMatrix) -> str:
    """Plain-text confusion matrix grid."""
    rows = [
        ("", "pred:INFORMATIVE", "pred:UNINFORMATIVE"),
        ("gold:INFORMATIVE", str(matrix.tp), str(matrix.fn)),
        ("gold:UNINFORMATIVE", str(matrix.fp), str(matrix.tn)),
    ]
    widths = [max(len(r[c]) for r in rows) for c in range(3)]
    return "\n".join(
        "  ".join(cell.rjust(widths[c]) for c, cell in enumerate(row)).rstrip()
        for row in rows
    )


def render_report(rep: EvaluationReport, name: str = "") -> str:
    """Human-readable report, metrics at 4 decimal places."""
    lines = []
    if name:
        lines.append(name)
    lines.append(f"examples : {rep.matrix.total}")
    lines.append(f"precision: {rep.precision:.4f}")
    lines.append(f"recall   : {rep.recall:.4f}")
    lines.append(f"f1       : {rep.f1:.4f}")
    lines.append(f"accuracy : {rep.accuracy:.4f}")
    if rep.flags:
        lines.append("flags    : " + ",".join(rep.flags))
    lines.append(render_matrix(rep.matrix))
    return "\n".join(lines) + "\n"


def report_key_values(rep: EvaluationReport) -> str:
    """Machine-readable key-value form (metric<TAB>value)."""
    lines = [
        f"precision\t{rep.precision:.6f}",
        f"recall\t{rep.recall:.6f}",
        f"f1\t{rep.f1:.6f}",
        f"accuracy\t{rep.accuracy:.6f}",
        f"tp\t{rep.matrix.tp}",
        f"fp\t{rep.matrix.fp}",
        f"fn\t{rep.matrix.fn}",
        f"tn\t{rep.matrix.tn}",
    ]
    for flag in rep.flags:
        lines.append(f"flag\t{flag}")
    return "\n".join(lines) + "\n"
