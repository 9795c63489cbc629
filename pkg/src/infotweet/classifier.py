"""Reference probabilistic classifier and prediction-file ingestion.

The reference model is a logistic regression over word n-grams, trained
by seeded mini-batch SGD. It honors the same configuration surface as
the transformer models it stands in for (batch size, learning rate,
epochs, random seed, truncation length), so the multi-seed ensemble
protocol can be exercised at desk scale. Probability files produced by
external models are ingested through the same PredictionVector type.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.sparse import csr_matrix
from scipy.special import expit

from . import backend
from .corpus import CorpusSplit
from .features import build_vocabulary, vectorize

DEFAULT_MAX_TOKENS = 96


class PredictionFileError(ValueError):
    """A prediction TSV is malformed."""


class TrainingDivergedError(ArithmeticError):
    """Training produced a non-finite loss or non-finite weights."""


@dataclass(frozen=True)
class ModelConfig:
    """Hyperparameters of one individual model."""

    batch_size: int
    learning_rate: float
    epochs: int
    seed: int
    max_tokens: int = DEFAULT_MAX_TOKENS

    def __post_init__(self):
        if self.batch_size < 1:
            raise ValueError("batch_size must be >= 1")
        if not 0.0 < self.learning_rate < 1.0:
            raise ValueError("learning_rate must be in (0, 1)")
        if self.epochs < 1:
            raise ValueError("epochs must be >= 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if self.max_tokens < 1:
            raise ValueError("max_tokens must be >= 1")


@dataclass(frozen=True)
class PredictionVector:
    """Per-example probabilities of the positive class from one model."""

    model_id: str
    ids: tuple[str, ...]
    probs: np.ndarray

    def __post_init__(self):
        probs = np.asarray(self.probs, dtype=np.float64)
        object.__setattr__(self, "probs", probs)
        if probs.shape != (len(self.ids),):
            raise ValueError("ids and probs must have the same length")
        if len(set(self.ids)) != len(self.ids):
            raise ValueError(f"{self.model_id}: duplicate example ids")
        if probs.size and (probs.min() < 0.0 or probs.max() > 1.0):
            raise ValueError(f"{self.model_id}: probabilities must be in [0, 1]")

    def __len__(self) -> int:
        return len(self.ids)

    @property
    def entries(self) -> list[tuple[str, float]]:
        return list(zip(self.ids, self.probs.tolist()))


@dataclass(frozen=True)
class ReferenceModel:
    """Trained logistic regression: vocabulary, weights, bias, config."""

    vocabulary: dict[str, int]
    weights: np.ndarray
    bias: float
    config: ModelConfig
    epoch_losses: tuple[float, ...] = field(default=())

    def __post_init__(self):
        weights = np.asarray(self.weights, dtype=np.float64)
        object.__setattr__(self, "weights", weights)
        if weights.shape != (len(self.vocabulary),):
            raise ValueError("weight vector length must equal vocabulary size")
        if weights.size and not np.isfinite(weights).all():
            raise ValueError("weights must be finite")


def _training_arrays(data: CorpusSplit, config: ModelConfig):
    texts = [ex.text for ex in data.examples]
    labels = []
    for ex in data.examples:
        if ex.label is None:
            raise ValueError(f"example {ex.id} has no label; cannot train")
        labels.append(float(ex.label))
    y = np.asarray(labels, dtype=np.float64)
    if y.size == 0 or y.min() == y.max():
        raise ValueError("training data must contain both classes")
    vocabulary = build_vocabulary(texts, config.max_tokens)
    X = vectorize(texts, vocabulary, config.max_tokens)
    return vocabulary, X, y


def train(data: CorpusSplit, config: ModelConfig) -> ReferenceModel:
    """Train the reference classifier.

    Deterministic in (data, config): weights start at zero and the only
    randomness is the per-epoch visit order, drawn from
    np.random.default_rng(config.seed) as one permutation per epoch.
    """
    vocabulary, X, y = _training_arrays(data, config)
    rng = np.random.default_rng(config.seed)
    n = y.shape[0]
    order = np.stack([rng.permutation(n) for _ in range(config.epochs)])
    weights, bias, losses = backend.run_sgd(
        X.indptr.astype(np.int64),
        X.indices.astype(np.int64),
        X.data.astype(np.float64),
        y,
        len(vocabulary),
        order.astype(np.int64),
        config.batch_size,
        config.learning_rate,
    )
    if not (np.isfinite(losses).all() and np.isfinite(weights).all() and np.isfinite(bias)):
        raise TrainingDivergedError(
            f"training diverged (seed={config.seed}, lr={config.learning_rate})"
        )
    return ReferenceModel(
        vocabulary=vocabulary,
        weights=weights,
        bias=float(bias),
        config=config,
        epoch_losses=tuple(float(l) for l in losses),
    )


def predict(
    model: ReferenceModel, data: CorpusSplit, model_id: str = "reference"
) -> PredictionVector:
    """Positive-class probability sigmoid(w.x + b) per example, in order."""
    texts = [ex.text for ex in data.examples]
    X = vectorize(texts, model.vocabulary, model.config.max_tokens)
    z = backend.margins(
        X.indptr.astype(np.int64),
        X.indices.astype(np.int64),
        X.data.astype(np.float64),
        model.weights,
        model.bias,
    )
    return PredictionVector(
        model_id=model_id,
        ids=tuple(ex.id for ex in data.examples),
        probs=expit(z),
    )


def logistic_loss_and_grad(
    weights: np.ndarray, bias: float, X: csr_matrix, y: np.ndarray
) -> tuple[float, np.ndarray, float]:
    """Mean logistic loss and its analytic gradient.

    This is the same formula the SGD kernels step on; the test suite
    checks it against central finite differences.
    """
    z = np.asarray(X @ weights + bias, dtype=np.float64)
    loss = float(np.mean(np.maximum(z, 0.0) - y * z + np.log1p(np.exp(-np.abs(z)))))
    err = expit(z) - y
    grad_w = np.asarray(X.T @ err, dtype=np.float64) / y.shape[0]
    grad_b = float(err.mean())
    return loss, grad_w, grad_b


_MODEL_FORMAT = "infotweet-reference-model"
_MODEL_VERSION = 1


def save_model(model: ReferenceModel, path: str | Path) -> None:
    """Serialize a model to JSON; round-trips weights exactly."""
    ordered = sorted(model.vocabulary.items(), key=lambda kv: kv[1])
    if [idx for _, idx in ordered] != list(range(len(ordered))):
        raise ValueError("vocabulary indices must be 0..n-1")
    payload = {
        "format": _MODEL_FORMAT,
        "version": _MODEL_VERSION,
        "config": {
            "batch_size": model.config.batch_size,
            "learning_rate": model.config.learning_rate,
            "epochs": model.config.epochs,
            "seed": model.config.seed,
            "max_tokens": model.config.max_tokens,
        },
        "vocabulary": [feature for feature, _ in ordered],
        "weights": model.weights.tolist(),
        "bias": model.bias,
        "epoch_losses": list(model.epoch_losses),
    }
    Path(path).write_text(json.dumps(payload), encoding="utf-8")


def load_model(path: str | Path) -> ReferenceModel:
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if payload.get("format") != _MODEL_FORMAT or payload.get("version") != _MODEL_VERSION:
        raise ValueError(f"{path}: not a version-{_MODEL_VERSION} model file")
    return ReferenceModel(
        vocabulary={f: i for i, f in enumerate(payload["vocabulary"])},
        weights=np.asarray(payload["weights"], dtype=np.float64),
        bias=float(payload["bias"]),
        config=ModelConfig(**payload["config"]),
        epoch_losses=tuple(payload["epoch_losses"]),
    )


def write_predictions(vector: PredictionVector, path: str | Path) -> None:
    """Write "Id<TAB>Prob" TSV with 6-decimal probabilities."""
    with Path(path).open("w", encoding="utf-8", newline="\n") as fh:
        fh.write("Id\tProb\n")
        for example_id, prob in vector.entries:
            fh.write(f"{example_id}\t{prob:.6f}\n")


def load_predictions(path: str | Path, model_id: str | None = None) -> PredictionVector:
    """Load an "Id<TAB>Prob" TSV (header optional).

    Raises PredictionFileError with the line number for malformed rows,
    out-of-range probabilities or duplicate ids.
    """
    path = Path(path)
    if model_id is None:
        model_id = path.stem
    ids: list[str] = []
    probs: list[float] = []
    seen: set[str] = set()
    with path.open(encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n").rstrip("\r")
            if not line:
                continue
            if lineno == 1 and line.split("\t")[:2] == ["Id", "Prob"]:
                continue
            cols = line.split("\t")
            if len(cols) != 2:
                raise PredictionFileError(
                    f"{path}:{lineno}: expected 2 columns, got {len(cols)}"
                )
            try:
                prob = float(cols[1])
            except ValueError:
                raise PredictionFileError(
                    f"{path}:{lineno}: probability {cols[1]!r} is not a number"
                ) from None
            if not 0.0 <= prob <= 1.0:
                raise PredictionFileError(
                    f"{path}:{lineno}: probability {prob} outside [0, 1]"
                )
            if cols[0] in seen:
                raise PredictionFileError(f"{path}:{lineno}: duplicate id {cols[0]!r}")
            seen.add(cols[0])
            ids.append(cols[0])
            probs.append(prob)
    return PredictionVector(model_id=model_id, ids=tuple(ids), probs=np.asarray(probs))
