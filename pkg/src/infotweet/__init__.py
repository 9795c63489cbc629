"""Toolkit for identifying informative COVID-19 tweets.

Normalizes tweet text, trains or ingests seeded probabilistic
classifiers, combines them by hard or soft voting, and evaluates with
INFORMATIVE-class precision/recall/F1 and confusion-matrix analysis.
"""

__version__ = "0.1.0"

from .classifier import ModelConfig, PredictionVector, ReferenceModel
from .corpus import CorpusSplit, LabeledExample, SplitStats
from .ensemble import LabelSequence, hard_vote, soft_vote
from .lexicons import Lexicons, SegmentationLexicon
from .metrics import ConfusionMatrix, EvaluationReport
from .normalize import NormalizedTweet, RawTweet, normalize, normalize_text
from .segmentation import segment_hashtag

__all__ = [
    "__version__",
    "ModelConfig",
    "PredictionVector",
    "ReferenceModel",
    "CorpusSplit",
    "LabeledExample",
    "SplitStats",
    "LabelSequence",
    "hard_vote",
    "soft_vote",
    "Lexicons",
    "SegmentationLexicon",
    "ConfusionMatrix",
    "EvaluationReport",
    "NormalizedTweet",
    "RawTweet",
    "normalize",
    "normalize_text",
    "segment_hashtag",
]
