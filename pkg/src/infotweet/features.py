"""N-gram featurization for the reference classifier.

Texts are whitespace-tokenized (the normalizer guarantees clean single
spacing), truncated to the first max_tokens tokens, and counted as word
unigrams plus adjacent bigrams.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Mapping

import numpy as np
from scipy.sparse import csr_matrix


def ngram_tokens(text: str, max_tokens: int) -> Iterator[str]:
    """Yield unigrams then bigrams of the first max_tokens tokens."""
    tokens = text.split()[:max_tokens]
    yield from tokens
    for left, right in zip(tokens, tokens[1:]):
        yield f"{left} {right}"


def build_vocabulary(texts: Iterable[str], max_tokens: int) -> dict[str, int]:
    """Feature-to-index map over a corpus, in first-seen order."""
    vocabulary: dict[str, int] = {}
    for text in texts:
        for feature in ngram_tokens(text, max_tokens):
            if feature not in vocabulary:
                vocabulary[feature] = len(vocabulary)
    return vocabulary


def featurize(
    text: str, vocabulary: Mapping[str, int], max_tokens: int
) -> dict[int, int]:
    """Sparse count vector for one text; unknown features are dropped."""
    counts: dict[int, int] = {}
    for feature in ngram_tokens(text, max_tokens):
        idx = vocabulary.get(feature)
        if idx is not None:
            counts[idx] = counts.get(idx, 0) + 1
    return counts


def vectorize(
    texts: Iterable[str], vocabulary: Mapping[str, int], max_tokens: int
) -> csr_matrix:
    """CSR count matrix, one row per text, columns per vocabulary."""
    indptr = [0]
    indices: list[int] = []
    data: list[float] = []
    for text in texts:
        counts = featurize(text, vocabulary, max_tokens)
        for idx in sorted(counts):
            indices.append(idx)
            data.append(float(counts[idx]))
        indptr.append(len(indices))
    return csr_matrix(
        (
            np.asarray(data, dtype=np.float64),
            np.asarray(indices, dtype=np.int64),
            np.asarray(indptr, dtype=np.int64),
        ),
        shape=(len(indptr) - 1, len(vocabulary)),
    )
