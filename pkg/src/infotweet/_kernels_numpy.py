"""Pure numpy/scipy implementations of the training and scoring kernels.

This is the fallback path selected by INFOTWEET_BACKEND=numpy (or when
numba is unavailable). Semantics match the numba kernels; floating-point
results agree to reduction-order rounding.
"""

from __future__ import annotations

import numpy as np
from scipy.sparse import csr_matrix


def _as_csr(indptr, indices, data, n_features):
    n_rows = indptr.shape[0] - 1
    return csr_matrix((data, indices, indptr), shape=(n_rows, n_features))


def run_sgd(indptr, indices, data, labels, n_features, order, batch_size, learning_rate):
    """Mini-batch SGD on the logistic loss over CSR rows.

    order has one row per epoch giving the visit order of the examples.
    Weights start at zero. Returns (weights, bias, mean loss per epoch);
    the loss is evaluated at the weights in effect when each batch is
    visited, before that batch's update.
    """
    X = _as_csr(indptr, indices, data, n_features)
    n = labels.shape[0]
    epochs = order.shape[0]
    w = np.zeros(n_features, dtype=np.float64)
    b = 0.0
    losses = np.zeros(epochs, dtype=np.float64)
    for epoch in range(epochs):
        loss_sum = 0.0
        for start in range(0, n, batch_size):
            rows = order[epoch, start : start + batch_size]
            Xb = X[rows]
            y = labels[rows]
            z = Xb @ w + b
            loss_sum += float(
                np.sum(np.maximum(z, 0.0) - y * z + np.log1p(np.exp(-np.abs(z))))
            )
            with np.errstate(over="ignore"):
                err = 1.0 / (1.0 + np.exp(-z)) - y
            scale = learning_rate / rows.shape[0]
            w -= scale * (Xb.T @ err)
            b -= learning_rate * float(err.mean())
        losses[epoch] = loss_sum / n
    return w, b, losses


def margins(indptr, indices, data, weights, bias):
    """Decision-function values w.x + b for every CSR row."""
    n_rows = indptr.shape[0] - 1
    X = _as_csr(indptr, indices, data, weights.shape[0])
    if n_rows == 0:
        return np.zeros(0, dtype=np.float64)
    return np.asarray(X @ weights + bias, dtype=np.float64)
