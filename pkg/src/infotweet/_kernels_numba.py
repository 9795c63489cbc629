"""Numba-jitted implementations of the training and scoring kernels.

The SGD inner loop touches only the nonzeros of each batch, so it avoids
the dense gradient vector the numpy fallback has to materialize per
batch. Compiled code is cached on disk after the first call.
"""

from __future__ import annotations

import numpy as np
from numba import njit


@njit(cache=True)
def run_sgd(indptr, indices, data, labels, n_features, order, batch_size, learning_rate):
    n = labels.shape[0]
    epochs = order.shape[0]
    w = np.zeros(n_features, dtype=np.float64)
    b = 0.0
    losses = np.zeros(epochs, dtype=np.float64)
    err = np.zeros(batch_size, dtype=np.float64)
    for epoch in range(epochs):
        loss_sum = 0.0
        start = 0
        while start < n:
            stop = min(start + batch_size, n)
            bsz = stop - start
            # Forward pass at the pre-update weights.
            for k in range(bsz):
                row = order[epoch, start + k]
                z = b
                for t in range(indptr[row], indptr[row + 1]):
                    z += data[t] * w[indices[t]]
                y = labels[row]
                if z >= 0.0:
                    loss_sum += z - y * z + np.log1p(np.exp(-z))
                else:
                    loss_sum += -y * z + np.log1p(np.exp(z))
                err[k] = 1.0 / (1.0 + np.exp(-z)) - y
            # Batch-mean gradient step, applied nonzero by nonzero.
            scale = learning_rate / bsz
            err_sum = 0.0
            for k in range(bsz):
                row = order[epoch, start + k]
                step = scale * err[k]
                for t in range(indptr[row], indptr[row + 1]):
                    w[indices[t]] -= step * data[t]
                err_sum += err[k]
            b -= learning_rate * err_sum / bsz
            start = stop
        losses[epoch] = loss_sum / n
    return w, b, losses


@njit(cache=True)
def margins(indptr, indices, data, weights, bias):
    n_rows = indptr.shape[0] - 1
    out = np.zeros(n_rows, dtype=np.float64)
    for row in range(n_rows):
        z = bias
        for t in range(indptr[row], indptr[row + 1]):
            z += data[t] * weights[indices[t]]
        out[row] = z
    return out
