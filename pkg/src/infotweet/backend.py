"""Kernel backend selection.

Hot numeric loops (SGD training, margin computation) have two
implementations: numba-jitted kernels and a pure numpy/scipy fallback.
The INFOTWEET_BACKEND environment variable forces one of them ("numba"
or "numpy"); by default numba is used when importable. Within a backend
results are bitwise deterministic; across backends they agree up to
floating-point reduction order (~1e-12 relative).
"""

from __future__ import annotations

import os

from . import _kernels_numpy

_ENV_VAR = "INFOTWEET_BACKEND"


def _select():
    forced = os.environ.get(_ENV_VAR, "").strip().lower()
    if forced == "numpy":
        return _kernels_numpy, "numpy"
    if forced == "numba":
        from . import _kernels_numba

        return _kernels_numba, "numba"
    if forced:
        raise ValueError(
            f"{_ENV_VAR} must be 'numba' or 'numpy', got {forced!r}"
        )
    try:
        from . import _kernels_numba

        return _kernels_numba, "numba"
    except ImportError:
        return _kernels_numpy, "numpy"


_IMPL, _NAME = _select()


def backend_name() -> str:
    """Name of the active kernel backend ("numba" or "numpy")."""
    return _NAME


def run_sgd(indptr, indices, data, labels, n_features, order, batch_size, learning_rate):
    return _IMPL.run_sgd(
        indptr, indices, data, labels, n_features, order, batch_size, learning_rate
    )


def margins(indptr, indices, data, weights, bias):
    return _IMPL.margins(indptr, indices, data, weights, bias)
