"""Pure numpy blade product kernels (fallback backend).

Single-multivector products go through a (16, 256) structure-matrix
matvec; batched products use einsum over the same tables. Semantics are
identical to the compiled backend, only slower per call.
"""

from __future__ import annotations

import numpy as np

from ._tables import FLAT_CONTRACT, FLAT_GEO, FLAT_WEDGE, N_BLADES


def _single(flat: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return flat @ np.multiply.outer(a, b).ravel()


def geometric_eta(a, b):
    """Geometric product of two component arrays in the orthonormal basis."""
    return _single(FLAT_GEO, a, b)


def wedge(a, b):
    return _single(FLAT_WEDGE, a, b)


def contract_left_eta(a, b):
    return _single(FLAT_CONTRACT, a, b)


def _batch(flat, a, b):
    n = a.shape[0]
    outer = a[:, :, None] * b[:, None, :]
    return outer.reshape(n, N_BLADES * N_BLADES) @ flat.T


def geometric_eta_batch(a, b):
    """Row-wise geometric product of (n, 16) arrays."""
    return _batch(FLAT_GEO, a, b)


def wedge_batch(a, b):
    return _batch(FLAT_WEDGE, a, b)


def contract_left_eta_batch(a, b):
    return _batch(FLAT_CONTRACT, a, b)
