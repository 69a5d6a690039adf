"""Metric extensor, gauge factorization, and the deformed blade product.

The metric extensor at a point is the endomorphism of 1-form components
whose eta-symmetric square root plays the role of a gauge potential: the
square root maps the curved coframe to an eta-orthonormal one. Composing
with any Lorentz map on the left leaves the extensor invariant, which is
the gauge freedom checked by the orbit test.
"""

from __future__ import annotations

import numpy as np

from ._kernels import geometric_eta
from ._kernels._tables import exterior_rep
from .errors import NearSingularMetric
from .mv import ETA_MATRIX, Metric

_EIG_CUTOFF = 1e-10


def metric_extensor(metric: Metric) -> np.ndarray:
    """Endomorphism eta . g_inv acting on 1-form components."""
    return ETA_MATRIX @ metric.inner


def eta_adjoint(m: np.ndarray) -> np.ndarray:
    """Adjoint with respect to the signature pairing: eta m^T eta."""
    return ETA_MATRIX @ np.asarray(m).T @ ETA_MATRIX


def gauge_extensor(metric: Metric) -> np.ndarray:
    """Principal square root h of the metric extensor.

    Computed by a determinant-scaled Denman-Beavers iteration, which
    handles complex eigenvalue pairs in real arithmetic. The principal
    root is a polynomial in the extensor, so it inherits eta-symmetry
    and satisfies eta_adjoint(h) @ h = metric extensor. Eigenvalues on
    the closed negative real axis (a flipped time direction) or with
    magnitude below 1e-10 raise NearSingularMetric.
    """
    ext = metric_extensor(metric)
    vals = np.linalg.eigvals(ext)
    if np.min(np.abs(vals)) < _EIG_CUTOFF:
        raise NearSingularMetric(
            f"metric extensor eigenvalue magnitude {np.min(np.abs(vals)):.3e} below cutoff"
        )
    on_negative_axis = (vals.real < 0.0) & (np.abs(vals.imag) <= 1e-8 * np.abs(vals))
    if np.any(on_negative_axis):
        raise NearSingularMetric(
            "metric extensor has a negative real eigenvalue; no principal square root"
        )
    scale = max(1.0, float(np.max(np.abs(ext))))
    y, z = ext.copy(), np.eye(4)
    for _ in range(60):
        mu = float(abs(np.linalg.det(y) * np.linalg.det(z))) ** (-0.125)
        y, z = (
            0.5 * (mu * y + np.linalg.inv(mu * z)),
            0.5 * (mu * z + np.linalg.inv(mu * y)),
        )
        if np.max(np.abs(y @ y - ext)) <= 1e-13 * scale:
            return y
    raise NearSingularMetric("square root iteration did not converge")


def lorentz_boost(rapidity: float, axis: int = 1) -> np.ndarray:
    """Boost mixing the time direction with a spatial axis (1, 2 or 3)."""
    if axis not in (1, 2, 3):
        raise ValueError("boost axis must be 1, 2 or 3")
    out = np.eye(4)
    c, s = np.cosh(rapidity), np.sinh(rapidity)
    out[0, 0] = out[axis, axis] = c
    out[0, axis] = out[axis, 0] = s
    return out


def lorentz_rotation(angle: float, axis: int = 3) -> np.ndarray:
    """Spatial rotation about one axis."""
    i, j = [k for k in (1, 2, 3) if k != axis]
    out = np.eye(4)
    c, s = np.cos(angle), np.sin(angle)
    out[i, i] = out[j, j] = c
    out[i, j] = -s
    out[j, i] = s
    return out


def is_lorentz(m: np.ndarray, tol: float = 1e-10) -> bool:
    return bool(np.max(np.abs(m.T @ ETA_MATRIX @ m - ETA_MATRIX)) <= tol)


def gauge_orbit_element(lorentz: np.ndarray, gauge: np.ndarray) -> np.ndarray:
    """Lorentz map composed after the gauge factor; same metric extensor."""
    return lorentz @ gauge


def deformed_product_c(a: np.ndarray, b: np.ndarray, gauge: np.ndarray) -> np.ndarray:
    """Gauge-deformed geometric product on packed components.

    Push both factors through the outermorphism of the gauge map,
    multiply in the orthonormal algebra, pull the result back. Coframe
    legs then anticommute to 2 eta^{ab}.
    """
    fwd = exterior_rep(gauge)
    back = exterior_rep(np.linalg.inv(gauge))
    return back @ geometric_eta(
        np.ascontiguousarray(fwd @ np.asarray(a, float)),
        np.ascontiguousarray(fwd @ np.asarray(b, float)),
    )
