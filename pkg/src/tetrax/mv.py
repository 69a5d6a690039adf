"""Multivector algebra on a single cotangent space.

Components live in the coordinate (dx) basis; see _kernels._tables for
the packed blade layout. Products against a general Lorentz metric are
computed by congruence transform to an orthonormal basis: if S satisfies
S g_inv S^T = eta then the outermorphism of S^-T carries components to
the orthonormal basis where the precomputed sign tables apply, and the
inverse outermorphism carries the result back. When the metric comes
from a coframe, the coframe matrix itself is such an S, so no
eigendecomposition is needed on the hot path.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as kern
from ._kernels._tables import (
    GRADE,
    N_BLADES,
    REVERSION_SIGN,
    exterior_rep,
)
from .errors import NearSingularMetric, NonSymmetricMetric

ETA_MATRIX = np.diag([1.0, -1.0, -1.0, -1.0])

# component-wise sign of the inverse Hodge map: (-1)^(p(4-p)) * sign(det g),
# and sign(det g) = -1 for every Lorentz metric on a 4-chart
_HODGE_INV_SIGN = np.array([(-1.0) ** (GRADE[i] * (4 - GRADE[i])) * -1.0 for i in range(N_BLADES)])

_SYMMETRY_TOL = 1e-12
_SINGULAR_TOL = 1e-10


class Metric:
    """Inner product on 1-forms at a point, with cached basis transforms.

    Parameters
    ----------
    one_form_inner:
        4x4 symmetric matrix of inner products of the coordinate 1-forms,
        i.e. the inverse spacetime metric. Signature must be (+,-,-,-).
    frame:
        Optional 4x4 matrix S with S @ one_form_inner @ S.T = eta, rows
        being the dx-components of an orthonormal coframe. Supplying it
        skips the eigendecomposition route.
    """

    __slots__ = ("inner", "sqrt_abs_det_g", "is_eta", "_frame", "_to_eta", "_from_eta")

    def __init__(self, one_form_inner, frame=None, validate=True):
        g_inv = np.asarray(one_form_inner, dtype=float)
        if validate:
            if g_inv.shape != (4, 4):
                raise ValueError(f"metric matrix must be 4x4, got {g_inv.shape}")
            if np.max(np.abs(g_inv - g_inv.T)) > _SYMMETRY_TOL:
                raise NonSymmetricMetric(
                    f"symmetry residual {np.max(np.abs(g_inv - g_inv.T)):.3e} exceeds {_SYMMETRY_TOL}"
                )
            eigvals = np.linalg.eigvalsh(g_inv)
            if np.min(np.abs(eigvals)) < _SINGULAR_TOL:
                raise NearSingularMetric(
                    f"eigenvalue magnitude {np.min(np.abs(eigvals)):.3e} below cutoff"
                )
            if np.sum(eigvals > 0) != 1:
                raise ValueError("metric signature must be (+,-,-,-)")
        self.inner = g_inv
        det_inv = float(np.linalg.det(g_inv))
        self.sqrt_abs_det_g = 1.0 / np.sqrt(abs(det_inv))
        self.is_eta = bool(np.array_equal(g_inv, ETA_MATRIX))
        self._frame = None if frame is None else np.asarray(frame, dtype=float)
        self._to_eta = None
        self._from_eta = None

    @classmethod
    def minkowski(cls) -> "Metric":
        return cls(ETA_MATRIX, frame=np.eye(4), validate=False)

    def _orthonormal_frame(self) -> np.ndarray:
        if self._frame is not None:
            return self._frame
        # eigh orders ascending, so the single positive eigenvalue is last;
        # scale rows to unit magnitude and move the timelike row first
        vals, vecs = np.linalg.eigh(self.inner)
        s = (vecs / np.sqrt(np.abs(vals))).T
        self._frame = s[[3, 0, 1, 2], :]
        return self._frame

    @property
    def to_eta(self) -> np.ndarray:
        """Outermorphism carrying dx components to orthonormal components."""
        if self._to_eta is None:
            s = self._orthonormal_frame()
            self._to_eta = exterior_rep(np.linalg.inv(s).T)
        return self._to_eta

    @property
    def from_eta(self) -> np.ndarray:
        if self._from_eta is None:
            self._from_eta = exterior_rep(self._orthonormal_frame().T)
        return self._from_eta


# ---------------------------------------------------------------------------
# raw component-array operations (engine hot path)


def reversion_c(a: np.ndarray) -> np.ndarray:
    return a * REVERSION_SIGN


def grade_project_c(a: np.ndarray, p: int) -> np.ndarray:
    out = np.zeros(N_BLADES)
    for i in range(N_BLADES):
        if GRADE[i] == p:
            out[i] = a[i]
    return out


def wedge_c(a, b) -> np.ndarray:
    return kern.wedge(np.ascontiguousarray(a, float), np.ascontiguousarray(b, float))


def geometric_c(a, b, metric: Metric) -> np.ndarray:
    a = np.ascontiguousarray(a, float)
    b = np.ascontiguousarray(b, float)
    if metric.is_eta:
        return kern.geometric_eta(a, b)
    t = metric.to_eta
    return metric.from_eta @ kern.geometric_eta(
        np.ascontiguousarray(t @ a), np.ascontiguousarray(t @ b)
    )


def contract_left_c(a, b, metric: Metric) -> np.ndarray:
    a = np.ascontiguousarray(a, float)
    b = np.ascontiguousarray(b, float)
    if metric.is_eta:
        return kern.contract_left_eta(a, b)
    t = metric.to_eta
    return metric.from_eta @ kern.contract_left_eta(
        np.ascontiguousarray(t @ a), np.ascontiguousarray(t @ b)
    )


def scalar_product_c(a, b, metric: Metric) -> float:
    return float(geometric_c(reversion_c(np.asarray(a, float)), b, metric)[0])


def volume_form_c(metric: Metric, orientation: int = 1) -> np.ndarray:
    tau = np.zeros(N_BLADES)
    tau[15] = orientation * metric.sqrt_abs_det_g
    return tau


def hodge_c(a, metric: Metric, orientation: int = 1) -> np.ndarray:
    tau = volume_form_c(metric, orientation)
    return contract_left_c(reversion_c(np.asarray(a, float)), tau, metric)


def hodge_inverse_c(a, metric: Metric, orientation: int = 1) -> np.ndarray:
    return hodge_c(np.asarray(a, float) * _HODGE_INV_SIGN, metric, orientation)


# ---------------------------------------------------------------------------
# public wrapper


class Multivector:
    """Immutable-by-convention wrapper around the 16-component layout."""

    __slots__ = ("components",)

    def __init__(self, components):
        arr = np.asarray(components, dtype=float)
        if arr.shape != (N_BLADES,):
            raise ValueError(f"expected 16 components, got shape {arr.shape}")
        self.components = arr

    @classmethod
    def zero(cls) -> "Multivector":
        return cls(np.zeros(N_BLADES))

    @classmethod
    def scalar(cls, value: float) -> "Multivector":
        c = np.zeros(N_BLADES)
        c[0] = value
        return cls(c)

    @classmethod
    def unit_blade(cls, mask: int, coeff: float = 1.0) -> "Multivector":
        c = np.zeros(N_BLADES)
        c[mask] = coeff
        return cls(c)

    @classmethod
    def basis_one_form(cls, mu: int) -> "Multivector":
        return cls.unit_blade(1 << mu)

    def grades(self):
        return sorted({GRADE[i] for i in range(N_BLADES) if self.components[i] != 0.0})

    def grade_project(self, p: int) -> "Multivector":
        return Multivector(grade_project_c(self.components, p))

    def norm_inf(self) -> float:
        return float(np.max(np.abs(self.components)))

    def __add__(self, other):
        return Multivector(self.components + other.components)

    def __sub__(self, other):
        return Multivector(self.components - other.components)

    def __mul__(self, scalar):
        return Multivector(self.components * float(scalar))

    __rmul__ = __mul__

    def __neg__(self):
        return Multivector(-self.components)

    def __repr__(self):
        names = []
        for i in range(N_BLADES):
            if self.components[i] != 0.0:
                blade = "1" if i == 0 else "dx" + "".join(str(mu) for mu in range(4) if i & (1 << mu))
                names.append(f"{self.components[i]:g}*{blade}")
        return "Multivector(" + (" + ".join(names) if names else "0") + ")"


def wedge(a: Multivector, b: Multivector) -> Multivector:
    return Multivector(wedge_c(a.components, b.components))


def geometric_product(a: Multivector, b: Multivector, metric: Metric) -> Multivector:
    return Multivector(geometric_c(a.components, b.components, metric))


def contract_left(a: Multivector, b: Multivector, metric: Metric) -> Multivector:
    """Left interior product a _| b, lowest-grade part convention."""
    return Multivector(contract_left_c(a.components, b.components, metric))


def scalar_product(a: Multivector, b: Multivector, metric: Metric) -> float:
    return scalar_product_c(a.components, b.components, metric)


def reversion(a: Multivector) -> Multivector:
    return Multivector(reversion_c(a.components))


def grade_project(a: Multivector, p: int) -> Multivector:
    return a.grade_project(p)


def hodge_dual(a: Multivector, metric: Metric, orientation: int = 1) -> Multivector:
    """star(a) = reversion(a) _| tau_g with tau_g the oriented unit volume."""
    return Multivector(hodge_c(a.components, metric, orientation))


def hodge_inverse(a: Multivector, metric: Metric, orientation: int = 1) -> Multivector:
    """Inverse of hodge_dual; differs from it by the grade-wise sign law."""
    return Multivector(hodge_inverse_c(a.components, metric, orientation))


def volume_form(metric: Metric, orientation: int = 1) -> Multivector:
    return Multivector(volume_form_c(metric, orientation))
