"""Coframe geometry: torsion-free connection and curvature on a chart.

A Coframe bundles an orthonormal-coframe matrix field over a chart
domain. Everything downstream (connection 1-forms, curvature 2-forms,
Ricci data) is evaluated per point and memoized, so the finite-difference
stencils that feed the curvature reuse the connection bundles computed
at neighbouring nodes.

Index conventions used throughout: the coframe matrix row a holds the dx
components of the leg with upper label a; connection tables are stored
mixed (first label up, second down); curvature sign conventions are
fixed by the frozen-value tests in tests/test_cartan.py.
"""

from __future__ import annotations

from typing import Callable, Optional

import numpy as np

from . import _kernels as kern
from ._kernels._tables import ETA_DIAG, GRADE, N_BLADES, exterior_rep
from .errors import DegenerateCoframe
from .fields import Domain, FDScheme, FormField, exterior_derivative
from .mv import Metric

_DET_CUTOFF = 1e-10

_UNIT = [np.zeros(N_BLADES) for _ in range(4)]
for _a in range(4):
    _UNIT[_a][1 << _a] = 1.0


class ConnectionData:
    """Per-point geometric data derived from first coframe derivatives."""

    __slots__ = (
        "point",
        "theta",
        "frame",
        "metric",
        "dtheta_dx",
        "dtheta",
        "omega_upup",
        "omega",
        "omega_dx",
        "l_table",
    )

    def __init__(self, **kw):
        for key, value in kw.items():
            setattr(self, key, value)


class CurvatureData:
    """Per-point curvature 2-forms and their contractions."""

    __slots__ = (
        "point",
        "curv_mixed",
        "curv_low",
        "ricci_one_forms",
        "scalar_curvature",
        "einstein_one_forms",
        "riemann",
        "kretschmann",
    )

    def __init__(self, **kw):
        for key, value in kw.items():
            setattr(self, key, value)


class Coframe:
    """Orthonormal coframe field on a chart domain.

    Parameters
    ----------
    domain:
        Chart box the coframe is defined on.
    matrix_fn:
        Callable p -> 4x4 array whose row a gives the dx components of
        coframe leg a. Must stay invertible; determinants below the
        cutoff raise DegenerateCoframe.
    scheme:
        Finite-difference scheme used for every derivative downstream.
    """

    def __init__(
        self,
        domain: Domain,
        matrix_fn: Callable[[np.ndarray], np.ndarray],
        scheme: Optional[FDScheme] = None,
        name: str = "coframe",
        orientation: int = 1,
    ):
        self.domain = domain
        self.matrix_fn = matrix_fn
        self.scheme = scheme or FDScheme()
        self.name = name
        self.orientation = orientation
        self._theta_cache: dict = {}
        self._metric_cache: dict = {}
        self._conn_cache: dict = {}
        self._curv_cache: dict = {}
        self._omega_d_fields = None

    # -- pointwise raw data -------------------------------------------------

    def theta(self, p) -> np.ndarray:
        """Coframe matrix at p (row a = dx components of leg a)."""
        p = np.asarray(p, dtype=float)
        key = p.tobytes()
        hit = self._theta_cache.get(key)
        if hit is None:
            m = np.asarray(self.matrix_fn(p), dtype=float)
            det = float(np.linalg.det(m))
            if abs(det) < _DET_CUTOFF:
                raise DegenerateCoframe(
                    f"coframe determinant {det:.3e} below cutoff at {p.tolist()}"
                )
            hit = self._theta_cache[key] = m
        return hit

    def metric_at(self, p) -> Metric:
        """Metric at p from the coframe alone (no derivative stencils)."""
        p = np.asarray(p, dtype=float)
        key = p.tobytes()
        hit = self._metric_cache.get(key)
        if hit is None:
            theta = self.theta(p)
            frame = np.linalg.inv(theta)
            hit = self._metric_cache[key] = Metric(
                frame @ np.diag(ETA_DIAG) @ frame.T, frame=theta, validate=False
            )
        return hit

    def coframe_field(self, a: int) -> FormField:
        """Leg a as a 1-form field in dx components."""

        def ev(p):
            out = np.zeros(N_BLADES)
            out[[1, 2, 4, 8]] = self.theta(p)[a]
            return out

        return FormField(1, self.domain, ev, name=f"{self.name}[{a}]")

    # -- connection ---------------------------------------------------------

    def connection(self, p) -> ConnectionData:
        """Connection bundle at p: torsion-free, metric-compatible."""
        p = np.asarray(p, dtype=float)
        key = p.tobytes()
        hit = self._conn_cache.get(key)
        if hit is not None:
            return hit

        theta = self.theta(p)
        frame = np.linalg.inv(theta)
        metric = self.metric_at(p)

        # first derivatives of the coframe matrix, then the exterior
        # derivative of each leg in dx components
        grad = np.zeros((4, 4, 4))  # [mu, a, nu] = d_mu theta[a, nu]
        for mu in range(4):
            for offset, weight in self.scheme.nodes():
                q = p.copy()
                q[mu] += offset * self.scheme.step
                self.domain.require(q, context=f"coframe stencil axis {mu}")
                grad[mu] += weight * self.theta(q)
        dtheta_dx = np.zeros((4, N_BLADES))
        for a in range(4):
            for mu in range(4):
                for nu in range(mu + 1, 4):
                    dtheta_dx[a, (1 << mu) | (1 << nu)] = grad[mu, a, nu] - grad[nu, a, mu]

        to_eta = metric.to_eta
        dtheta = np.array([to_eta @ dtheta_dx[a] for a in range(4)])
        dtheta_low = np.array([ETA_DIAG[a] * dtheta[a] for a in range(4)])

        # half-contraction assembly of the unique torsion-free connection
        cont = np.zeros((4, 4, N_BLADES))  # [c, d] = leg_d -| dtheta^c
        for c in range(4):
            for d in range(4):
                cont[c, d] = kern.contract_left_eta(_UNIT[d], np.ascontiguousarray(dtheta[c]))
        omega_upup = np.zeros((4, 4, N_BLADES))
        for c in range(4):
            for d in range(4):
                if d <= c:
                    continue
                val = cont[c, d] - cont[d, c]
                for a in range(4):
                    inner = kern.contract_left_eta(
                        _UNIT[d], np.ascontiguousarray(dtheta_low[a])
                    )
                    scal = kern.contract_left_eta(_UNIT[c], np.ascontiguousarray(inner))[0]
                    val = val + scal * _UNIT[a]
                omega_upup[c, d] = 0.5 * val
                omega_upup[d, c] = -omega_upup[c, d]

        omega = np.zeros((4, 4, N_BLADES))
        for c in range(4):
            for d in range(4):
                omega[c, d] = ETA_DIAG[d] * omega_upup[c, d]

        from_eta = metric.from_eta
        omega_dx = np.einsum("ij,cdj->cdi", from_eta, omega)
        l_table = omega[:, :, [1, 2, 4, 8]]

        data = ConnectionData(
            point=p.copy(),
            theta=theta,
            frame=frame,
            metric=metric,
            dtheta_dx=dtheta_dx,
            dtheta=dtheta,
            omega_upup=omega_upup,
            omega=omega,
            omega_dx=omega_dx,
            l_table=l_table,
        )
        self._conn_cache[key] = data
        return data

    def connection_form_field(self, c: int, d: int) -> FormField:
        """Mixed connection 1-form as a field in dx components."""
        return FormField(
            1,
            self.domain,
            lambda p: self.connection(p).omega_dx[c, d],
            name=f"omega[{c},{d}]",
        )

    # -- curvature ----------------------------------------------------------

    def _omega_derivatives(self):
        if self._omega_d_fields is None:
            self._omega_d_fields = [
                [
                    exterior_derivative(self.connection_form_field(c, d), self.scheme)
                    for d in range(4)
                ]
                for c in range(4)
            ]
        return self._omega_d_fields

    def curvature(self, p) -> CurvatureData:
        """Curvature bundle at p from the structure equation."""
        p = np.asarray(p, dtype=float)
        key = p.tobytes()
        hit = self._curv_cache.get(key)
        if hit is not None:
            return hit

        conn = self.connection(p)
        to_eta = conn.metric.to_eta
        d_fields = self._omega_derivatives()

        curv_mixed = np.zeros((4, 4, N_BLADES))
        for c in range(4):
            for d in range(4):
                val = to_eta @ d_fields[c][d].eval(p)
                for k in range(4):
                    val = val + kern.wedge(
                        np.ascontiguousarray(conn.omega[c, k]),
                        np.ascontiguousarray(conn.omega[k, d]),
                    )
                curv_mixed[c, d] = val
        curv_low = np.array([ETA_DIAG[c] * curv_mixed[c] for c in range(4)])

        ricci = np.zeros((4, N_BLADES))
        for c in range(4):
            for d in range(4):
                ricci[c] -= kern.contract_left_eta(
                    _UNIT[d], np.ascontiguousarray(curv_low[c, d])
                )

        scalar = -sum(ETA_DIAG[c] * ricci[c, 1 << c] for c in range(4))

        einstein = np.zeros((4, N_BLADES))
        for a in range(4):
            einstein[a] = ETA_DIAG[a] * ricci[a] + 0.5 * scalar * _UNIT[a]

        riemann = np.zeros((4, 4, 4, 4))
        for a in range(4):
            for b in range(4):
                for c in range(4):
                    for d in range(c + 1, 4):
                        val = curv_low[a, b, (1 << c) | (1 << d)]
                        riemann[a, b, c, d] = val
                        riemann[a, b, d, c] = -val
        signs = np.array(ETA_DIAG)
        weight = np.einsum("a,b,c,d->abcd", signs, signs, signs, signs)
        kretschmann = float(np.sum(weight * riemann * riemann))

        data = CurvatureData(
            point=p.copy(),
            curv_mixed=curv_mixed,
            curv_low=curv_low,
            ricci_one_forms=ricci,
            scalar_curvature=float(scalar),
            einstein_one_forms=einstein,
            riemann=riemann,
            kretschmann=kretschmann,
        )
        self._curv_cache[key] = data
        return data

    # -- frame derivatives --------------------------------------------------

    def frame_derivative(self, p, table_fn: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
        """Directional derivatives e_a(T) of a point-indexed table.

        Returns an array with a new leading frame index: out[a, ...] =
        frame vector a applied to each entry of table_fn.
        """
        p = np.asarray(p, dtype=float)
        sample = np.asarray(table_fn(p), dtype=float)
        grad = np.zeros((4,) + sample.shape)
        for mu in range(4):
            for offset, weight in self.scheme.nodes():
                q = p.copy()
                q[mu] += offset * self.scheme.step
                self.domain.require(q, context=f"table stencil axis {mu}")
                grad[mu] += weight * np.asarray(table_fn(q), dtype=float)
        frame = self.connection(p).frame
        return np.einsum("ma,m...->a...", frame, grad)

    def l_frame_derivative(self, p) -> np.ndarray:
        """e_a applied to every connection-table entry; out[a, c, d, k]."""
        return self.frame_derivative(p, lambda q: self.connection(q).l_table)
