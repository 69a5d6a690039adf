"""Coordinate-route curvature reference, independent of the blade engine.

Everything here works on the lower chart metric through Christoffel
symbols and index gymnastics only: no blades, no coframe connection. The
structure-equation route in cartan.py is cross-checked against these
values, so nothing from that module may leak in beyond the coframe
matrix itself (used only to assemble the lower metric and to project
coordinate tensors onto frame labels).
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .fields import FDScheme

MetricMatrixFn = Callable[[np.ndarray], np.ndarray]

ETA = np.diag([1.0, -1.0, -1.0, -1.0])


def lower_metric_fn(coframe_matrix_fn: Callable) -> MetricMatrixFn:
    """Chart metric g_{mu nu} built from a coframe matrix field."""

    def g(p):
        th = np.asarray(coframe_matrix_fn(p), dtype=float)
        return th.T @ ETA @ th

    return g


def _grad_matrix(fn, p, scheme: FDScheme):
    p = np.asarray(p, dtype=float)
    sample = np.asarray(fn(p), dtype=float)
    out = np.zeros((4,) + sample.shape)
    for mu in range(4):
        for offset, weight in scheme.nodes():
            q = p.copy()
            q[mu] += offset * scheme.step
            out[mu] += weight * np.asarray(fn(q), dtype=float)
    return out


def christoffel(g_fn: MetricMatrixFn, p, scheme: FDScheme) -> np.ndarray:
    """Levi-Civita symbols Gamma[lam, mu, nu] at p by finite differences."""
    g = np.asarray(g_fn(p), dtype=float)
    g_inv = np.linalg.inv(g)
    dg = _grad_matrix(g_fn, p, scheme)  # [mu, a, b] = d_mu g_ab
    # 0.5 g^{ls} (d_mu g_{s nu} + d_nu g_{s mu} - d_s g_{mu nu})
    term = np.einsum("msn->smn", dg) + np.einsum("nsm->smn", dg) - dg
    return 0.5 * np.einsum("ls,smn->lmn", g_inv, term)


def riemann_up(g_fn: MetricMatrixFn, p, scheme: FDScheme) -> np.ndarray:
    """Curvature R[rho, sig, mu, nu] with the first index up."""
    dgam = _grad_matrix(lambda q: christoffel(g_fn, q, scheme), p, scheme)
    gam = christoffel(g_fn, p, scheme)
    out = np.einsum("mrns->rsmn", dgam) - np.einsum("nrms->rsmn", dgam)
    out += np.einsum("rml,lns->rsmn", gam, gam) - np.einsum("rnl,lms->rsmn", gam, gam)
    return out


def riemann_low(g_fn: MetricMatrixFn, p, scheme: FDScheme) -> np.ndarray:
    g = np.asarray(g_fn(p), dtype=float)
    return np.einsum("ra,asmn->rsmn", g, riemann_up(g_fn, p, scheme))


def ricci(g_fn: MetricMatrixFn, p, scheme: FDScheme) -> np.ndarray:
    return np.einsum("msmn->sn", riemann_up(g_fn, p, scheme))


def scalar_curvature(g_fn: MetricMatrixFn, p, scheme: FDScheme) -> float:
    g_inv = np.linalg.inv(np.asarray(g_fn(p), dtype=float))
    return float(np.einsum("sn,sn->", g_inv, ricci(g_fn, p, scheme)))


def kretschmann(g_fn: MetricMatrixFn, p, scheme: FDScheme) -> float:
    low = riemann_low(g_fn, p, scheme)
    g_inv = np.linalg.inv(np.asarray(g_fn(p), dtype=float))
    up = np.einsum(
        "ra,sb,mc,nd,abcd->rsmn", g_inv, g_inv, g_inv, g_inv, low
    )
    return float(np.einsum("rsmn,rsmn->", low, up))


def frame_components(coframe_matrix_fn: Callable, tensor_low: np.ndarray, p) -> np.ndarray:
    """Project a fully lowered rank-k chart tensor onto frame labels."""
    frame = np.linalg.inv(np.asarray(coframe_matrix_fn(p), dtype=float))
    out = tensor_low
    for axis in range(tensor_low.ndim):
        out = np.tensordot(out, frame, axes=([0], [0]))
    return out
