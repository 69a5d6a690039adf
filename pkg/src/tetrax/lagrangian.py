"""Gravitational action densities and the identities tying them together.

Three routes to the same physics: the curvature-contraction density, the
first-order density quadratic in the connection (computed both by form
contractions and by an index sum over the connection table), and the
boundary 3-form whose exterior derivative is their difference. All
evaluators return packed 4-form components in the coordinate basis.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as kern
from ._kernels._tables import ETA_DIAG, N_BLADES
from .cartan import Coframe
from .fields import FormField, codifferential, exterior_derivative
from .mv import Metric, hodge_c

_ETA = np.array(ETA_DIAG)
_ETA_METRIC = Metric.minkowski()

_UNIT = [np.zeros(N_BLADES) for _ in range(4)]
for _a in range(4):
    _UNIT[_a][1 << _a] = 1.0


def _star(a: np.ndarray) -> np.ndarray:
    return hodge_c(np.ascontiguousarray(a), _ETA_METRIC)


def volume_components(coframe: Coframe, p) -> np.ndarray:
    """Metric volume 4-form in dx components."""
    out = np.zeros(N_BLADES)
    out[15] = coframe.orientation * coframe.metric_at(p).sqrt_abs_det_g
    return out


def eh_density(coframe: Coframe, p) -> np.ndarray:
    """Curvature-contraction action density, equal to -R/2 times volume."""
    conn = coframe.connection(p)
    curv = coframe.curvature(p)
    acc = np.zeros(N_BLADES)
    for c in range(4):
        for d in range(4):
            if c == d:
                continue
            pair = kern.wedge(_UNIT[c], _UNIT[d])
            acc += 0.5 * kern.wedge(
                np.ascontiguousarray(curv.curv_low[c, d]),
                np.ascontiguousarray(_star(pair)),
            )
    return conn.metric.from_eta @ acc


def first_order_scalar(coframe: Coframe, p) -> float:
    """Connection-square invariant by double contraction of forms."""
    conn = coframe.connection(p)
    omega = conn.omega
    omega_low = _ETA[:, None, None] * omega
    q = 0.0
    for c in range(4):
        for b in range(4):
            pair = np.zeros(N_BLADES)
            for a in range(4):
                pair += kern.wedge(
                    np.ascontiguousarray(omega_low[a, c]),
                    np.ascontiguousarray(omega[a, b]),
                )
            inner = kern.contract_left_eta(_UNIT[b], np.ascontiguousarray(pair))
            q += kern.contract_left_eta(_UNIT[c], np.ascontiguousarray(inner))[0]
    return q


def first_order_scalar_from_table(coframe: Coframe, p) -> float:
    """Same invariant as an index sum over the connection-coefficient table."""
    table = coframe.connection(p).l_table
    term1 = float(np.einsum("a,k,c,ack,akc->", _ETA, _ETA, _ETA, table, table))
    trace = np.einsum("acc,c->a", table, _ETA)
    return term1 - float(np.einsum("a,a->", _ETA, trace * trace))


def first_order_density(coframe: Coframe, p, route: str = "forms") -> np.ndarray:
    """First-order action density -Q/2 times volume, by either route."""
    if route == "forms":
        q = first_order_scalar(coframe, p)
    elif route == "table":
        q = first_order_scalar_from_table(coframe, p)
    else:
        raise ValueError(f"route must be 'forms' or 'table', got {route!r}")
    return -0.5 * q * volume_components(coframe, p)


def flat_first_order_density(coframe: Coframe, p) -> np.ndarray:
    """Flat-chart evaluation of the gauge-field action density.

    In the flat picture the legs are gauge potentials on a fixed chart
    and their own induced metric supplies every contraction, so the
    value coincides with the first-order density of the coframe; this
    entry point documents that resolution and is exercised against the
    curved-route value in the identity suite.
    """
    return first_order_density(coframe, p, route="table")


def boundary_three_form(coframe: Coframe) -> FormField:
    """Legs wedged with the dual of their own exterior derivatives."""

    def ev(p):
        conn = coframe.connection(p)
        acc = np.zeros(N_BLADES)
        for a in range(4):
            acc += kern.wedge(
                _UNIT[a], np.ascontiguousarray(_star(_ETA[a] * conn.dtheta[a]))
            )
        return conn.metric.from_eta @ acc

    return FormField(3, coframe.domain, ev, name="boundary3")


def boundary_density(coframe: Coframe) -> FormField:
    return exterior_derivative(
        boundary_three_form(coframe), coframe.scheme, name="d(boundary3)"
    )


def action_split_residual(coframe: Coframe, p) -> float:
    """Second-order = first-order minus boundary, as packed 4-forms."""
    lhs = eh_density(coframe, p)
    rhs = first_order_density(coframe, p) - boundary_density(coframe).eval(p)
    return float(np.max(np.abs(lhs - rhs)))


def leg_codifferentials(coframe: Coframe):
    """Codifferential of every leg as scalar fields (uniform convention)."""
    return [
        codifferential(
            coframe.coframe_field(a),
            coframe.metric_at,
            coframe.scheme,
            orientation=coframe.orientation,
        )
        for a in range(4)
    ]


def quadratic_split_sides(coframe: Coframe, delta_fields, p):
    """Both sides of the quadratic-invariant identity at p.

    Left: -1/2 (d leg ^ star d leg - delta leg ^ star delta leg) summed
    over legs with signature lowering. Right: -1/2 of the cross-wedge
    square. Returned as packed coordinate-basis 4-forms.
    """
    conn = coframe.connection(p)
    lhs = np.zeros(N_BLADES)
    for a in range(4):
        d_part = kern.wedge(
            np.ascontiguousarray(conn.dtheta[a]),
            np.ascontiguousarray(_star(_ETA[a] * conn.dtheta[a])),
        )
        s = delta_fields[a].eval(p)[0]
        delta_part = _ETA[a] * s * s * _star(_scalar_one())
        lhs -= 0.5 * (d_part - delta_part)
    rhs = np.zeros(N_BLADES)
    for a in range(4):
        for b in range(4):
            left = kern.wedge(
                np.ascontiguousarray(conn.dtheta[a]), _ETA[b] * _UNIT[b]
            )
            right = kern.wedge(
                np.ascontiguousarray(conn.dtheta[b]), _ETA[a] * _UNIT[a]
            )
            rhs -= 0.5 * kern.wedge(left, np.ascontiguousarray(_star(right)))
    from_eta = conn.metric.from_eta
    return from_eta @ lhs, from_eta @ rhs


def _scalar_one() -> np.ndarray:
    out = np.zeros(N_BLADES)
    out[0] = 1.0
    return out
