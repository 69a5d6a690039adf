"""Field-equation layer: sources, wave operator, superpotentials, balance.

The coframe legs play the role of gauge potentials; their exterior
derivatives are the field strengths. The induced source currents are
assembled from curvature and connection data term by term, and checked
against the independent star-chain route (codifferential of the field
strengths). Superpotential 2-forms recast the field equation as an exact
balance law, optionally with a mass shift.

Unless stated otherwise, per-point results are packed components in the
orthonormal (tetrad) basis; fields handed back as FormField objects
carry coordinate-basis components so the generic operators apply.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as kern
from ._kernels._tables import ETA_DIAG, N_BLADES, exterior_rep
from .cartan import Coframe
from .extensor import gauge_extensor
from .fields import (
    FormField,
    codifferential,
    codifferential_adjoint,
    exterior_derivative,
)
from .mv import Metric, hodge_c

_ETA = np.array(ETA_DIAG)
_ETA_METRIC = Metric.minkowski()

_UNIT = [np.zeros(N_BLADES) for _ in range(4)]
for _a in range(4):
    _UNIT[_a][1 << _a] = 1.0


def _star(a: np.ndarray) -> np.ndarray:
    return hodge_c(np.ascontiguousarray(a), _ETA_METRIC)


def _wedge(a, b) -> np.ndarray:
    return kern.wedge(np.ascontiguousarray(a), np.ascontiguousarray(b))


# -- field strengths --------------------------------------------------------


def field_strength_fields(coframe: Coframe):
    """d(leg) for every leg, as 2-form fields in coordinate components."""
    return [
        FormField(
            2,
            coframe.domain,
            lambda p, a=a: coframe.connection(p).dtheta_dx[a],
            name=f"strength[{a}]",
        )
        for a in range(4)
    ]


# -- wave operator ----------------------------------------------------------


def wave_tensor(coframe: Coframe, p) -> np.ndarray:
    """Second-order connection combination m[d, c, a, b].

    Built from frame derivatives of the connection table and its
    quadratic self-couplings; the directional index conventions are
    frozen by the chart tests (uniform expansion and accelerated-chart
    values computed by hand).
    """
    table = coframe.connection(p).l_table
    d_table = coframe.l_frame_derivative(p)  # [a, c, d, b] = e_a(L[c, d, b])
    m = np.einsum("acdb->dcab", d_table) + np.einsum("bcda->dcab", d_table)
    m -= np.einsum("cka,kdb->dcab", table, table)
    m -= np.einsum("ckb,kda->dcab", table, table)
    cross = table + np.einsum("kab->kba", table)
    m -= np.einsum("kba,cdk->dcab", cross, table)
    return m


def dalembert_legs(coframe: Coframe, p) -> np.ndarray:
    """Rough (Bochner) wave operator applied to each leg; tetrad comps."""
    m = wave_tensor(coframe, p)
    coeff = -0.5 * np.einsum("a,dcaa->cd", _ETA, m)
    out = np.zeros((4, N_BLADES))
    for c in range(4):
        for d in range(4):
            out[c] += coeff[c, d] * _UNIT[d]
    return out


# -- helper fields ----------------------------------------------------------


def leg_fields(coframe: Coframe):
    return [coframe.coframe_field(a) for a in range(4)]


def leg_codifferential_fields(coframe: Coframe):
    return [
        codifferential(
            coframe.coframe_field(a),
            coframe.metric_at,
            coframe.scheme,
            orientation=coframe.orientation,
        )
        for a in range(4)
    ]


def gauge_residual(coframe: Coframe, p, delta_fields=None) -> float:
    """Largest codifferential magnitude over the legs (gauge monitor)."""
    if delta_fields is None:
        delta_fields = leg_codifferential_fields(coframe)
    return max(abs(float(f.eval(p)[0])) for f in delta_fields)


# -- source currents --------------------------------------------------------


def stress_trace(curv) -> float:
    """Trace of the stress one-forms against the legs."""
    return float(sum(curv.einstein_one_forms[a][1 << a] for a in range(4)))


def current_assembly(coframe: Coframe, p, d_delta_legs=None) -> np.ndarray:
    """Sources by the term-by-term assembly; tetrad comps per leg.

    Stress part minus half its trace, plus the wave-tensor contraction,
    minus the exact piece d(delta leg). The last needs second
    derivatives, supplied as fields so their stencils are shared.
    """
    if d_delta_legs is None:
        d_delta_legs = [
            exterior_derivative(f, coframe.scheme)
            for f in leg_codifferential_fields(coframe)
        ]
    curv = coframe.curvature(p)
    trace = stress_trace(curv)
    to_eta = coframe.metric_at(p).to_eta
    box = dalembert_legs(coframe, p)
    out = np.zeros((4, N_BLADES))
    for a in range(4):
        out[a] = curv.einstein_one_forms[a] - 0.5 * trace * _UNIT[a]
        out[a] -= box[a]
        out[a] -= to_eta @ d_delta_legs[a].eval(p)
    return out


def current_chain(coframe: Coframe, p, strength_fields=None) -> np.ndarray:
    """Sources by the star-chain route: minus codifferential of strengths."""
    if strength_fields is None:
        strength_fields = field_strength_fields(coframe)
    to_eta = coframe.metric_at(p).to_eta
    out = np.zeros((4, N_BLADES))
    for a in range(4):
        delta_f = codifferential(
            strength_fields[a],
            coframe.metric_at,
            coframe.scheme,
            orientation=coframe.orientation,
        )
        out[a] = -(to_eta @ delta_f.eval(p))
    return out


def current_fields(coframe: Coframe):
    """Assembled sources as 1-form fields in coordinate components."""
    d_delta_legs = [
        exterior_derivative(f, coframe.scheme)
        for f in leg_codifferential_fields(coframe)
    ]

    def make(a):
        def ev(p):
            tet = current_assembly(coframe, p, d_delta_legs)
            return coframe.metric_at(p).from_eta @ tet[a]

        return FormField(1, coframe.domain, ev, name=f"source[{a}]")

    return [make(a) for a in range(4)]


def conservation_residuals(coframe: Coframe, p) -> np.ndarray:
    """Codifferential of each assembled source current at p."""
    out = np.zeros(4)
    for a, field in enumerate(current_fields(coframe)):
        delta_j = codifferential(
            field, coframe.metric_at, coframe.scheme, orientation=coframe.orientation
        )
        out[a] = float(delta_j.eval(p)[0])
    return out


# -- Laplacian split --------------------------------------------------------


def laplacian_split(coframe: Coframe, p) -> dict:
    """Hodge-wave operator on the legs split into curvature + rough parts.

    total is minus the adjoint-codifferential Laplacian of each leg;
    ricci_part is minus the raised Ricci one-forms; dalembert_part is
    the rough wave operator. The three satisfy
    total = ricci_part + dalembert_part.
    """
    to_eta = coframe.metric_at(p).to_eta
    curv = coframe.curvature(p)
    total = np.zeros((4, N_BLADES))
    for a in range(4):
        leg = coframe.coframe_field(a)
        d_adj = codifferential_adjoint(
            leg, coframe.metric_at, coframe.scheme, orientation=coframe.orientation
        )
        first = exterior_derivative(d_adj, coframe.scheme)
        second = codifferential_adjoint(
            exterior_derivative(leg, coframe.scheme),
            coframe.metric_at,
            coframe.scheme,
            orientation=coframe.orientation,
        )
        total[a] = -(to_eta @ (first.eval(p) + second.eval(p)))
    ricci_part = np.array(
        [-_ETA[a] * curv.ricci_one_forms[a] for a in range(4)]
    )
    return {
        "total": total,
        "ricci_part": ricci_part,
        "dalembert_part": dalembert_legs(coframe, p),
    }


# -- superpotentials and balance -------------------------------------------


def superpotential_two_forms(coframe: Coframe, p) -> np.ndarray:
    """Dual superpotentials: half the connection against dual leg triples."""
    conn = coframe.connection(p)
    omega_low = _ETA[:, None, None] * conn.omega  # both labels down
    out = np.zeros((4, N_BLADES))
    for c in range(4):
        for a in range(4):
            for b in range(4):
                triple = _wedge(_wedge(_UNIT[a], _UNIT[b]), _UNIT[c])
                out[c] += 0.5 * _wedge(omega_low[a, b], _star(triple))
    return out


def energy_three_forms(coframe: Coframe, p) -> np.ndarray:
    """Dual gravitational energy currents, quadratic in the connection."""
    conn = coframe.connection(p)
    omega = conn.omega
    omega_low = _ETA[:, None, None] * omega
    out = np.zeros((4, N_BLADES))
    for c in range(4):
        for a in range(4):
            for b in range(4):
                inner = np.zeros(N_BLADES)
                for d in range(4):
                    inner += _wedge(
                        omega[c, d], _star(_wedge(_wedge(_UNIT[a], _UNIT[b]), _UNIT[d]))
                    )
                    inner += _wedge(
                        omega[b, d], _star(_wedge(_wedge(_UNIT[a], _UNIT[d]), _UNIT[c]))
                    )
                out[c] -= 0.5 * _wedge(omega_low[a, b], inner)
    return out


def superpotential_fields(coframe: Coframe):
    def make(c):
        def ev(p):
            tet = superpotential_two_forms(coframe, p)
            return coframe.metric_at(p).from_eta @ tet[c]

        return FormField(2, coframe.domain, ev, name=f"superpotential[{c}]")

    return [make(c) for c in range(4)]


def balance_residuals(coframe: Coframe, p, mass: float = 0.0) -> np.ndarray:
    """Residual 3-forms of the balance law, one per leg; tetrad comps.

    minus d(superpotential) against dual stress plus dual energy
    current; a nonzero mass shifts the stress by -mass^2 legs and adds
    the compensating dual-leg term.
    """
    to_eta = coframe.metric_at(p).to_eta
    curv = coframe.curvature(p)
    star_t = energy_three_forms(coframe, p)
    fields = superpotential_fields(coframe)
    out = np.zeros((4, N_BLADES))
    m2 = mass * mass
    for c in range(4):
        d_s = to_eta @ exterior_derivative(fields[c], coframe.scheme).eval(p)
        stress = curv.einstein_one_forms[c] - m2 * _UNIT[c]
        rhs = _star(stress) + m2 * _star(_UNIT[c]) + star_t[c]
        out[c] = -d_s - rhs
    return out


# -- gauge-conjugated dual --------------------------------------------------


def conjugated_hodge(comps: np.ndarray, metric: Metric, orientation: int = 1) -> np.ndarray:
    """Metric dual through the gauge factor: conjugate the flat dual.

    Push components through the outermorphism of the gauge square root,
    apply the signature dual, pull back through the inverse. Equals the
    congruence-route dual for any metric whose gauge factor exists.
    """
    h = gauge_extensor(metric)
    fwd = exterior_rep(h)
    back = exterior_rep(np.linalg.inv(h))
    return back @ hodge_c(
        np.ascontiguousarray(fwd @ np.asarray(comps, dtype=float)),
        _ETA_METRIC,
        orientation,
    )


def balance_residuals_conjugated(coframe: Coframe, p) -> np.ndarray:
    """Balance residuals with every metric dual routed via conjugation.

    The superpotential and energy pieces are already signature duals in
    the orthonormal basis; what changes is the dual of the stress
    one-forms, here taken in coordinate components through the gauge
    factor and mapped back.
    """
    metric = coframe.metric_at(p)
    to_eta = metric.to_eta
    from_eta = metric.from_eta
    curv = coframe.curvature(p)
    star_t = energy_three_forms(coframe, p)
    fields = superpotential_fields(coframe)
    out = np.zeros((4, N_BLADES))
    for c in range(4):
        d_s = to_eta @ exterior_derivative(fields[c], coframe.scheme).eval(p)
        stress_dx = from_eta @ curv.einstein_one_forms[c]
        star_stress = to_eta @ conjugated_hodge(stress_dx, metric, coframe.orientation)
        out[c] = -d_s - star_stress - star_t[c]
    return out
