"""Registry of verifiable identities over a scenario.

Each entry couples a stable id, a plain-language mathematical anchor, a
stencil-depth class (which sets its point budget and domain margin), a
tolerance, and an evaluator. Evaluators return the worst residual over
the points they were given; "check" rows gate the exit status, "info"
rows only report. Rows that do not apply to a scenario are still listed
as skipped so reports always carry the full identity set.
"""

from __future__ import annotations

import zlib
from typing import Optional

import numpy as np

from . import lagrangian as lag
from . import maxwell as mx
from . import oracles
from . import teleparallel as tp
from ._kernels import wedge as _wedge_k
from ._kernels._tables import ETA_DIAG, GRADE, N_BLADES
from .extensor import (
    deformed_product_c,
    eta_adjoint,
    gauge_extensor,
    metric_extensor,
)
from .fields import FormField, pullback
from .mv import (
    contract_left_c,
    hodge_c,
    scalar_product_c,
    volume_form_c,
    wedge_c,
)
from .scenarios import Scenario

_ETA = np.array(ETA_DIAG)

# points per stencil-depth class; deeper chains cost more per point
_BUDGET = {0: 24, 1: 16, 2: 8, 3: 4}


class Identity:
    __slots__ = ("id", "anchor", "depth", "tolerance", "severity", "applies", "run")

    def __init__(self, id, anchor, depth, tolerance, severity, applies, run):
        self.id = id
        self.anchor = anchor
        self.depth = depth
        self.tolerance = tolerance
        self.severity = severity
        self.applies = applies
        self.run = run


def _probe_rng(identity_id: str):
    return np.random.default_rng(zlib.crc32(identity_id.encode()))


def _always(scenario: Scenario, mass: float) -> Optional[str]:
    return None


def _natural_only(scenario: Scenario, mass: float) -> Optional[str]:
    if not scenario.natural:
        return "coframe is not the pullback of a flat chart"
    return None


def _massive_only(scenario: Scenario, mass: float) -> Optional[str]:
    if mass == 0.0:
        return "mass is zero"
    return None


# -- algebra rows (pointwise metric, random probes) -------------------------


def _run_double_dual(scenario, points, mass):
    rng = _probe_rng("algebra.double-dual")
    worst = 0.0
    for p in points:
        metric = scenario.coframe.metric_at(p)
        for _ in range(4):
            grade = int(rng.integers(0, 5))
            probe = np.zeros(N_BLADES)
            idx = [i for i in range(N_BLADES) if GRADE[i] == grade]
            probe[idx] = rng.normal(size=len(idx))
            twice = hodge_c(hodge_c(probe, metric), metric)
            expect = -((-1.0) ** (grade * (4 - grade))) * probe
            scale = max(1.0, float(np.max(np.abs(twice))))
            worst = max(worst, float(np.max(np.abs(twice - expect))) / scale)
    return worst


def _run_dual_pairing(scenario, points, mass):
    rng = _probe_rng("algebra.dual-pairing")
    worst = 0.0
    for p in points:
        metric = scenario.coframe.metric_at(p)
        tau = volume_form_c(metric)
        for _ in range(4):
            grade = int(rng.integers(0, 5))
            idx = [i for i in range(N_BLADES) if GRADE[i] == grade]
            a = np.zeros(N_BLADES)
            b = np.zeros(N_BLADES)
            a[idx] = rng.normal(size=len(idx))
            b[idx] = rng.normal(size=len(idx))
            lhs = wedge_c(a, hodge_c(b, metric))
            rhs = scalar_product_c(a, b, metric) * tau
            scale = max(1.0, float(np.max(np.abs(lhs))))
            worst = max(worst, float(np.max(np.abs(lhs - rhs))) / scale)
    return worst


def _run_contraction_leibniz(scenario, points, mass):
    rng = _probe_rng("algebra.contraction-leibniz")
    worst = 0.0
    one = [1, 2, 4, 8]
    for p in points:
        metric = scenario.coframe.metric_at(p)
        for _ in range(4):
            u, v, w = (np.zeros(N_BLADES) for _ in range(3))
            u[one] = rng.normal(size=4)
            v[one] = rng.normal(size=4)
            w[one] = rng.normal(size=4)
            lhs = contract_left_c(u, wedge_c(v, w), metric)
            rhs = scalar_product_c(u, v, metric) * w - scalar_product_c(u, w, metric) * v
            scale = max(1.0, float(np.max(np.abs(lhs))))
            worst = max(worst, float(np.max(np.abs(lhs - rhs))) / scale)
    return worst


# -- extensor rows ----------------------------------------------------------


def _run_gauge_square(scenario, points, mass):
    worst = 0.0
    for p in points:
        metric = scenario.coframe.metric_at(p)
        h = gauge_extensor(metric)
        resid = eta_adjoint(h) @ h - metric_extensor(metric)
        worst = max(worst, float(np.max(np.abs(resid))))
    return worst


def _run_deformed_anticommutator(scenario, points, mass):
    worst = 0.0
    for p in points:
        metric = scenario.coframe.metric_at(p)
        h = gauge_extensor(metric)
        theta = scenario.coframe.theta(p)
        legs = np.zeros((4, N_BLADES))
        for a in range(4):
            legs[a][[1, 2, 4, 8]] = theta[a]
        for a in range(4):
            for b in range(a, 4):
                anti = deformed_product_c(legs[a], legs[b], h) + deformed_product_c(
                    legs[b], legs[a], h
                )
                anti[0] -= 2.0 * (_ETA[a] if a == b else 0.0)
                worst = max(worst, float(np.max(np.abs(anti))))
    return worst


# -- structure and curvature rows ------------------------------------------


def _run_structure_equation(scenario, points, mass):
    worst = 0.0
    unit = np.eye(N_BLADES)[[1, 2, 4, 8]]
    for p in points:
        conn = scenario.coframe.connection(p)
        for a in range(4):
            resid = conn.dtheta[a].copy()
            for b in range(4):
                resid += _wedge_k(
                    np.ascontiguousarray(conn.omega[a, b]),
                    np.ascontiguousarray(unit[b]),
                )
            worst = max(worst, float(np.max(np.abs(resid))))
    return worst


def _run_curvature_oracle(scenario, points, mass):
    worst = 0.0
    g_fn = oracles.lower_metric_fn(scenario.coframe.matrix_fn)
    scheme = scenario.coframe.scheme
    for p in points:
        engine = scenario.coframe.curvature(p).riemann
        reference = oracles.frame_components(
            scenario.coframe.matrix_fn, oracles.riemann_low(g_fn, p, scheme), p
        )
        scale = max(1.0, float(np.max(np.abs(reference))))
        worst = max(worst, float(np.max(np.abs(engine - reference))) / scale)
    return worst


def _run_naturality(scenario, points, mass):
    base_legs = [
        FormField.constant(1, scenario.base_domain, np.eye(N_BLADES)[1 << a])
        for a in range(4)
    ]
    pulled = [
        pullback(scenario.diffeo, leg, scenario.domain) for leg in base_legs
    ]
    worst = 0.0
    for p in points:
        for a in range(4):
            got = pulled[a].eval(p)
            want = scenario.coframe.coframe_field(a).eval(p)
            worst = max(worst, float(np.max(np.abs(got - want))))
        worst = max(
            worst, float(np.max(np.abs(scenario.coframe.curvature(p).riemann)))
        )
    return worst


# -- action rows ------------------------------------------------------------


def _run_dual_route(scenario, points, mass):
    worst = 0.0
    for p in points:
        forms = lag.first_order_scalar(scenario.coframe, p)
        table = lag.first_order_scalar_from_table(scenario.coframe, p)
        worst = max(worst, abs(forms - table))
    return worst


def _run_action_split(scenario, points, mass):
    worst = 0.0
    for p in points:
        worst = max(worst, lag.action_split_residual(scenario.coframe, p))
    return worst


def _run_quadratic_split(scenario, points, mass):
    delta_fields = lag.leg_codifferentials(scenario.coframe)
    worst = 0.0
    for p in points:
        lhs, rhs = lag.quadratic_split_sides(scenario.coframe, delta_fields, p)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


# -- field-equation rows ----------------------------------------------------


def _run_source_closure(scenario, points, mass):
    strengths = mx.field_strength_fields(scenario.coframe)
    worst = 0.0
    for p in points:
        assembly = mx.current_assembly(scenario.coframe, p)
        chain = mx.current_chain(scenario.coframe, p, strengths)
        worst = max(worst, float(np.max(np.abs(assembly - chain))))
    return worst


def _run_laplacian_split(scenario, points, mass):
    worst = 0.0
    for p in points:
        split = mx.laplacian_split(scenario.coframe, p)
        resid = split["total"] - split["ricci_part"] - split["dalembert_part"]
        worst = max(worst, float(np.max(np.abs(resid))))
    return worst


def _run_conservation(scenario, points, mass):
    worst = 0.0
    for p in points:
        worst = max(
            worst, float(np.max(np.abs(mx.conservation_residuals(scenario.coframe, p))))
        )
    return worst


def _run_balance(scenario, points, mass):
    worst = 0.0
    for p in points:
        worst = max(
            worst, float(np.max(np.abs(mx.balance_residuals(scenario.coframe, p))))
        )
    return worst


def _run_balance_conjugated(scenario, points, mass):
    worst = 0.0
    for p in points:
        worst = max(
            worst,
            float(np.max(np.abs(mx.balance_residuals_conjugated(scenario.coframe, p)))),
        )
    return worst


def _run_gauge_residual(scenario, points, mass):
    delta_fields = mx.leg_codifferential_fields(scenario.coframe)
    worst = 0.0
    for p in points:
        worst = max(worst, mx.gauge_residual(scenario.coframe, p, delta_fields))
    return worst


def _run_massive_balance(scenario, points, mass):
    worst = 0.0
    for p in points:
        worst = max(
            worst,
            float(np.max(np.abs(mx.balance_residuals(scenario.coframe, p, mass=mass)))),
        )
    return worst


def _run_massive_reduction(scenario, points, mass):
    worst = 0.0
    for p in points:
        shifted = mx.balance_residuals(scenario.coframe, p, mass=mass)
        plain = mx.balance_residuals(scenario.coframe, p)
        worst = max(worst, float(np.max(np.abs(shifted - plain))))
    return worst


# -- teleparallel rows ------------------------------------------------------


def _run_tele_equivalence(scenario, points, mass):
    worst = 0.0
    for p in points:
        tele = tp.teleparallel_density(scenario.coframe, p)
        first = lag.first_order_density(scenario.coframe, p)
        worst = max(worst, float(np.max(np.abs(tele - first))))
    return worst


def _run_tele_orthogonality(scenario, points, mass):
    worst = 0.0
    for p in points:
        for value in tp.orthogonality_residuals(scenario.coframe, p).values():
            worst = max(worst, abs(value))
    return worst


def _run_tele_completeness(scenario, points, mass):
    worst = 0.0
    for p in points:
        worst = max(worst, tp.completeness_residual(scenario.coframe, p))
    return worst


def _run_tele_source_form(scenario, points, mass):
    worst = 0.0
    for p in points:
        worst = max(
            worst, float(np.max(np.abs(tp.source_form_residuals(scenario.coframe, p))))
        )
    return worst


REGISTRY = [
    Identity(
        "algebra.contraction-leibniz",
        "vector contraction into a wedge of vectors expands by the product rule",
        0, 1e-10, "check", _always, _run_contraction_leibniz,
    ),
    Identity(
        "algebra.double-dual",
        "double metric dual is the grade-dependent sign times the identity",
        0, 1e-10, "check", _always, _run_double_dual,
    ),
    Identity(
        "algebra.dual-pairing",
        "wedge against a dual equals the scalar product times the volume form",
        0, 1e-10, "check", _always, _run_dual_pairing,
    ),
    Identity(
        "cartan.curvature-oracle",
        "structure-equation curvature matches the Christoffel-route components",
        2, 1e-5, "check", _always, _run_curvature_oracle,
    ),
    Identity(
        "cartan.structure-equation",
        "coframe derivative plus connection wedge coframe vanishes (no torsion)",
        1, 1e-8, "check", _always, _run_structure_equation,
    ),
    Identity(
        "diffeo.naturality",
        "pulled-back flat legs reproduce the coframe and stay flat",
        2, 1e-8, "check", _natural_only, _run_naturality,
    ),
    Identity(
        "extensor.deformed-anticommutator",
        "coframe legs anticommute to twice the signature under the deformed product",
        0, 1e-10, "check", _always, _run_deformed_anticommutator,
    ),
    Identity(
        "extensor.gauge-square",
        "eta-adjoint of the gauge factor times itself is the metric extensor",
        0, 1e-10, "check", _always, _run_gauge_square,
    ),
    Identity(
        "lagrangian.action-split",
        "curvature density equals first-order density minus the boundary flow",
        2, 1e-6, "check", _always, _run_action_split,
    ),
    Identity(
        "lagrangian.dual-route",
        "form-contraction and table-contraction first-order scalars agree",
        1, 1e-9, "check", _always, _run_dual_route,
    ),
    Identity(
        "lagrangian.quadratic-split",
        "derivative square minus codifferential square equals the cross-wedge square",
        1, 1e-5, "check", _always, _run_quadratic_split,
    ),
    Identity(
        "massive.balance",
        "balance law with the mass-shifted stress still closes",
        2, 1e-6, "check", _massive_only, _run_massive_balance,
    ),
    Identity(
        "massive.reduction",
        "mass shift cancels: massive balance equals massless balance",
        2, 1e-14, "check", _massive_only, _run_massive_reduction,
    ),
    Identity(
        "maxwell.balance",
        "superpotential flow balances dual stress plus gravitational energy",
        2, 1e-6, "check", _always, _run_balance,
    ),
    Identity(
        "maxwell.balance-conjugated",
        "balance law with the metric dual taken through the gauge factor",
        2, 1e-6, "check", _always, _run_balance_conjugated,
    ),
    Identity(
        "maxwell.conservation",
        "assembled source currents are codifferential-free",
        3, 1e-3, "check", _always, _run_conservation,
    ),
    Identity(
        "maxwell.gauge-residual",
        "largest leg codifferential (gauge monitor, reported only)",
        1, None, "info", _always, _run_gauge_residual,
    ),
    Identity(
        "maxwell.laplacian-split",
        "wave operator on legs splits into curvature plus rough parts",
        2, 1e-4, "check", _always, _run_laplacian_split,
    ),
    Identity(
        "maxwell.source-closure",
        "term-by-term sources equal minus the codifferential of the strengths",
        2, 1e-4, "check", _always, _run_source_closure,
    ),
    Identity(
        "teleparallel.completeness",
        "tensor, vector and axial parts sum back to the torsion",
        1, 1e-12, "check", _always, _run_tele_completeness,
    ),
    Identity(
        "teleparallel.equivalence",
        "weighted torsion square equals the first-order action density",
        1, 1e-10, "check", _always, _run_tele_equivalence,
    ),
    Identity(
        "teleparallel.orthogonality",
        "torsion parts are pairwise orthogonal under the dual pairing",
        1, 1e-10, "check", _always, _run_tele_orthogonality,
    ),
    Identity(
        "teleparallel.source-form",
        "torsion codifferential plus assembled current vanishes",
        2, 1e-4, "check", _always, _run_tele_source_form,
    ),
]

IDENTITY_IDS = tuple(entry.id for entry in REGISTRY)


def run_suite(
    scenario: Scenario,
    mass: float = 0.0,
    n_points: Optional[int] = None,
    explicit_points: Optional[np.ndarray] = None,
    tolerances: Optional[dict] = None,
) -> list:
    """Evaluate every identity on the scenario; returns report rows.

    Point counts follow the per-depth budget; n_points overrides the
    budget for every identity (capped at 64), and explicit points win
    over both. The domain margin covers the deepest stencil chain so
    nested evaluations cannot step outside the chart box.
    """
    tolerances = tolerances or {}
    margin = 5 * scenario.coframe.scheme.reach
    rows = []
    pool = None
    if explicit_points is None:
        largest = max(_BUDGET.values()) if n_points is None else min(
            max(n_points, 1), 64
        )
        pool = scenario.sample_points(largest, margin)
    for entry in sorted(REGISTRY, key=lambda e: e.id):
        skip_reason = entry.applies(scenario, mass)
        tolerance = tolerances.get(entry.id, entry.tolerance)
        row = {
            "id": entry.id,
            "anchor": entry.anchor,
            "severity": entry.severity,
            "tolerance": tolerance,
        }
        if skip_reason is not None:
            row.update(status="skipped", residual=None, points=0, note=skip_reason)
            rows.append(row)
            continue
        if explicit_points is not None:
            points = np.asarray(explicit_points, dtype=float)
        else:
            count = len(pool) if n_points is not None else _BUDGET[entry.depth]
            points = pool[:count]
        residual = float(entry.run(scenario, points, mass))
        if entry.severity == "info":
            status = "info"
        else:
            status = "pass" if residual <= tolerance else "fail"
        row.update(status=status, residual=residual, points=len(points), note="")
        rows.append(row)
    return rows
