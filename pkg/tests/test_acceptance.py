"""Acceptance gate: one test per shipping criterion, one verdict line each.

Each test prints a single "acceptance NN <name>: PASS|FAIL" line so the
gate can be read off a terminal capture directly. Tolerances here are
contractual; loosening them is not a fix, it is a report.
"""

import json

import numpy as np

from tetrax._kernels._tables import ETA_DIAG, GRADE, N_BLADES
from tetrax import oracles
from tetrax import lagrangian as lag
from tetrax import maxwell as mx
from tetrax import teleparallel as tp
from tetrax.cli import main as cli_main
from tetrax.fields import (
    Domain,
    FDScheme,
    FormField,
    codifferential,
    exterior_derivative,
    pullback,
)
from tetrax.identities import (
    _run_deformed_anticommutator,
    _run_gauge_square,
    _run_structure_equation,
)
from tetrax.mv import (
    Metric,
    geometric_c,
    hodge_c,
    scalar_product_c,
    wedge_c,
)
from tetrax.scenarios import SCENARIO_NAMES, get_scenario

FLRW_POINT = np.array([2.0, 0.3, -0.4, 0.7])
SCHW_POINT = np.array([0.0, 10.0, 1.2, 2.0])

_CACHE = {}


def scen(name, order=2, **params):
    key = (name, order, tuple(sorted(params.items())))
    if key not in _CACHE:
        _CACHE[key] = get_scenario(
            name, scheme=FDScheme(step=1e-3, order=order), **params
        )
    return _CACHE[key]


def pts(scenario, n):
    return scenario.sample_points(n, margin=5 * scenario.coframe.scheme.reach)


def verdict(tag, worst, bound):
    ok = worst <= bound
    print(f"acceptance {tag}: {'PASS' if ok else 'FAIL'} "
          f"(worst {worst:.3e}, bound {bound:.0e})")
    assert ok, f"{tag}: worst residual {worst:.6e} exceeds {bound:.0e}"


def test_01_algebra_suite():
    rng = np.random.default_rng(20260822)
    worst = 0.0
    for _ in range(1000):
        while True:
            m = np.eye(4) + 0.3 * rng.normal(size=(4, 4))
            if abs(np.linalg.det(m)) > 0.3:
                break
        metric = Metric(m @ np.diag(ETA_DIAG) @ m.T)

        u = np.zeros(N_BLADES)
        v = np.zeros(N_BLADES)
        u[[1, 2, 4, 8]] = rng.normal(size=4)
        v[[1, 2, 4, 8]] = rng.normal(size=4)
        anti = geometric_c(u, v, metric) + geometric_c(v, u, metric)
        expect = np.zeros(N_BLADES)
        expect[0] = 2.0 * scalar_product_c(u, v, metric)
        scale = max(1.0, float(np.max(np.abs(anti))))
        worst = max(worst, float(np.max(np.abs(anti - expect))) / scale)

        a, b, c = (rng.normal(size=N_BLADES) for _ in range(3))
        left = geometric_c(geometric_c(a, b, metric), c, metric)
        right = geometric_c(a, geometric_c(b, c, metric), metric)
        scale = max(1.0, float(np.max(np.abs(left))))
        worst = max(worst, float(np.max(np.abs(left - right))) / scale)

        grade = int(rng.integers(0, 5))
        idx = [i for i in range(N_BLADES) if GRADE[i] == grade]
        probe = np.zeros(N_BLADES)
        probe[idx] = rng.normal(size=len(idx))
        twice = hodge_c(hodge_c(probe, metric), metric)
        expect = -((-1.0) ** (grade * (4 - grade))) * probe
        scale = max(1.0, float(np.max(np.abs(twice))))
        worst = max(worst, float(np.max(np.abs(twice - expect))) / scale)

        other = np.zeros(N_BLADES)
        other[idx] = rng.normal(size=len(idx))
        lhs = wedge_c(probe, hodge_c(other, metric))
        rhs = wedge_c(other, hodge_c(probe, metric))
        scale = max(1.0, float(np.max(np.abs(lhs))))
        worst = max(worst, float(np.max(np.abs(lhs - rhs))) / scale)
    verdict("01 algebra-suite", worst, 1e-10)


def test_02_structure_equation_gate():
    worst = 0.0
    for name in SCENARIO_NAMES:
        sc = scen(name)
        worst = max(worst, _run_structure_equation(sc, pts(sc, 4), 0.0))
    verdict("02 structure-equation", worst, 1e-6)


def test_03_curvature_oracle():
    sc = scen("schwarzschild", order=4)
    curv = sc.coframe.curvature(SCHW_POINT)
    worst = float(np.max(np.abs(curv.ricci_one_forms)))
    bound_hit = worst <= 1e-5

    literal = 48.0 / 10.0**6
    rel_k = abs(curv.kretschmann - literal) / literal
    g_fn = oracles.lower_metric_fn(sc.coframe.matrix_fn)
    oracle_k = oracles.kretschmann(g_fn, SCHW_POINT, sc.coframe.scheme)
    rel_k_oracle = abs(curv.kretschmann - oracle_k) / literal

    flrw = scen("flrw_flat", order=4)
    rel_r = abs(flrw.coframe.curvature(FLRW_POINT).scalar_curvature - 1.5) / 1.5

    worst_rel = max(rel_k, rel_k_oracle, rel_r)
    ok = bound_hit and worst_rel <= 1e-3
    print(f"acceptance 03 curvature-oracle: {'PASS' if ok else 'FAIL'} "
          f"(ricci {worst:.3e} vs 1e-05, relative {worst_rel:.3e} vs 1e-03)")
    assert ok


def test_04_action_split_and_dual_route():
    worst_split = 0.0
    worst_quad = 0.0
    worst_route = 0.0
    for name in SCENARIO_NAMES:
        sc = scen(name)
        fine = scen(name, order=4)
        delta_fields = lag.leg_codifferentials(fine.coframe)
        for p in pts(sc, 2):
            worst_split = max(worst_split, lag.action_split_residual(sc.coframe, p))
            lhs, rhs = lag.quadratic_split_sides(fine.coframe, delta_fields, p)
            worst_quad = max(worst_quad, float(np.max(np.abs(lhs - rhs))))
        for p in pts(sc, 3):
            forms = lag.first_order_scalar(sc.coframe, p)
            table = lag.first_order_scalar_from_table(sc.coframe, p)
            worst_route = max(worst_route, abs(forms - table))
    ok = worst_split <= 1e-5 and worst_quad <= 1e-5 and worst_route <= 1e-9
    print(f"acceptance 04 action-split: {'PASS' if ok else 'FAIL'} "
          f"(split {worst_split:.3e}, footnote {worst_quad:.3e} vs 1e-05, "
          f"dual route {worst_route:.3e} vs 1e-09)")
    assert ok


def test_05_source_closure():
    worst_closed = 0.0
    worst_source = 0.0
    worst_cons = 0.0
    for name in ("rindler", "flrw_flat", "schwarzschild"):
        sc = scen(name)
        strengths = mx.field_strength_fields(sc.coframe)
        d_strengths = [
            exterior_derivative(f, sc.coframe.scheme) for f in strengths
        ]
        for p in pts(sc, 2):
            for ddf in d_strengths:
                worst_closed = max(worst_closed, float(np.max(np.abs(ddf.eval(p)))))
            assembly = mx.current_assembly(sc.coframe, p)
            chain = mx.current_chain(sc.coframe, p, strengths)
            worst_source = max(worst_source, float(np.max(np.abs(assembly - chain))))
            worst_cons = max(
                worst_cons,
                float(np.max(np.abs(mx.conservation_residuals(sc.coframe, p)))),
            )
    ok = worst_closed <= 1e-5 and worst_source <= 1e-4 and worst_cons <= 1e-3
    print(f"acceptance 05 source-closure: {'PASS' if ok else 'FAIL'} "
          f"(closure {worst_closed:.3e} vs 1e-05, sources {worst_source:.3e} "
          f"vs 1e-04, conservation {worst_cons:.3e} vs 1e-03)")
    assert ok


def test_06_laplacian_split():
    worst = 0.0
    for name in ("flrw_flat", "schwarzschild"):
        sc = scen(name)
        for p in pts(sc, 3):
            split = mx.laplacian_split(sc.coframe, p)
            resid = split["total"] - split["ricci_part"] - split["dalembert_part"]
            worst = max(worst, float(np.max(np.abs(resid))))
    verdict("06 laplacian-split", worst, 1e-4)


def test_07_superpotential_balance():
    worst = 0.0
    for name in SCENARIO_NAMES:
        sc = scen(name)
        for p in pts(sc, 2):
            worst = max(
                worst, float(np.max(np.abs(mx.balance_residuals(sc.coframe, p))))
            )
    sc = scen("perturbed_flat")
    worst_conj = 0.0
    for p in pts(sc, 2):
        worst_conj = max(
            worst_conj,
            float(np.max(np.abs(mx.balance_residuals_conjugated(sc.coframe, p)))),
        )
    ok = worst <= 1e-4 and worst_conj <= 1e-4
    print(f"acceptance 07 superpotential-balance: {'PASS' if ok else 'FAIL'} "
          f"(all scenarios {worst:.3e}, conjugated {worst_conj:.3e}, bound 1e-04)")
    assert ok


def test_08_extensor_suite():
    worst = 0.0
    for name in SCENARIO_NAMES:
        sc = scen(name)
        sample = pts(sc, 8)
        worst = max(worst, _run_gauge_square(sc, sample, 0.0))
        worst = max(worst, _run_deformed_anticommutator(sc, sample, 0.0))
    verdict("08 extensor-suite", worst, 1e-10)


def test_09_teleparallel_equivalence():
    worst_eq = 0.0
    worst_complete = 0.0
    worst_orth = 0.0
    for name in SCENARIO_NAMES:
        sc = scen(name)
        for p in pts(sc, 2):
            tele = tp.teleparallel_density(sc.coframe, p)
            first = lag.first_order_density(sc.coframe, p)
            worst_eq = max(worst_eq, float(np.max(np.abs(tele - first))))
            worst_complete = max(worst_complete, tp.completeness_residual(sc.coframe, p))
            for value in tp.orthogonality_residuals(sc.coframe, p).values():
                worst_orth = max(worst_orth, abs(value))
    ok = worst_eq <= 1e-5 and worst_complete <= 1e-12 and worst_orth <= 1e-10
    print(f"acceptance 09 teleparallel: {'PASS' if ok else 'FAIL'} "
          f"(equivalence {worst_eq:.3e} vs 1e-05, completeness "
          f"{worst_complete:.3e} vs 1e-12, orthogonality {worst_orth:.3e} vs 1e-10)")
    assert ok


def test_10_massive_variant():
    sc = scen("flrw_flat")
    exact = True
    worst = 0.0
    for p in pts(sc, 2):
        massless = mx.balance_residuals(sc.coframe, p)
        at_zero = mx.balance_residuals(sc.coframe, p, mass=0.0)
        exact = exact and np.array_equal(massless, at_zero)
        worst = max(
            worst,
            float(np.max(np.abs(mx.balance_residuals(sc.coframe, p, mass=0.1)))),
        )
    ok = exact and worst <= 1e-4
    print(f"acceptance 10 massive-variant: {'PASS' if ok else 'FAIL'} "
          f"(zero-mass reduction exact: {exact}, massive balance {worst:.3e} "
          f"vs 1e-04)")
    assert ok


def test_11_pullback_naturality():
    sc = scen("perturbed_flat", order=4, epsilon=0.01)
    scheme = sc.coframe.scheme
    base = sc.base_domain
    flat = Metric.minkowski()

    def probe_one(p):
        out = np.zeros(N_BLADES)
        out[1] = np.sin(0.3 * p[0] + 0.1 * p[1])
        out[8] = np.cos(0.2 * p[2] - 0.1 * p[3])
        return out

    def probe_two(p):
        out = np.zeros(N_BLADES)
        out[3] = np.sin(0.2 * p[0] - 0.3 * p[2])
        out[12] = np.cos(0.1 * p[1] + 0.2 * p[3])
        return out

    worst = 0.0
    for grade, fn in ((1, probe_one), (2, probe_two)):
        beta = FormField(grade, base, fn)
        pulled = pullback(sc.diffeo, beta, sc.domain)

        d_then_pull = pullback(sc.diffeo, exterior_derivative(beta, scheme), sc.domain)
        pull_then_d = exterior_derivative(pulled, scheme)

        co_then_pull = pullback(
            sc.diffeo, codifferential(beta, lambda p: flat, scheme), sc.domain
        )
        pull_then_co = codifferential(pulled, sc.coframe.metric_at, scheme)

        for p in pts(sc, 2):
            worst = max(
                worst, float(np.max(np.abs(d_then_pull.eval(p) - pull_then_d.eval(p))))
            )
            worst = max(
                worst,
                float(np.max(np.abs(co_then_pull.eval(p) - pull_then_co.eval(p)))),
            )
    verdict("11 pullback-naturality", worst, 1e-5)


def test_12_cli_determinism(tmp_path):
    first = tmp_path / "one.json"
    second = tmp_path / "two.json"
    codes = [
        cli_main(["verify", "--scenario", "minkowski", "--out", str(target)])
        for target in (first, second)
    ]
    identical = first.read_bytes() == second.read_bytes()
    report = json.loads(first.read_text())
    checks = [
        r for r in report["identities"]
        if r["severity"] == "check" and r["status"] != "skipped"
    ]
    all_pass = all(r["status"] == "pass" for r in checks)
    ok = codes == [0, 0] and identical and all_pass and len(checks) > 0
    print(f"acceptance 12 cli-determinism: {'PASS' if ok else 'FAIL'} "
          f"(exit codes {codes}, byte-identical: {identical}, "
          f"{sum(r['status'] == 'pass' for r in checks)}/{len(checks)} checks pass)")
    assert ok
