"""Timing comparison between the compiled and pure-python kernel backends.

Runs itself twice as a subprocess, once with TETRAX_FORCE_PY=1, so each
measurement imports a clean interpreter with the backend it claims to
time. Reports microseconds per call and the end-to-end cost of a full
curvature bundle on the expanding-chart scenario.

Usage: python3 benchmarks/bench_kernels.py
"""

import json
import os
import subprocess
import sys
import timeit

import numpy as np


def measure():
    from tetrax._kernels import BACKEND, contract_left_eta, geometric_eta, wedge
    from tetrax.fields import FDScheme
    from tetrax.scenarios import get_scenario

    rng = np.random.default_rng(7)
    pairs = [
        (rng.normal(size=16), rng.normal(size=16)) for _ in range(256)
    ]

    results = {"backend": BACKEND}
    for label, op in (
        ("wedge", wedge),
        ("geometric", geometric_eta),
        ("contract_left", contract_left_eta),
    ):
        def batch(op=op):
            for a, b in pairs:
                op(a, b)

        loops = 20
        best = min(timeit.repeat(batch, number=loops, repeat=3))
        results[label] = best / (loops * len(pairs)) * 1e6  # us per call

    scenario = get_scenario("flrw_flat", scheme=FDScheme(1e-3, order=2))
    points = scenario.sample_points(8, margin=0.01)

    def curvature_batch():
        for p in points:
            scenario.coframe.curvature(p)
        scenario.coframe._curv_cache.clear()
        scenario.coframe._conn_cache.clear()

    best = min(timeit.repeat(curvature_batch, number=1, repeat=5))
    results["curvature_bundle"] = best / len(points) * 1e3  # ms per point
    return results


def main():
    if "--worker" in sys.argv:
        print(json.dumps(measure()))
        return

    runs = {}
    for env_extra in ({}, {"TETRAX_FORCE_PY": "1"}):
        env = dict(os.environ, **env_extra)
        out = subprocess.run(
            [sys.executable, __file__, "--worker"],
            capture_output=True, text=True, env=env, check=True,
        )
        data = json.loads(out.stdout.strip().splitlines()[-1])
        runs[data.pop("backend")] = data

    if len(runs) == 1:
        label = next(iter(runs))
        print(f"only the {label} backend is available")

    rows = ["wedge", "geometric", "contract_left"]
    print(f"{'kernel':<18}" + "".join(f"{b:>12}" for b in runs) + f"{'ratio':>9}")
    for row in rows:
        values = [runs[b][row] for b in runs]
        ratio = values[-1] / values[0] if len(values) > 1 else float("nan")
        cells = "".join(f"{v:>10.2f}us" for v in values)
        print(f"{row:<18}{cells}{ratio:>8.1f}x")
    values = [runs[b]["curvature_bundle"] for b in runs]
    ratio = values[-1] / values[0] if len(values) > 1 else float("nan")
    cells = "".join(f"{v:>10.2f}ms" for v in values)
    print(f"{'curvature_bundle':<18}{cells}{ratio:>8.1f}x")


if __name__ == "__main__":
    main()
