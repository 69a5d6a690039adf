"""Report assembly and rendering for verification runs.

The json rendering is byte-stable: keys are sorted, floats go through
Python's shortest-roundtrip repr, there are no timestamps, and the text
ends in a single newline. Two runs with the same configuration on the
same backend produce identical bytes.
"""

from __future__ import annotations

import csv
import io
import json

from . import __version__, kernel_backend

# sign and ordering choices baked into the engine, stated once per report
CONVENTIONS = {
    "basis-order": "blades ascending by index bitmask, sixteen components",
    "codifferential": "minus inverse dual of derivative of dual, all grades",
    "codifferential-adjoint": "dual of derivative of dual, all grades",
    "double-dual": "sign (-1)^(p(4-p)) times sign of the metric determinant",
    "interior-product": "left contraction, lower grade into higher",
    "orientation": "positive chart orientation unless a scenario says otherwise",
    "signature": "time positive, space negative",
    "volume-form": "root of the absolute metric determinant on the top blade",
}


def build_report(
    scenario_name: str,
    params: dict,
    rows: list,
    mass: float = 0.0,
    fd_step: float = 1e-3,
    fd_order: int = 2,
    point_source: str = "halton",
) -> dict:
    checks = [r for r in rows if r["severity"] == "check" and r["status"] != "skipped"]
    failed = [r for r in checks if r["status"] == "fail"]
    summary = {
        "checked": len(checks),
        "failed": len(failed),
        "info": sum(1 for r in rows if r["status"] == "info"),
        "passed": sum(1 for r in checks if r["status"] == "pass"),
        "skipped": sum(1 for r in rows if r["status"] == "skipped"),
        "status": "fail" if failed else "pass",
    }
    return {
        "engine": {
            "backend": kernel_backend,
            "conventions": CONVENTIONS,
            "name": "tetrax",
            "version": __version__,
        },
        "identities": rows,
        "run": {
            "fd_order": fd_order,
            "fd_step": fd_step,
            "mass": mass,
            "params": {k: float(v) for k, v in sorted(params.items())},
            "point_source": point_source,
            "scenario": scenario_name,
        },
        "summary": summary,
    }


def render_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2) + "\n"


def render_csv(report: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(
        ["id", "severity", "status", "residual", "tolerance", "points", "note"]
    )
    for row in report["identities"]:
        writer.writerow(
            [
                row["id"],
                row["severity"],
                row["status"],
                "" if row["residual"] is None else repr(row["residual"]),
                "" if row["tolerance"] is None else repr(row["tolerance"]),
                row["points"],
                row["note"],
            ]
        )
    return buf.getvalue()


def render_text(report: dict) -> str:
    run = report["run"]
    lines = []
    params = " ".join(f"{k}={v}" for k, v in run["params"].items())
    lines.append(
        f"scenario {run['scenario']}"
        + (f" ({params})" if params else "")
        + f"  mass={run['mass']}  fd: order {run['fd_order']} step {run['fd_step']}"
    )
    lines.append(
        f"engine tetrax {report['engine']['version']}"
        f" [{report['engine']['backend']} backend]"
    )
    lines.append("")
    width = max(len(r["id"]) for r in report["identities"])
    for row in report["identities"]:
        if row["status"] == "skipped":
            tail = f"skipped ({row['note']})"
        elif row["status"] == "info":
            tail = f"info    residual {row['residual']:.6e}"
        else:
            tail = (
                f"{row['status']:<7} residual {row['residual']:.6e}"
                f" tol {row['tolerance']:.0e} ({row['points']} pts)"
            )
        lines.append(f"  {row['id']:<{width}}  {tail}")
    s = report["summary"]
    lines.append("")
    lines.append(
        f"{s['passed']}/{s['checked']} checks passed, {s['failed']} failed,"
        f" {s['info']} info, {s['skipped']} skipped -> {s['status'].upper()}"
    )
    return "\n".join(lines) + "\n"


_RENDERERS = {"json": render_json, "csv": render_csv, "text": render_text}


def render(report: dict, fmt: str) -> str:
    try:
        renderer = _RENDERERS[fmt]
    except KeyError:
        raise ValueError(f"unknown report format {fmt!r}") from None
    return renderer(report)
