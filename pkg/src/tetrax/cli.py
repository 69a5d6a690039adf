"""Command line front end.

Three subcommands: ``verify`` runs the identity suite on one scenario
and renders a report, ``list-scenarios`` and ``list-identities`` print
what is available. Exit codes: 0 all checks passed, 1 at least one
check failed, 2 bad usage or configuration, 3 a runtime evaluation
error (degenerate coframe, stencil leaving the chart, and the like).
"""

from __future__ import annotations

import argparse
import os
import sys
from typing import Optional

import numpy as np

from .errors import ConfigError, ParamOutOfRange, TetraxError, UnknownScenario
from .fields import FDScheme
from .identities import IDENTITY_IDS, REGISTRY, run_suite
from .report import build_report, render
from .scenarios import SCENARIO_NAMES, get_scenario

_SCENARIO_HELP = {
    "minkowski": "flat chart, no parameters",
    "lorentz_rotated": "boosted flat chart; rapidity (|r| <= 3, default 0.3), axis (1|2|3, default 1)",
    "rindler": "uniformly accelerated flat chart, no parameters",
    "flrw_flat": "power-law expanding chart; exponent ((0, 1], default 1.0)",
    "schwarzschild": "static spherical vacuum chart; mass ((0, 10], default 1.0)",
    "perturbed_flat": "wavy deformation of a flat chart; epsilon ((0, 0.05], default 0.01)",
}

_CONFIG_KEYS = {
    "scenario", "mass", "fd_step", "fd_order", "n_points", "points",
    "format", "out",
}


def _parse_kv(pairs, flag):
    out = {}
    for item in pairs or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ConfigError(f"{flag} expects key=value, got {item!r}")
        try:
            out[key] = float(value)
        except ValueError:
            raise ConfigError(f"{flag} {key}: {value!r} is not a number") from None
    return out


def _load_config(path):
    """Flat key=value file; # starts a comment. Values stay strings."""
    raw = {}
    try:
        with open(path) as handle:
            for lineno, line in enumerate(handle, 1):
                stripped = line.split("#", 1)[0].strip()
                if not stripped:
                    continue
                key, sep, value = stripped.partition("=")
                key, value = key.strip(), value.strip()
                if not sep or not key or not value:
                    raise ConfigError(
                        f"{path}:{lineno}: expected key=value, got {line.rstrip()!r}"
                    )
                raw[key] = value
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from None
    for key in raw:
        base = key.split(".", 1)[0]
        if key not in _CONFIG_KEYS and base not in ("param", "tol"):
            raise ConfigError(f"unknown config key {key!r}")
    return raw


def _parse_points(text):
    """Points from a csv file path or inline t,x,y,z;t,x,y,z groups."""
    rows = []
    if os.path.exists(text):
        with open(text) as handle:
            for lineno, line in enumerate(handle, 1):
                stripped = line.strip()
                if not stripped or stripped.startswith("#"):
                    continue
                parts = stripped.split(",")
                if len(parts) != 4:
                    raise ConfigError(
                        f"{text}:{lineno}: expected four comma-separated numbers"
                    )
                try:
                    rows.append([float(v) for v in parts])
                except ValueError:
                    raise ConfigError(f"{text}:{lineno}: bad number") from None
    else:
        for group in text.split(";"):
            parts = group.split(",")
            if len(parts) != 4:
                raise ConfigError(
                    f"--points needs four numbers per point, got {group!r}"
                )
            try:
                rows.append([float(v) for v in parts])
            except ValueError:
                raise ConfigError(f"--points: bad number in {group!r}") from None
    if not rows:
        raise ConfigError("no points supplied")
    return np.array(rows, dtype=float)


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="tetrax",
        description="numerical exterior-calculus checks for coframe gravity",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run the identity suite on a scenario")
    verify.add_argument("--scenario", help="scenario name (see list-scenarios)")
    verify.add_argument(
        "--param", action="append", metavar="K=V",
        help="scenario parameter, repeatable",
    )
    verify.add_argument(
        "--points", metavar="SPEC",
        help="explicit chart points: csv file or inline t,x,y,z;t,x,y,z",
    )
    verify.add_argument(
        "--n-points", type=int, metavar="N",
        help="points per identity (default: per-identity budget, max 64)",
    )
    verify.add_argument("--fd-step", type=float, help="stencil step (default 1e-3)")
    verify.add_argument(
        "--fd-order", type=int, choices=(2, 4), help="stencil order (default 2)"
    )
    verify.add_argument(
        "--mass", type=float, help="mass parameter for the massive rows (default 0)"
    )
    verify.add_argument(
        "--tol", action="append", metavar="ID=VAL",
        help="override one identity tolerance, repeatable",
    )
    verify.add_argument("--out", metavar="FILE", help="write the report here")
    verify.add_argument(
        "--format", choices=("json", "csv", "text"), help="report format (default json)"
    )
    verify.add_argument(
        "--config", metavar="FILE",
        help="flat key=value defaults; command line options win",
    )

    sub.add_parser("list-scenarios", help="print the scenario registry")
    sub.add_parser("list-identities", help="print the identity registry")
    return parser


def _setting(cli_value, config, key, cast, fallback):
    if cli_value is not None:
        return cli_value
    if key in config:
        try:
            return cast(config[key])
        except ValueError:
            raise ConfigError(f"config {key}: {config[key]!r} is invalid") from None
    return fallback


def _run_verify(args) -> int:
    config = _load_config(args.config) if args.config else {}

    scenario_name = _setting(args.scenario, config, "scenario", str, None)
    if scenario_name is None:
        raise ConfigError("a scenario is required (--scenario or config)")
    mass = _setting(args.mass, config, "mass", float, 0.0)
    fd_step = _setting(args.fd_step, config, "fd_step", float, 1e-3)
    fd_order = _setting(args.fd_order, config, "fd_order", int, 2)
    if fd_order not in (2, 4):
        raise ConfigError("fd_order must be 2 or 4")
    n_points = _setting(args.n_points, config, "n_points", int, None)
    fmt = _setting(args.format, config, "format", str, "json")
    if fmt not in ("json", "csv", "text"):
        raise ConfigError(f"unknown report format {fmt!r}")
    out_path = _setting(args.out, config, "out", str, None)
    points_spec = _setting(args.points, config, "points", str, None)

    params = {
        key.split(".", 1)[1]: float(value)
        for key, value in config.items()
        if key.startswith("param.")
    }
    params.update(_parse_kv(args.param, "--param"))

    tolerances = {}
    for key, value in config.items():
        if key.startswith("tol."):
            try:
                tolerances[key.split(".", 1)[1]] = float(value)
            except ValueError:
                raise ConfigError(f"config {key}: {value!r} is not a number") from None
    for ident, value in _parse_kv(args.tol, "--tol").items():
        tolerances[ident] = value
    for ident in tolerances:
        if ident not in IDENTITY_IDS:
            raise ConfigError(f"--tol names unknown identity {ident!r}")

    scheme = FDScheme(step=fd_step, order=fd_order)
    scenario = get_scenario(scenario_name, scheme=scheme, **params)

    explicit = None
    if points_spec is not None:
        explicit = _parse_points(points_spec)
        margin = 5 * scheme.reach
        inner = scenario.domain.shrunk(margin)
        for p in explicit:
            if not inner.contains(p):
                raise ConfigError(
                    f"point {tuple(float(v) for v in p)} lies outside the "
                    f"usable chart box (stencil margin {margin:g})"
                )

    rows = run_suite(
        scenario,
        mass=mass,
        n_points=n_points,
        explicit_points=explicit,
        tolerances=tolerances,
    )
    report = build_report(
        scenario_name,
        scenario.params,
        rows,
        mass=mass,
        fd_step=fd_step,
        fd_order=fd_order,
        point_source="explicit" if explicit is not None else "halton",
    )
    rendered = render(report, fmt)
    if out_path:
        with open(out_path, "w") as handle:
            handle.write(rendered)
    else:
        sys.stdout.write(rendered)
    return 0 if report["summary"]["status"] == "pass" else 1


def _run_list_scenarios() -> int:
    for name in SCENARIO_NAMES:
        print(f"{name:<16} {_SCENARIO_HELP[name]}")
    return 0


def _run_list_identities() -> int:
    width = max(len(e.id) for e in REGISTRY)
    for entry in sorted(REGISTRY, key=lambda e: e.id):
        tol = "reported" if entry.tolerance is None else f"tol {entry.tolerance:.0e}"
        print(f"{entry.id:<{width}}  [{entry.severity}, {tol}]  {entry.anchor}")
    return 0


def main(argv: Optional[list] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return _run_verify(args)
        if args.command == "list-scenarios":
            return _run_list_scenarios()
        return _run_list_identities()
    except (ConfigError, UnknownScenario, ParamOutOfRange) as exc:
        print(f"tetrax: {exc}", file=sys.stderr)
        return 2
    except TetraxError as exc:
        print(f"tetrax: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
