"""Chart scenarios: named coframe fields with validated parameters.

Each scenario packages a chart box, an orthonormal coframe field on it,
the parameters that shaped it, and (when the coframe arises as the
pullback of the flat coframe under a chart map) the map itself, so the
naturality checks can rebuild the coframe independently.
"""

from __future__ import annotations

import zlib
from typing import Callable, Optional

import numpy as np

from .cartan import Coframe
from .errors import ParamOutOfRange, UnknownScenario
from .fields import Diffeomorphism, Domain, FDScheme

_HALTON_BASES = (2, 3, 5, 7)


def _radical_inverse(base: int, index: int) -> float:
    out, frac = 0.0, 1.0 / base
    while index > 0:
        out += (index % base) * frac
        index //= base
        frac /= base
    return out


class Scenario:
    """A named coframe field over a chart box."""

    __slots__ = ("name", "params", "domain", "coframe", "diffeo", "base_domain", "natural")

    def __init__(self, name, params, domain, coframe, diffeo=None, base_domain=None, natural=False):
        self.name = name
        self.params = params
        self.domain = domain
        self.coframe = coframe
        self.diffeo = diffeo
        self.base_domain = base_domain
        self.natural = natural

    def sample_points(self, n: int, margin: float = 0.0) -> np.ndarray:
        """Low-discrepancy points in the box, pulled in by margin.

        The start index of the sequence is derived from the scenario
        name so different scenarios do not share the same lattice, and
        points hitting an exclusion are skipped.
        """
        box = self.domain.shrunk(margin) if margin > 0.0 else self.domain
        start = zlib.crc32(self.name.encode()) % 1009 + 17
        points, index = [], start
        while len(points) < n:
            u = np.array([_radical_inverse(b, index) for b in _HALTON_BASES])
            index += 1
            p = box.lo + u * (box.hi - box.lo)
            if box.contains(p):
                points.append(p)
            if index - start > 64 * n + 1024:
                raise ParamOutOfRange(
                    f"could not draw {n} points from scenario {self.name!r}"
                )
        return np.array(points)


def _require(condition: bool, message: str):
    if not condition:
        raise ParamOutOfRange(message)


def _constant_coframe(domain, matrix, scheme, name):
    m = np.asarray(matrix, dtype=float)
    return Coframe(domain, lambda p: m, scheme=scheme, name=name)


def _minkowski(scheme, params):
    _require(not params, f"scenario takes no parameters, got {sorted(params)}")
    domain = Domain([-10.0] * 4, [10.0] * 4)
    return Scenario(
        "minkowski",
        {},
        domain,
        _constant_coframe(domain, np.eye(4), scheme, "minkowski"),
        diffeo=Diffeomorphism(lambda p: p, jacobian=lambda p: np.eye(4), name="identity"),
        base_domain=Domain([-12.0] * 4, [12.0] * 4),
        natural=True,
    )


def _lorentz_rotated(scheme, params):
    rapidity = float(params.pop("rapidity", 0.3))
    axis = int(params.pop("axis", 1))
    _require(not params, f"unknown parameters {sorted(params)}")
    _require(abs(rapidity) <= 3.0, f"rapidity {rapidity} outside [-3, 3]")
    _require(axis in (1, 2, 3), f"boost axis {axis} not one of 1, 2, 3")
    lam = np.eye(4)
    c, s = np.cosh(rapidity), np.sinh(rapidity)
    lam[0, 0] = lam[axis, axis] = c
    lam[0, axis] = lam[axis, 0] = s
    domain = Domain([-10.0] * 4, [10.0] * 4)
    return Scenario(
        "lorentz_rotated",
        {"rapidity": rapidity, "axis": axis},
        domain,
        _constant_coframe(domain, lam, scheme, "lorentz_rotated"),
        diffeo=Diffeomorphism(
            lambda p: lam @ p, jacobian=lambda p: lam, name="boost"
        ),
        base_domain=Domain([-250.0] * 4, [250.0] * 4),
        natural=True,
    )


def _rindler(scheme, params):
    _require(not params, f"scenario takes no parameters, got {sorted(params)}")
    domain = Domain([-2.0, 0.5, -2.0, -2.0], [2.0, 5.0, 2.0, 2.0])

    def matrix(p):
        m = np.eye(4)
        m[0, 0] = p[1]
        return m

    return Scenario(
        "rindler", {}, domain, Coframe(domain, matrix, scheme=scheme, name="rindler")
    )


def _flrw_flat(scheme, params):
    exponent = float(params.pop("exponent", 1.0))
    _require(not params, f"unknown parameters {sorted(params)}")
    _require(0.0 < exponent <= 1.0, f"expansion exponent {exponent} outside (0, 1]")
    domain = Domain([1.0, -5.0, -5.0, -5.0], [5.0, 5.0, 5.0, 5.0])

    def matrix(p):
        a = p[0] ** exponent
        return np.diag([1.0, a, a, a])

    return Scenario(
        "flrw_flat",
        {"exponent": exponent},
        domain,
        Coframe(domain, matrix, scheme=scheme, name="flrw_flat"),
    )


def _schwarzschild(scheme, params):
    mass = float(params.pop("mass", 1.0))
    _require(not params, f"unknown parameters {sorted(params)}")
    _require(0.0 < mass <= 10.0, f"mass {mass} outside (0, 10]")
    domain = Domain(
        [-5.0, 3.0 * mass, 0.3, 0.3],
        [5.0, 20.0 * mass, np.pi - 0.3, 2.0 * np.pi - 0.3],
    )

    def matrix(p):
        r, th = p[1], p[2]
        f = 1.0 - 2.0 * mass / r
        return np.diag([np.sqrt(f), 1.0 / np.sqrt(f), r, r * np.sin(th)])

    return Scenario(
        "schwarzschild",
        {"mass": mass},
        domain,
        Coframe(domain, matrix, scheme=scheme, name="schwarzschild"),
    )


_WAVE_VECTORS = np.array(
    [
        [0.31, 0.23, 0.17, 0.11],
        [0.13, 0.37, 0.19, 0.29],
        [0.23, 0.11, 0.41, 0.13],
        [0.17, 0.29, 0.13, 0.43],
    ]
)
_WAVE_PHASES = np.array([0.4, 1.3, 2.1, 0.7])


def _perturbed_flat(scheme, params):
    epsilon = float(params.pop("epsilon", 0.01))
    _require(not params, f"unknown parameters {sorted(params)}")
    _require(0.0 < epsilon <= 0.05, f"perturbation amplitude {epsilon} outside (0, 0.05]")
    domain = Domain([-6.0] * 4, [6.0] * 4)

    def forward(p):
        return p + epsilon * np.sin(_WAVE_VECTORS @ p + _WAVE_PHASES)

    def jacobian(p):
        return np.eye(4) + epsilon * np.cos(_WAVE_VECTORS @ p + _WAVE_PHASES)[
            :, None
        ] * _WAVE_VECTORS

    return Scenario(
        "perturbed_flat",
        {"epsilon": epsilon},
        domain,
        Coframe(domain, jacobian, scheme=scheme, name="perturbed_flat"),
        diffeo=Diffeomorphism(forward, jacobian=jacobian, name="sinusoid"),
        base_domain=Domain([-7.0] * 4, [7.0] * 4),
        natural=True,
    )


_FACTORIES: dict = {
    "minkowski": _minkowski,
    "lorentz_rotated": _lorentz_rotated,
    "rindler": _rindler,
    "flrw_flat": _flrw_flat,
    "schwarzschild": _schwarzschild,
    "perturbed_flat": _perturbed_flat,
}

SCENARIO_NAMES = tuple(_FACTORIES)


def get_scenario(name: str, scheme: Optional[FDScheme] = None, **params) -> Scenario:
    """Build a scenario by name; parameters are validated with ranges."""
    factory = _FACTORIES.get(name)
    if factory is None:
        raise UnknownScenario(
            f"unknown scenario {name!r}; known: {', '.join(SCENARIO_NAMES)}"
        )
    return factory(scheme or FDScheme(), dict(params))
