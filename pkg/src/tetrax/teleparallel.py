"""Torsion decomposition and the teleparallel form of the action.

With the coframe treated as a flat-gauge potential its exterior
derivatives are torsion 2-forms. They split into vector, axial and
tensor parts that are orthogonal under the dual pairing; a weighted
square of the parts reproduces the first-order action density, and the
codifferential of the torsion returns the same source currents the
curvature route assembles.
"""

from __future__ import annotations

import numpy as np

from . import _kernels as kern
from ._kernels._tables import ETA_DIAG, N_BLADES
from .cartan import Coframe
from .fields import FormField, codifferential
from .maxwell import current_assembly
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


def _contract(a, b) -> np.ndarray:
    return kern.contract_left_eta(np.ascontiguousarray(a), np.ascontiguousarray(b))


def torsion_two_forms(coframe: Coframe, p) -> np.ndarray:
    """d(leg) per leg in tetrad components."""
    return coframe.connection(p).dtheta.copy()


def trace_one_form(coframe: Coframe, p) -> np.ndarray:
    """Legs (lowered) contracted into their own torsion."""
    torsion = coframe.connection(p).dtheta
    out = np.zeros(N_BLADES)
    for b in range(4):
        out += _ETA[b] * _contract(_UNIT[b], torsion[b])
    return out


def axial_three_form(coframe: Coframe, p) -> np.ndarray:
    """Torsion wedged back against the lowered legs."""
    torsion = coframe.connection(p).dtheta
    out = np.zeros(N_BLADES)
    for b in range(4):
        out += _ETA[b] * _wedge(torsion[b], _UNIT[b])
    return out


def torsion_parts(coframe: Coframe, p) -> dict:
    """Orthogonal vector/axial/tensor split of the torsion per leg."""
    torsion = torsion_two_forms(coframe, p)
    trace = trace_one_form(coframe, p)
    axial = axial_three_form(coframe, p)
    star_axial = _star(axial)
    vector = np.zeros((4, N_BLADES))
    axial_part = np.zeros((4, N_BLADES))
    for a in range(4):
        vector[a] = (1.0 / 3.0) * _wedge(_UNIT[a], trace)
        axial_part[a] = -(1.0 / 3.0) * _star(_wedge(_UNIT[a], star_axial))
    tensor = torsion - vector - axial_part
    return {
        "torsion": torsion,
        "vector": vector,
        "axial": axial_part,
        "tensor": tensor,
    }


def dual_pairing(x_legs: np.ndarray, y_legs: np.ndarray) -> float:
    """Sum over legs of x^a wedge star(y_a), read off the volume blade."""
    total = 0.0
    for a in range(4):
        total += _wedge(x_legs[a], _star(_ETA[a] * y_legs[a]))[15]
    return float(total)


def orthogonality_residuals(coframe: Coframe, p) -> dict:
    parts = torsion_parts(coframe, p)
    pairs = (("tensor", "vector"), ("tensor", "axial"), ("vector", "axial"))
    return {
        f"{x}|{y}": dual_pairing(parts[x], parts[y]) for x, y in pairs
    }


def completeness_residual(coframe: Coframe, p) -> float:
    parts = torsion_parts(coframe, p)
    resid = parts["torsion"] - parts["tensor"] - parts["vector"] - parts["axial"]
    return float(np.max(np.abs(resid)))


def teleparallel_density(coframe: Coframe, p, mass: float = 0.0) -> np.ndarray:
    """Weighted torsion square as a 4-form in coordinate components.

    The tensor, vector and axial parts enter with weights 1, -2, -1/2;
    a mass adds half its square times the dual-volume of the legs.
    """
    parts = torsion_parts(coframe, p)
    combo = parts["tensor"] - 2.0 * parts["vector"] - 0.5 * parts["axial"]
    acc = np.zeros(N_BLADES)
    for a in range(4):
        acc -= 0.5 * _wedge(parts["torsion"][a], _star(_ETA[a] * combo[a]))
    if mass != 0.0:
        m2 = 0.5 * mass * mass
        for a in range(4):
            acc += m2 * _wedge(_ETA[a] * _UNIT[a], _star(_UNIT[a]))
    return coframe.metric_at(p).from_eta @ acc


def torsion_fields(coframe: Coframe):
    """Torsion as 2-form fields in coordinate components."""
    return [
        FormField(
            2,
            coframe.domain,
            lambda p, a=a: coframe.connection(p).dtheta_dx[a],
            name=f"torsion[{a}]",
        )
        for a in range(4)
    ]


def source_form_residuals(coframe: Coframe, p) -> np.ndarray:
    """Codifferential of torsion plus assembled current, per leg."""
    to_eta = coframe.metric_at(p).to_eta
    current = current_assembly(coframe, p)
    out = np.zeros((4, N_BLADES))
    for a, field in enumerate(torsion_fields(coframe)):
        delta_t = codifferential(
            field, coframe.metric_at, coframe.scheme, orientation=coframe.orientation
        )
        out[a] = to_eta @ delta_t.eval(p) + current[a]
    return out
