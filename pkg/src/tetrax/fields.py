"""Chart-level calculus: form fields, finite differences, pullbacks.

A FormField evaluates to packed 16-component blade arrays in the
coordinate basis (see _kernels._tables). All derivative operators are
central finite differences; nothing here assumes analytic formulas.

Evaluation caches are per-field dictionaries keyed by the point bytes.
They are not thread safe; the engine assumes single-threaded use.
"""

from __future__ import annotations

from typing import Callable, Iterable, Optional

import numpy as np

from ._kernels._tables import GRADE, N_BLADES, SIGN_WEDGE
from .errors import DomainEscape, ParamOutOfRange, StencilOutOfDomain
from .mv import Metric, hodge_c, hodge_inverse_c, exterior_rep

Point = np.ndarray
MetricFn = Callable[[Point], Metric]

_STEP_RANGE = (1e-6, 1e-1)

# per-axis exterior-derivative scatter: wedge by dx^mu from the left
_D_SRC = []
_D_DST = []
_D_SGN = []
for _mu in range(4):
    _bit = 1 << _mu
    _src = np.array([b for b in range(N_BLADES) if not b & _bit], dtype=np.intp)
    _D_SRC.append(_src)
    _D_DST.append(_src | _bit)
    _D_SGN.append(np.array([SIGN_WEDGE[_bit, b] for b in _src]))


class FDScheme:
    """Central finite-difference stencil parameters."""

    __slots__ = ("step", "order")

    def __init__(self, step: float = 1e-3, order: int = 2):
        if not (_STEP_RANGE[0] <= step <= _STEP_RANGE[1]):
            raise ParamOutOfRange(
                f"fd step {step} outside [{_STEP_RANGE[0]}, {_STEP_RANGE[1]}]"
            )
        if order not in (2, 4):
            raise ParamOutOfRange(f"fd order must be 2 or 4, got {order}")
        self.step = float(step)
        self.order = int(order)

    def nodes(self, h: Optional[float] = None):
        """Offsets and weights for d/dx with unit step scaled by h."""
        h = self.step if h is None else h
        if self.order == 2:
            return ((1.0, 0.5 / h), (-1.0, -0.5 / h))
        return (
            (2.0, -1.0 / (12.0 * h)),
            (1.0, 8.0 / (12.0 * h)),
            (-1.0, -8.0 / (12.0 * h)),
            (-2.0, 1.0 / (12.0 * h)),
        )

    @property
    def reach(self) -> float:
        """Largest stencil offset from the center point."""
        return self.step * (1.0 if self.order == 2 else 2.0)


class Domain:
    """Axis-aligned box with optional named exclusion predicates."""

    __slots__ = ("lo", "hi", "exclusions")

    def __init__(self, lo, hi, exclusions: Iterable = ()):
        self.lo = np.asarray(lo, dtype=float)
        self.hi = np.asarray(hi, dtype=float)
        if self.lo.shape != (4,) or self.hi.shape != (4,):
            raise ValueError("domain bounds must be length-4")
        if np.any(self.lo >= self.hi):
            raise ValueError("domain box is empty")
        self.exclusions = tuple(exclusions)

    def contains(self, p: Point) -> bool:
        if np.any(p < self.lo) or np.any(p > self.hi):
            return False
        return not any(pred(p) for _, pred in self.exclusions)

    def require(self, p: Point, context: str = "evaluation"):
        if not self.contains(p):
            raise DomainEscape(f"{context} point {p.tolist()} outside chart domain")

    def shrunk(self, margin: float) -> "Domain":
        """Box pulled in by margin on every face, keeping exclusions."""
        return Domain(self.lo + margin, self.hi - margin, self.exclusions)


class FormField:
    """Grade-homogeneous differential form on a chart domain.

    fn maps a point to the packed 16-component array. Returned arrays are
    cached and must not be mutated by callers.
    """

    __slots__ = ("grade", "domain", "fn", "name", "_cache")

    def __init__(self, grade: int, domain: Domain, fn, name: str = ""):
        if not 0 <= grade <= 4:
            raise ValueError(f"grade must be 0..4, got {grade}")
        self.grade = grade
        self.domain = domain
        self.fn = fn
        self.name = name
        self._cache: dict = {}

    @classmethod
    def constant(cls, grade: int, domain: Domain, components, name: str = ""):
        arr = np.asarray(components, dtype=float).copy()
        return cls(grade, domain, lambda p: arr, name=name)

    @classmethod
    def zero(cls, grade: int, domain: Domain, name: str = ""):
        return cls.constant(grade, domain, np.zeros(N_BLADES), name=name)

    def eval(self, p: Point) -> np.ndarray:
        p = np.asarray(p, dtype=float)
        key = p.tobytes()
        hit = self._cache.get(key)
        if hit is None:
            hit = np.asarray(self.fn(p), dtype=float)
            self._cache[key] = hit
        return hit

    __call__ = eval


def scale_field(field: FormField, factor: float, name: str = "") -> FormField:
    return FormField(field.grade, field.domain, lambda p: factor * field.eval(p), name)


def add_fields(a: FormField, b: FormField, name: str = "") -> FormField:
    if a.grade != b.grade:
        raise ValueError("cannot add fields of different grade")
    return FormField(a.grade, a.domain, lambda p: a.eval(p) + b.eval(p), name)


def partial_derivative(field: FormField, mu: int, p: Point, scheme: FDScheme) -> np.ndarray:
    """Componentwise d/dx^mu of the field at p via the central stencil."""
    p = np.asarray(p, dtype=float)
    out = np.zeros(N_BLADES)
    for offset, weight in scheme.nodes():
        q = p.copy()
        q[mu] += offset * scheme.step
        if not field.domain.contains(q):
            raise StencilOutOfDomain(
                f"axis {mu} stencil node {q.tolist()} left the domain"
            )
        out += weight * field.eval(q)
    return out


def exterior_derivative(field: FormField, scheme: FDScheme, name: str = "") -> FormField:
    """d(field). The derivative of a 4-form is the zero field (grade caps)."""
    if field.grade == 4:
        return FormField.zero(4, field.domain, name=name or f"d({field.name})")

    def ev(p):
        out = np.zeros(N_BLADES)
        for mu in range(4):
            df = partial_derivative(field, mu, p, scheme)
            out[_D_DST[mu]] += _D_SGN[mu] * df[_D_SRC[mu]]
        return out

    return FormField(field.grade + 1, field.domain, ev, name=name or f"d({field.name})")


def hodge_field(
    field: FormField, metric_fn: MetricFn, orientation: int = 1, name: str = ""
) -> FormField:
    return FormField(
        4 - field.grade,
        field.domain,
        lambda p: hodge_c(field.eval(p), metric_fn(p), orientation),
        name=name or f"star({field.name})",
    )


def codifferential(
    field: FormField,
    metric_fn: MetricFn,
    scheme: FDScheme,
    orientation: int = 1,
    name: str = "",
) -> FormField:
    """delta(field) = -star_inverse d star(field), applied on every grade.

    On grade 0 the result is the zero scalar field by convention.
    """
    if field.grade == 0:
        return FormField.zero(0, field.domain, name=name or f"delta({field.name})")
    starred = hodge_field(field, metric_fn, orientation)
    d_star = exterior_derivative(starred, scheme)

    def ev(p):
        return -hodge_inverse_c(d_star.eval(p), metric_fn(p), orientation)

    return FormField(field.grade - 1, field.domain, ev, name=name or f"delta({field.name})")


def codifferential_adjoint(
    field: FormField,
    metric_fn: MetricFn,
    scheme: FDScheme,
    orientation: int = 1,
    name: str = "",
) -> FormField:
    """Formal-adjoint codifferential star d star.

    Coincides with codifferential on odd grades and is its negative on
    even grades; the Laplacian that satisfies the classical curvature
    split must be assembled from this variant.
    """
    sign = 1.0 if field.grade % 2 == 1 else -1.0
    base = codifferential(field, metric_fn, scheme, orientation)
    return scale_field(base, sign, name=name or f"delta_adj({field.name})")


class Diffeomorphism:
    """Chart map with forward evaluation and (possibly FD) Jacobian."""

    __slots__ = ("forward", "_jacobian", "scheme", "name")

    def __init__(self, forward, jacobian=None, scheme: Optional[FDScheme] = None, name: str = ""):
        self.forward = forward
        self._jacobian = jacobian
        self.scheme = scheme or FDScheme()
        self.name = name

    def jacobian(self, p: Point) -> np.ndarray:
        if self._jacobian is not None:
            return np.asarray(self._jacobian(p), dtype=float)
        p = np.asarray(p, dtype=float)
        jac = np.zeros((4, 4))
        for mu in range(4):
            acc = np.zeros(4)
            for offset, weight in self.scheme.nodes():
                q = p.copy()
                q[mu] += offset * self.scheme.step
                acc += weight * np.asarray(self.forward(q), dtype=float)
            jac[:, mu] = acc
        return jac


def pullback(
    phi: Diffeomorphism, field: FormField, domain: Domain, name: str = ""
) -> FormField:
    """phi^*(field) on the given source-chart domain.

    Components transform with the minor-determinant (outermorphism)
    matrix of the Jacobian transpose; a target point outside the field's
    domain raises DomainEscape.
    """

    def ev(p):
        y = np.asarray(phi.forward(p), dtype=float)
        field.domain.require(y, context=f"pullback target of {p.tolist()}")
        return exterior_rep(phi.jacobian(p).T) @ field.eval(y)

    return FormField(field.grade, domain, ev, name=name or f"pullback({field.name})")
