"""tetrax: numerical exterior calculus for coframe gravity on R^4 charts."""

from ._kernels import BACKEND as kernel_backend
from .errors import (
    ConfigError,
    DegenerateCoframe,
    DomainEscape,
    NearSingularMetric,
    NonSymmetricMetric,
    ParamOutOfRange,
    StencilOutOfDomain,
    TetraxError,
    UnknownScenario,
)
from .mv import Metric, Multivector

__version__ = "0.1.0"

__all__ = [
    "Metric",
    "Multivector",
    "kernel_backend",
    "TetraxError",
    "ConfigError",
    "DegenerateCoframe",
    "DomainEscape",
    "NearSingularMetric",
    "NonSymmetricMetric",
    "ParamOutOfRange",
    "StencilOutOfDomain",
    "UnknownScenario",
    "__version__",
]
