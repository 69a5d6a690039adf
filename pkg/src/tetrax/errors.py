"""Exception types raised by the engine."""


class TetraxError(Exception):
    """Base class for engine errors."""


class NonSymmetricMetric(TetraxError):
    """Metric matrix failed the symmetry check."""


class NearSingularMetric(TetraxError):
    """Metric or extensor eigenvalue magnitude below the 1e-10 cutoff."""


class DegenerateCoframe(TetraxError):
    """Coframe matrix determinant magnitude below the 1e-10 cutoff."""


class StencilOutOfDomain(TetraxError):
    """A finite-difference stencil node left the chart domain."""


class DomainEscape(TetraxError):
    """A map evaluation landed outside the target chart domain."""


class UnknownScenario(TetraxError):
    """Scenario name not present in the registry."""


class ParamOutOfRange(TetraxError):
    """Scenario or scheme parameter outside its validated range."""


class ConfigError(TetraxError):
    """Malformed CLI flag, tolerance override, or config file entry."""
