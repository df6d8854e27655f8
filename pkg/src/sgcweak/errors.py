"""Exception hierarchy shared across the package.

Every failure mode that callers may want to handle programmatically gets
its own class; all inherit from :class:`SgcError` so that ``except
SgcError`` catches any library-level problem without swallowing genuine
bugs (TypeError etc.).
"""


class SgcError(Exception):
    """Base class for all errors raised by this package."""


class InvalidOrderError(SgcError, ValueError):
    """Quadrature order outside the supported range."""


class UnsupportedLevelError(SgcError, ValueError):
    """Sparse-grid level outside the tabulated closed forms."""


class ResourceLimitError(SgcError):
    """A projected node count exceeds the configured cap."""

    def __init__(self, message: str, projected: int, cap: int):
        super().__init__(message)
        self.projected = projected
        self.cap = cap


class EvaluationError(SgcError):
    """An integrand returned a non-finite value at a quadrature node."""

    def __init__(self, message: str, node_index: int):
        super().__init__(message)
        self.node_index = node_index


class DivergenceError(SgcError):
    """A scheme iteration produced a non-finite state."""

    def __init__(self, message: str, step_index: int):
        super().__init__(message)
        self.step_index = step_index


class ConfigurationError(SgcError, ValueError):
    """A required callback or option is missing or inconsistent."""


class DegenerateParametersError(SgcError, ValueError):
    """Model parameters hit a removable singularity of a closed form."""


class SingularParameterError(SgcError, ValueError):
    """A parameter combination makes a formula singular (e.g. 1 + lambda*h = 0)."""


class DegenerateReferenceError(SgcError, ValueError):
    """A relative error was requested against a zero reference."""


class InvalidGridError(SgcError, ValueError):
    """A spatial grid parameter is unusable (e.g. odd point count)."""


class FixedPointDivergenceError(SgcError):
    """The implicit-step fixed-point iteration failed to converge."""

    def __init__(self, message: str, residual: float):
        super().__init__(message)
        self.residual = residual


class SolverError(SgcError):
    """A linear solve failed (singular one-step system)."""


class AliasingError(SgcError, ValueError):
    """Basis truncation too large for the collocation grid."""


class ValidationError(SgcError, ValueError):
    """An experiment configuration violates its invariants."""

    def __init__(self, message: str, fields: list[str] | None = None):
        super().__init__(message)
        self.fields = fields or []
