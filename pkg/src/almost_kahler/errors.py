"""Exception hierarchy.

Errors are split in two families so that front ends can map them to exit
codes: :class:`InputError` for malformed or inconsistent input and
:class:`GeometryError` for well-formed input that describes degenerate
geometry.
"""


class AlmostKahlerError(Exception):
    """Base class for all errors raised by this package."""


class InputError(AlmostKahlerError, ValueError):
    """Malformed input: bad indices, shape mismatch, invalid request."""


class GeometryError(AlmostKahlerError):
    """The data is well formed but the geometric construction fails."""


class SingularError(GeometryError):
    """A matrix that must be invertible (or positive definite) is not."""


class StrategyError(GeometryError):
    """The requested complement strategy is not applicable."""


class InvarianceError(GeometryError):
    """A supplied subspace is not invariant under the isotropy action."""


class DegenerateSymplecticError(GeometryError):
    """The two-form on the complement is degenerate."""


class NonInvertibleAdVError(GeometryError):
    """ad_V restricted to the complement has a (numerically) zero eigenvalue."""


class DegenerateBlockError(GeometryError):
    """The invariant form is degenerate on a rotation block of ad_V."""


class GenerationError(AlmostKahlerError):
    """A random generator could not produce an admissible sample."""
