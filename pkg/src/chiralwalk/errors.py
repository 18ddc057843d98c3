"""Exception types shared across the package.

The CLI maps these onto exit codes: usage errors exit 2 (argparse),
``DomainError`` and subclasses exit 3, ``NumericalError`` and
``ResolutionError`` exit 4.
"""


class ChiralWalkError(Exception):
    """Base class for errors raised by this package."""


class DomainError(ChiralWalkError, ValueError):
    """Input is outside the physical domain of an operation (e.g. T <= 0)."""


class GapClosedError(DomainError):
    """A band with degenerate samples was passed where a gapped one is required."""


class IllDefinedLimitError(DomainError):
    """A zero-temperature limit is requested on a support with ill-defined Bloch vectors."""


class ResolutionError(ChiralWalkError):
    """The momentum grid is too coarse for the requested quantity."""


class NumericalError(ChiralWalkError):
    """A dense numerical routine failed to meet its residual tolerance."""
