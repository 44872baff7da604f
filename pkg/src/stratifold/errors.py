"""Exception types shared across the package."""


class StratifoldError(Exception):
    """Base class for all errors raised by this package."""


class GraphError(StratifoldError):
    """Structural problem with a stratifold graph or an operation on one."""


class ParseError(StratifoldError):
    """Malformed text in one of the external formats."""


class DomainError(StratifoldError):
    """A parameter outside the domain of an operation (e.g. a lens order < 2)."""


class NoSpineError(StratifoldError):
    """Raised when a manifold expression has no 2-stratifold spine."""
