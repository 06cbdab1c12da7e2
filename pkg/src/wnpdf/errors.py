"""Exception hierarchy used across the package."""


class WNError(Exception):
    """Base class for all errors raised by wnpdf."""


class InvalidArgumentError(WNError, ValueError):
    """An argument is non-finite or otherwise malformed."""


class InvalidParameterError(InvalidArgumentError):
    """Distribution parameters violate their constraints (e.g. sigma <= 0)."""


class OutOfDomainError(WNError, ValueError):
    """A special function was called outside the domain it supports."""


class BoundNotApplicableError(WNError, ValueError):
    """The precondition of an error bound does not hold, so the bound is unproven."""


class NonConvergenceError(WNError, RuntimeError):
    """An adaptive series did not settle within the hard term cap."""


class ConsistencyError(WNError, RuntimeError):
    """The two converged series disagree; indicates a bug rather than bad input."""


class NoTableError(WNError, KeyError):
    """No built-in threshold table exists for the requested accuracy."""


class TableConstructionError(WNError, RuntimeError):
    """Crossover search could not find a sufficient plan for some sigma."""
