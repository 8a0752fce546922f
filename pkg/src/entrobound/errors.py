"""Semantic exception hierarchy shared by all modules.

Public functions never raise bare ``ValueError``; every failure mode maps to
one of the classes below so that callers (and the CLI exit-code mapping) can
branch on meaning rather than on message text.
"""


class EntroboundError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(EntroboundError, ValueError):
    """Inputs violate a contract: bad shapes, masses, sums, parse failures."""


class DomainError(ValidationError):
    """A scalar argument lies outside the mathematical domain of an operation."""


class ConstraintError(ValidationError):
    """A feasibility constraint is violated; the message names the constraint."""


class ApplicabilityError(EntroboundError):
    """The hypotheses of a bound are not satisfied for the given inputs."""


class CapabilityError(EntroboundError):
    """The operation needs information the input object cannot provide."""


class InternalCheckError(EntroboundError):
    """A computed result failed one of its own invariants (a bug, not bad input)."""
