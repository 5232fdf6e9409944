"""Exception hierarchy.

Two broad classes matter for the command line front end: validation
problems (bad input, rejected before any numerics run, exit code 2) and
numerical failures (a computation that started but could not finish to
tolerance, exit code 3).
"""


class GeophaseError(Exception):
    """Base class for all package errors."""

    exit_code = 1


class ValidationError(GeophaseError):
    """Invalid configuration or argument, detected before computing."""

    exit_code = 2


class DomainError(ValidationError):
    """Point or coordinate outside the manifold chart domain."""


class DegenerateDriveError(ValidationError):
    """Drive parameters admit no resonance orbit (e.g. vanishing B0)."""


class NoResonanceError(ValidationError):
    """The resonance condition has no solution for these parameters."""


class NegativeBranchError(ValidationError):
    """Resonance exists only on the branch with the phase shifted by pi."""


class DivergentResponseError(ValidationError):
    """Steady-state amplitude diverges (drive exactly on the pole)."""


class NumericalError(GeophaseError):
    """A computation ran but failed to reach its tolerance."""

    exit_code = 3


class IntegrationError(NumericalError):
    """Adaptive step size underflowed or the step budget was exhausted."""


class NotCyclicError(NumericalError):
    """Phase integral requested over a trajectory that does not close."""


class PropagationError(NumericalError):
    """Quantum propagation lost unitarity beyond tolerance."""


class TruncationError(NumericalError):
    """Requested basis truncation cannot hold the state to tolerance."""


class RootNotFoundError(NumericalError):
    """Bracketed root search found no sign change."""


class VerificationError(GeophaseError):
    """One or more self-verification checks failed."""

    exit_code = 4
