"""Exception types shared across the package."""


class CliffordTError(Exception):
    """Base class for all package-specific errors."""


class FactorTimeout(CliffordTError):
    """Integer factorization exceeded its work budget."""


class BudgetInfeasible(CliffordTError):
    """No Clifford+T approximation found within the T-gate budget."""


class CandidateLimitExceeded(CliffordTError):
    """Grid enumeration hit the configured candidate cap."""


class MalformedUnitary(CliffordTError):
    """Matrix entries do not form a valid exact unitary."""


class DomainError(CliffordTError):
    """Argument outside the mathematical domain of a formula."""


class IdentityPauli(CliffordTError):
    """A Pauli rotation was requested for the all-identity string."""


class NonUnitaryEvent(CliffordTError):
    """A statevector run encountered a non-unitary circuit event."""


class TooManyQubits(CliffordTError):
    """Requested simulation exceeds the configured qubit ceiling."""


class DimensionMismatch(CliffordTError):
    """Operator and state dimensions disagree."""


class InsufficientData(CliffordTError):
    """Not enough data points for the requested fit."""


class FixtureError(CliffordTError):
    """A fixture file is missing or fails schema validation."""
