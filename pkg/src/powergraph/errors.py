"""Exception hierarchy shared by every module."""


class PowerGraphError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(PowerGraphError, ValueError):
    """Input outside the mathematical domain (e.g. a group order below 2)."""


class ParameterError(PowerGraphError, ValueError):
    """Candidate or formula parameters that violate their preconditions."""


class CapacityError(PowerGraphError):
    """A configured size limit (divisor lattice cap, exhaustive class limit) was exceeded."""


class ArithmeticOverflow(PowerGraphError, OverflowError):
    """An intermediate count left the signed 128-bit range."""


class ConsistencyError(PowerGraphError, AssertionError):
    """Two routes that must agree did not (closed form vs enumeration, failed separation)."""
