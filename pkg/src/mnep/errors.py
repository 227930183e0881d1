"""Exception hierarchy shared by the solvers and the command line."""


class MnepError(Exception):
    """Base class for all package errors."""


class InstanceError(MnepError, ValueError):
    """Malformed input text or an instance violating the model assumptions."""


class SizeGuardError(MnepError):
    """Instance too large for an enumeration-based method."""


class NotABasisError(MnepError):
    """The selected columns do not form a nonsingular system."""


class InfiniteRayError(MnepError):
    """No basic variable blocks the entering direction.

    With the covering vector built from arborescences this cannot happen on a
    valid instance, so it signals an internal fault.
    """


class InvariantError(MnepError, AssertionError):
    """An internal invariant of a solver was breached."""
