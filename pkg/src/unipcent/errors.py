"""Exception types shared across the package."""


class InputError(ValueError):
    """A caller-supplied value was rejected (bad type string, bad prime, ...)."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; signals a bug, not a user error."""


class BudgetExceeded(RuntimeError):
    """An orbit search exceeded its configured node budget."""


class FingerprintError(RuntimeError):
    """A class-order multiset matched no candidate group, or more than one."""


class WitnessSearchExhausted(RuntimeError):
    """No auxiliary prime below the search bound produced a valid witness."""
