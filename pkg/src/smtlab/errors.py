"""Exception taxonomy shared by all modules.

The CLI maps these onto exit codes: ParameterError -> 2,
InvariantViolation -> 3, ResourceCapError -> 4.
"""


class ParameterError(ValueError):
    """Caller supplied an argument outside the documented domain."""


class ResourceCapError(RuntimeError):
    """A configurable size guard was exceeded before starting real work."""


class InvariantViolation(RuntimeError):
    """An internal consistency condition failed; always indicates a bug."""


class BasisFailureError(InvariantViolation):
    """Linear solve against the standard basis was inconsistent or ambiguous."""


class TerminationFailureError(InvariantViolation):
    """Rewriting exceeded its step guard without reaching normal form."""
