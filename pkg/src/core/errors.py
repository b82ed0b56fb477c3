"""Exception types shared by the core packages.

Everything below is a thin subclass of a built-in exception so callers that
only catch ``ValueError`` / ``RuntimeError`` keep working; the CLI uses the
concrete types to pick an exit code.
"""


class DegreeMismatchError(ValueError):
    """Permutation degrees or group/connection-set sizes disagree."""


class NotSubgroupError(ValueError):
    """A group claimed to be a subgroup is not contained in the overgroup."""


class NotNormalError(ValueError):
    """A subgroup claimed to be normal is not."""


class PreconditionError(ValueError):
    """An operation's precondition does not hold for the given input."""


class GroupSpecError(ValueError):
    """Malformed group specification or group table file."""


class CheckpointMismatchError(ValueError):
    """A checkpoint file belongs to a different run configuration."""


class CapExceededError(RuntimeError):
    """A configured size cap was exceeded."""

    def __init__(self, what: str, value: int, cap: int):
        super().__init__(f"{what} = {value} exceeds cap {cap}")
        self.what = what
        self.value = value
        self.cap = cap


class VerificationFailure(AssertionError):
    """A verified statement failed on a concrete instance."""
