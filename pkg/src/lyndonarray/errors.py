"""Exception types shared across the package."""


class UsageError(ValueError):
    """An argument or call violates an operation's contract."""


class IntegrityError(RuntimeError):
    """A stored or computed structure failed a consistency check."""


class VerificationError(IntegrityError):
    """A fast-path result disagreed with its reference oracle."""

    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index
