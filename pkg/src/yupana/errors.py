"""Exception types shared across the package."""


class YupanaError(Exception):
    """Base class for every error raised by this package."""


class DomainError(YupanaError):
    """An argument lies outside the operation's domain."""


class OverflowError(YupanaError):  # noqa: A001 - deliberate, scoped to this package
    """A value or token placement does not fit on the board."""


class NotSimpleError(YupanaError):
    """The state is not in simple form where one is required."""


class StaleMatchError(YupanaError):
    """The match no longer applies to the current board."""


class ConflictError(YupanaError):
    """Two matches scheduled in parallel touch the same square."""


class CycleError(YupanaError):
    """Simplification revisited an earlier state."""


class NoMatchError(YupanaError):
    """No applicable match exists on the board."""
