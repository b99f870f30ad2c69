"""Domain exceptions shared across the package.

Negative verdicts (an automaton merely *failing* a check) are return values,
not exceptions; these classes mark inputs we refuse to process.
"""


class QsyncError(Exception):
    """Base for all domain errors; the CLI maps these to exit code 1."""


class FormatError(QsyncError):
    """Malformed or schema-violating input document."""


class WrongAlphabetError(QsyncError):
    """Operation requires a two-letter alphabet."""


class NotBalancedError(QsyncError):
    """No permutation realization exists (in/out arc counts differ)."""

    def __init__(self, message, violations=()):
        super().__init__(message)
        self.violations = tuple(violations)  # states whose in-degree != |alphabet|


class DisconnectedError(QsyncError):
    """Union transition multigraph is not connected (Eulerian mode only)."""


class NotSynchronizingError(QsyncError):
    """Automaton has no synchronizing word but the operation needs one."""


class GuardExceededError(QsyncError):
    """Input too large for an exhaustive search; use the scalable alternative."""
