"""Exception hierarchy shared by every widthlab module.

``InputError`` marks contract violations on user-supplied data (bad shapes,
broken invariants, unparsable files).  The remaining classes mark graceful
mathematical refusals: an operation whose precondition is a theorem-level
hypothesis raises a dedicated error instead of returning garbage.
"""


class WidthlabError(Exception):
    """Base class for all errors raised by this package."""


class InputError(WidthlabError, ValueError):
    """Invalid input: shape mismatch, violated invariant, parse failure."""


class NotCoverableError(WidthlabError):
    """No bounded covering operator exists for the requested pair."""


class ClassificationError(WidthlabError):
    """A classification precondition fails (e.g. not even shift 0 majorizes)."""


class InfeasibleError(WidthlabError):
    """A constructive operation cannot meet the requested tolerance.

    Carries ``achieved``, the best residual the construction reached.
    """

    def __init__(self, message: str, achieved: float | None = None):
        super().__init__(message)
        self.achieved = achieved


class UnsolvableError(WidthlabError):
    """The operator equation has no solution; carries the verdict."""

    def __init__(self, message: str, verdict=None):
        super().__init__(message)
        self.verdict = verdict
