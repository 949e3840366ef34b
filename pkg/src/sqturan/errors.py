from __future__ import annotations


class ParameterError(ValueError):
    """A constructor or operation argument is outside its allowed range."""


class BudgetExceeded(RuntimeError):
    """A search hit its node limit before reaching an answer.

    ``nodes`` is the number of search nodes explored when the limit tripped.
    The answer is unknown; callers must never read this as a negative result.
    """

    def __init__(self, message: str, nodes: int = 0, partial=None):
        super().__init__(message)
        self.nodes = nodes
        self.partial = partial


class NonConvergence(RuntimeError):
    """Power iteration failed to reach the residual tolerance within its cap."""


class CheckFailure(AssertionError):
    """An emitted certificate or witness failed its own re-verification."""
