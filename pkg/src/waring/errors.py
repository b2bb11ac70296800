"""Exception types shared across the library.

The CLI maps these onto exit codes: sampling budgets that run dry raise
RetryExhausted (exit 2), unmet mathematical hypotheses raise
PreconditionError (exit 3), and malformed user input raises ParseFormError
or DimensionMismatch (exit 1).
"""

from __future__ import annotations


class WaringError(Exception):
    """Base class for all library errors."""


class ParseFormError(WaringError):
    """Polynomial text does not match the input grammar."""


class DimensionMismatch(WaringError):
    """Operands live in incompatible polynomial spaces."""


class PreconditionError(WaringError):
    """A documented hypothesis of the requested operation does not hold."""


class ZeroFormError(PreconditionError):
    """The zero form was supplied where a nonzero form is required."""


class RetryExhausted(WaringError):
    """A randomized search ran out of budget.

    Carries a ``diagnostics`` dict describing the best candidate seen, so
    callers can report how close the search came before giving up.
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}


class RootFindingError(WaringError):
    """The simultaneous root iteration failed to converge."""


class DegenerateSystemError(WaringError):
    """A sampled line system turned out degenerate (wrong kernel dimension).

    Internal retry signal: the caller should resample rather than abort.
    """


class NoSmoothConic(WaringError):
    """Every conic in the relevant apolar net is singular.

    Used as a routing signal by the plane-quartic pipeline; callers fall
    back to a different decomposition route when it appears.
    """
