"""Exception hierarchy shared by all modules.

Exit-code mapping used by the CLI: usage errors exit 2 (argparse),
RefusalError exits 1, InvariantViolation exits 3.
"""

from __future__ import annotations


class RefusalError(RuntimeError):
    """A well-formed request the tool declines to compute (budget, missing
    primes, parameter regime).  The message says why and what to do instead."""

    exit_code = 1


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""

    exit_code = 3


class NotQuasiPolynomialError(RefusalError):
    """Raised when samples contradict the assumed quasi-polynomial structure.

    Carries the witness point so callers can report both values.
    """

    def __init__(self, x, expected, actual):
        self.x = x
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"samples are not quasi-polynomial: at x={x} "
            f"interpolation gives {expected} but sample is {actual}"
        )
