"""Exception types raised by the integrators.

Validation problems (bad dimensions, unknown names, out-of-range
parameters) use plain ``ValueError``; the classes below mark failures of
the numerics themselves, which the CLI reports with a distinct exit code.
"""


class NumericalError(RuntimeError):
    """A computation broke down (as opposed to bad user input)."""


class SingularMatrixError(NumericalError):
    """A correction system could not be solved.

    For well-posed inputs this is unreachable; seeing it usually means a
    zero or negative state leaked into a mass-matrix assembly upstream.
    """


class PositivityError(NumericalError):
    """A state with non-positive entries reached a positivity-only code path."""


class NonFiniteRateError(NumericalError):
    """A rate evaluation produced NaN or infinity (malformed model or overflow)."""
