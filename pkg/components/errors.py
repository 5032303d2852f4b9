""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

from typing import Optional


class BoundaryScopeError(Exception):
    """Base class for every error raised by the library."""


class DomainError(BoundaryScopeError, ValueError):
    """An argument lies outside the region where the operation is defined."""


class PoleError(DomainError):
    """The argument sits on (or too close to) a pole."""


class ConvergenceError(BoundaryScopeError, ArithmeticError):
    """A sum or integral failed to reach the requested tolerance.

    The best estimate reached before giving up is kept on the exception so
    callers can still inspect it.
    """

    def __init__(self, message: str, best_estimate: Optional[complex] = None, abs_err: float = float("inf")) -> None:
        super().__init__(message)
        self.best_estimate = best_estimate
        self.abs_err = abs_err


class DecayStallError(ConvergenceError):
    """The contour integrand stopped decaying before the tail was negligible."""


class NumericalOverflowError(BoundaryScopeError, OverflowError):
    pass


class RouteDisagreementError(BoundaryScopeError):
    """Two independent routes to the same quantity disagree."""
