"""Exception hierarchy shared by every module."""

from __future__ import annotations

import builtins


class KWrightError(Exception):
    """Base class for all library errors."""


class PoleError(KWrightError, ValueError):
    """A gamma-type function was asked for its value at a pole."""


class OverflowError(KWrightError, builtins.OverflowError):
    """A result does not fit in double precision."""


class DomainError(KWrightError, ValueError):
    """An argument lies outside the region served by an evaluator."""


class NonConvergenceError(KWrightError, ArithmeticError):
    """A series or quadrature did not reach the requested tolerance."""


class PreconditionError(KWrightError, ValueError):
    """A stated hypothesis of a closed-form image is violated."""


class ConvergenceError(PreconditionError):
    """The operand series does not satisfy the convergence requirement."""


class StepCollapseError(NonConvergenceError):
    """Finite differencing exhausted its step range without converging."""


class MissingDerivativeError(KWrightError, TypeError):
    """An integrand without an exact derivative was given to a Caputo oracle."""
