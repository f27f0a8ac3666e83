"""Seeded closed-form versus quadrature checks.

Random operators are drawn from fixed boxes in which every hypothesis holds
with a margin of at least ``MARGIN``:

=========  ==========================================================
MSM        alpha, alpha', beta, beta' in [-0.5, 0.5];
           gamma in [0.1, 0.9] or [1.1, 1.9] (fractional part kept
           away from integers so every inner operator order is >= 0.1)
Saigo      alpha as gamma above; beta, gamma in [-0.5, 0.5]
EK         alpha as gamma above; gamma in [-0.5, 0.5]
rho        max(bounds) + MARGIN + U(0, 1.5), in units of k
=========  ==========================================================
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .operators import (
    THEOREMS,
    EKParams,
    Kind,
    MSMParams,
    PowerWeight,
    SaigoParams,
    Side,
    evaluate_image,
    power_image,
    rho_bounds,
    transform,
)
from .oracle import PowerSum, apply_numeric, series_lhs_numeric
from .series import WrightParams

__all__ = [
    "MARGIN",
    "TheoremCheck",
    "check_power_image",
    "default_tolerance",
    "draw_operator",
    "draw_rho",
    "max_rel_error",
    "theorem_case",
    "verify_theorem",
]

MARGIN = 0.05
_SMALL = 0.5
_RHO_SPREAD = 1.5


def _order(rng: np.random.Generator) -> float:
    return float(rng.integers(0, 2) + rng.uniform(0.1, 0.9))


def draw_operator(rng: np.random.Generator, family: str, kind: Kind, side: Side):
    """One operator from the safe box of ``family`` (``msm``, ``saigo`` or ``ek``)."""
    kind, side = Kind(kind), Side(side)
    if family == "msm":
        small = [float(v) for v in rng.uniform(-_SMALL, _SMALL, 4)]
        return MSMParams(*small, _order(rng), side, kind)
    if family == "saigo":
        b, g = (float(v) for v in rng.uniform(-_SMALL, _SMALL, 2))
        return SaigoParams(_order(rng), b, g, side, kind)
    if family == "ek":
        return EKParams(_order(rng), float(rng.uniform(-_SMALL, _SMALL)), side, kind)
    raise ValueError(f"unknown operator family {family!r}")


def draw_rho(rng: np.random.Generator, op, k: float = 1.0) -> float:
    """``rho`` with ``rho / k`` above every bound of ``op`` by at least ``MARGIN``."""
    floor = max(float(np.real(b)) for _, b in rho_bounds(op))
    return k * (floor + MARGIN + float(rng.uniform(0.0, _RHO_SPREAD)))


def default_tolerance(kind: Kind) -> float:
    return 1e-4 if Kind(kind) is Kind.DERIVATIVE else 1e-6


def monomial_for(op, rho) -> PowerSum:
    """``t**(rho-1)`` for left operators, ``t**(-rho)`` for right ones."""
    return PowerSum.monomial(rho - 1 if op.side is Side.LEFT else -rho)


def check_power_image(op, rho, xs: Iterable[float] = (0.5, 1.0, 2.0), tol: float | None = None) -> float:
    """Largest relative gap between the closed-form power image and the oracle."""
    image = power_image(op, rho)
    f = monomial_for(op, rho)
    worst = 0.0
    for x in xs:
        exact = image.value(x)
        numeric = apply_numeric(op, f, x, tol).value
        worst = max(worst, abs(numeric - exact) / abs(exact))
    return worst


@dataclass(frozen=True)
class TheoremCheck:
    """One seeded draw of a theorem check."""

    theorem: str
    draw: int
    op: MSMParams
    k: float
    rho: float
    a: float
    closed_form: complex
    numeric: complex

    @property
    def rel_error(self) -> float:
        return abs(self.numeric - self.closed_form) / abs(self.closed_form)

    def to_dict(self) -> dict:
        return {
            "theorem": self.theorem,
            "draw": self.draw,
            "alpha": self.op.alpha,
            "alpha_prime": self.op.alpha_prime,
            "beta": self.op.beta,
            "beta_prime": self.op.beta_prime,
            "gamma": self.op.gamma,
            "k": self.k,
            "rho": self.rho,
            "a": self.a,
            "closed_re": self.closed_form.real,
            "closed_im": self.closed_form.imag,
            "rel_error": self.rel_error,
        }


OPERAND = ((1, 1),), ((2, 1),)


def theorem_case(theorem: str, op: MSMParams, k: float, rho: float, a: float, operand: bool = True,
                 x: float = 1.0, n_terms: int = 8, draw: int = 0) -> TheoremCheck:
    """Closed-form image truncated after ``n_terms`` against the oracle on the truncated operand."""
    upper, lower = OPERAND if operand else ((), ())
    f = WrightParams(k, upper, lower)
    w = PowerWeight(rho, 1.0, a)
    closed = evaluate_image(transform(op, w, f), x, n_terms=n_terms)
    numeric = series_lhs_numeric(op, w, f, x, N=n_terms)
    return TheoremCheck(theorem, draw, op, k, rho, a, closed, numeric)


def verify_theorem(theorem: str, draws: int = 20, seed: int = 0, x: float = 1.0, n_terms: int = 8) -> list[TheoremCheck]:
    """Seeded random draws of one theorem with the operand ``1Psi1^k[(1,1);(2,1)]`` at ``a = 0.5``."""
    kind, side = THEOREMS[theorem]
    rng = np.random.default_rng(seed)
    out = []
    for i in range(draws):
        op = draw_operator(rng, "msm", kind, side)
        k = float(rng.choice([1.0, 2.0]))
        rho = draw_rho(rng, op, k)
        out.append(theorem_case(theorem, op, k, rho, 0.5, True, x, n_terms, i))
    return out


def max_rel_error(checks: Iterable[TheoremCheck]) -> float:
    return max((c.rel_error for c in checks), default=math.nan)
