"""Quadrature rules on the unit interval.

Nodes are returned together with the logarithms of their distances to both
endpoints, so integrands with algebraic endpoint singularities can be
assembled in log space without cancellation.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = ["UnitRule", "gauss_legendre", "tanh_sinh"]


@dataclass(frozen=True)
class UnitRule:
    """Nodes ``a`` in (0, 1) with ``b = 1 - a`` and log-weights."""

    log_a: np.ndarray
    log_b: np.ndarray
    log_w: np.ndarray

    @property
    def a(self) -> np.ndarray:
        return np.exp(self.log_a)

    @property
    def b(self) -> np.ndarray:
        return np.exp(self.log_b)

    @property
    def w(self) -> np.ndarray:
        return np.exp(self.log_w)

    def __len__(self) -> int:
        return self.log_a.size


@lru_cache(maxsize=32)
def tanh_sinh(level: int, tau_max: float = 6.0) -> UnitRule:
    """Double-exponential rule with step ``2**-level`` on (0, 1).

    ``tau_max = 6`` keeps the outermost nodes about 1e-275 from the ends.
    """
    h = 2.0 ** (-level)
    n = int(np.ceil(tau_max / h))
    tau = h * np.arange(-n, n + 1)
    q = 0.5 * np.pi * np.sinh(tau)
    # a = 1 / (1 + exp(-2q)), b = 1 / (1 + exp(2q))
    log_a = -np.logaddexp(0.0, -2.0 * q)
    log_b = -np.logaddexp(0.0, 2.0 * q)
    log_sech2 = 2.0 * (np.log(2.0) - np.abs(q) - np.log1p(np.exp(-2.0 * np.abs(q))))
    log_w = np.log(h) + np.log(0.25 * np.pi * np.cosh(tau)) + log_sech2
    for arr in (log_a, log_b, log_w):
        arr.setflags(write=False)
    return UnitRule(log_a, log_b, log_w)


@lru_cache(maxsize=8)
def gauss_legendre(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to (0, 1)."""
    x, w = np.polynomial.legendre.leggauss(n)
    nodes, weights = 0.5 * (x + 1.0), 0.5 * w
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights
