"""The generalized K-Wright function.

    pPsi_q^k(z) = sum_n prod_i Gamma_k(a_i + n alpha_i) / prod_j Gamma_k(b_j + n beta_j) * z**n / n!

Terms are formed in the log domain, so large gamma values never materialise.
Parameter values are stored exactly as given (ints, floats, Fractions or
complex numbers); conversion to complex happens only at evaluation time.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from numbers import Number
from typing import Any, Iterable, Sequence

from .errors import DomainError, NonConvergenceError, OverflowError, PoleError
from .gamma import POLE_TOL, _as_complex, gamma_k, log_gamma_k
from .hypergeometric import term_cap

__all__ = [
    "ConvergenceClass",
    "ConvergenceData",
    "DELTA_TOL",
    "WrightParams",
    "classify",
    "convergence_data",
    "eval_kwright",
    "kwright_partial_sum",
    "kwright_sum",
    "log_term_coefficient",
    "term_coefficient_direct",
]

DELTA_TOL = 1e-12
DEFAULT_TOL = 1e-12
_DEFAULT_CAP = 10000
_LOG_MAX = 709.0

Pair = tuple[Any, Any]


def _pairs(items: Iterable[Sequence[Any]], what: str) -> tuple[Pair, ...]:
    out = []
    for i, item in enumerate(items):
        if len(item) != 2:
            raise DomainError(f"{what} pair {i} must have two entries, got {item!r}")
        value, step = item
        if not isinstance(value, Number) or not isinstance(step, Number):
            raise DomainError(f"{what} pair {i} must hold numbers, got {item!r}")
        if isinstance(step, complex):
            if step.imag != 0:
                raise DomainError(f"{what} step {i} must be real, got {step}")
            step = step.real
        if step == 0:
            raise DomainError(f"{what} step {i} must be nonzero")
        out.append((value, step))
    return tuple(out)


@dataclass(frozen=True)
class WrightParams:
    """``(k; (a_i, alpha_i)_{1..p}; (b_j, beta_j)_{1..q})``."""

    k: Any
    upper: tuple[Pair, ...] = ()
    lower: tuple[Pair, ...] = ()

    def __post_init__(self) -> None:
        k = self.k
        if not isinstance(k, Number) or isinstance(k, complex) or not k > 0 or not math.isfinite(float(k)):
            raise DomainError(f"k must be a positive real, got {k!r}")
        object.__setattr__(self, "upper", _pairs(self.upper, "upper"))
        object.__setattr__(self, "lower", _pairs(self.lower, "lower"))

    @property
    def p(self) -> int:
        return len(self.upper)

    @property
    def q(self) -> int:
        return len(self.lower)

    def to_dict(self) -> dict:
        def enc(pairs):
            out = []
            for v, s in pairs:
                c = _as_complex(v)
                out.append([c.real, c.imag, float(s)])
            return out

        return {"k": float(self.k), "upper": enc(self.upper), "lower": enc(self.lower)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> WrightParams:
        try:
            k = data["k"]
            upper = [_decode(row) for row in data.get("upper", [])]
            lower = [_decode(row) for row in data.get("lower", [])]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed WrightParams object: {exc}") from exc
        return cls(float(k), tuple(upper), tuple(lower))

    @classmethod
    def from_json(cls, text: str) -> WrightParams:
        return cls.from_dict(json.loads(text))


def _decode(row) -> Pair:
    if len(row) != 3:
        raise ValueError(f"expected [re, im, step], got {row!r}")
    re, im, step = (float(v) for v in row)
    return (complex(re, im) if im else re, step)


@dataclass(frozen=True)
class ConvergenceData:
    """``delta_cap`` (Delta), ``delta_radius`` (delta) and ``mu``."""

    delta_cap: float
    delta_radius: float
    mu: complex


@dataclass(frozen=True)
class ConvergenceClass:
    """Convergence verdict of the series at one argument.

    ``kind`` is one of ``entire``, ``disk``, ``disk-boundary``,
    ``divergent-at-point`` and ``outside-theorem-scope``.
    """

    kind: str
    convergent: bool
    radius: float | None
    data: ConvergenceData

    def describe(self) -> str:
        if self.kind == "entire":
            return "entire: convergent for every z"
        if self.kind == "disk":
            return f"convergent in |z|<{self.radius:.17g}"
        if self.kind == "disk-boundary":
            if self.convergent:
                return f"on |z|={self.radius:.17g}, convergent since Re(mu)>1/2"
            return f"on |z|={self.radius:.17g} with Re(mu)<=1/2: convergence not guaranteed"
        if self.kind == "divergent-at-point":
            return f"divergent: |z| exceeds the radius {self.radius:.17g}"
        return "Delta<-1: outside the convergence theorem, divergent for z != 0"


def convergence_data(params: WrightParams) -> ConvergenceData:
    k = float(params.k)
    al = [float(s) / k for _, s in params.upper]
    be = [float(s) / k for _, s in params.lower]
    delta_cap = sum(be) - sum(al)
    log_radius = sum(-x * math.log(abs(x)) for x in al) + sum(x * math.log(abs(x)) for x in be)
    mu = (
        sum(_as_complex(b) for b, _ in params.lower) / k
        - sum(_as_complex(a) for a, _ in params.upper) / k
        + (params.p - params.q) / 2
    )
    return ConvergenceData(delta_cap, math.exp(log_radius), complex(mu))


def classify(params: WrightParams, z) -> ConvergenceClass:
    data = convergence_data(params)
    z = _as_complex(z)
    if data.delta_cap > -1.0 + DELTA_TOL:
        return ConvergenceClass("entire", True, None, data)
    if data.delta_cap < -1.0 - DELTA_TOL:
        return ConvergenceClass("outside-theorem-scope", z == 0, None, data)
    r = data.delta_radius
    if abs(abs(z) - r) <= DELTA_TOL * r:
        return ConvergenceClass("disk-boundary", data.mu.real > 0.5, r, data)
    if abs(z) < r:
        return ConvergenceClass("disk", True, r, data)
    return ConvergenceClass("divergent-at-point", False, r, data)


def _is_pole(z: complex, k: float) -> bool:
    w = z / k
    n = round(w.real)
    return n <= 0 and abs(w - n) < POLE_TOL


def log_term_coefficient(params: WrightParams, n: int) -> complex:
    """``log(prod Gamma_k(a_i + n alpha_i) / prod Gamma_k(b_j + n beta_j) / n!)``."""
    k = float(params.k)
    acc = -math.lgamma(n + 1.0) + 0j
    for i, (a, s) in enumerate(params.upper):
        arg = _as_complex(a) + n * float(s)
        if _is_pole(arg, k):
            raise PoleError(f"term n={n} needs Gamma_k at the pole {arg} (upper pair i={i})")
        acc += log_gamma_k(arg, k)
    for j, (b, s) in enumerate(params.lower):
        arg = _as_complex(b) + n * float(s)
        if _is_pole(arg, k):
            raise PoleError(f"term n={n} needs Gamma_k at the pole {arg} (lower pair j={j})")
        acc -= log_gamma_k(arg, k)
    return acc


def term_coefficient_direct(params: WrightParams, n: int) -> complex:
    """Same coefficient as products of ``gamma_k`` values (no logarithms)."""
    k = float(params.k)
    num = 1.0 + 0j
    for a, s in params.upper:
        num *= gamma_k(_as_complex(a) + n * float(s), k)
    den = 1.0 + 0j
    for b, s in params.lower:
        den *= gamma_k(_as_complex(b) + n * float(s), k)
    return num / (den * math.factorial(n))


def _term(params: WrightParams, n: int, log_z: complex | None) -> complex:
    lt = log_term_coefficient(params, n)
    if n:
        if log_z is None:
            return 0j
        lt += n * log_z
    if lt.real > _LOG_MAX:
        raise OverflowError(f"series term n={n} exceeds double range")
    return cmath.exp(lt)


def kwright_partial_sum(params: WrightParams, z, n_terms: int) -> complex:
    """Sum of the terms ``n = 0 .. n_terms`` (``n_terms + 1`` terms)."""
    if n_terms < 0:
        raise DomainError(f"n_terms must be nonnegative, got {n_terms}")
    z = _as_complex(z)
    log_z = cmath.log(z) if z != 0 else None
    return sum((_term(params, n, log_z) for n in range(n_terms + 1)), 0j)


def kwright_sum(params: WrightParams, z, tol: float = DEFAULT_TOL, cap: int | None = None) -> tuple[complex, float]:
    """Convergent sum and an error estimate (the last three term magnitudes).

    Stops once three consecutive terms, each inflated by the geometric tail
    factor ``1 / (1 - r)`` with ``r`` the current term ratio, are below
    ``tol * |sum|`` and no larger than their predecessor.
    """
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    z = _as_complex(z)
    cap = term_cap(_DEFAULT_CAP) if cap is None else cap
    log_z = cmath.log(z) if z != 0 else None
    total = _term(params, 0, log_z)
    if log_z is None:
        return total, 0.0
    prev = abs(total)
    small = 0
    for n in range(1, cap):
        t = _term(params, n, log_z)
        total += t
        mag = abs(t)
        ratio = mag / prev if prev > 0 else 0.0
        bound = mag / (1.0 - ratio) if ratio < 1.0 else math.inf
        if bound <= tol * abs(total):
            small += 1
            if small >= 3:
                return total, bound
        else:
            small = 0
        prev = mag
    raise NonConvergenceError(f"K-Wright series reached the term cap {cap}")


def eval_kwright(params: WrightParams, z, tol: float = DEFAULT_TOL) -> complex:
    """Value of the K-Wright function; refuses arguments the classifier rejects."""
    verdict = classify(params, z)
    if not verdict.convergent:
        raise DomainError(f"series does not converge at z={z}: {verdict.describe()}")
    return kwright_sum(params, z, tol)[0]
