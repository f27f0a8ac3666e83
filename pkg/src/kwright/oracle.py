"""Quadrature oracle for the fractional operators.

The operators are evaluated from their defining integrals, independently of the
closed-form images.  After ``t = x s`` (left) or ``t = x / s`` (right) with
``u = 1 - s`` every MSM integral becomes

    x**(gamma - alpha - alpha') / Gamma(gamma) * int_0^1 u**(gamma-1) s**sigma G(u) f(x s**(+-1)) du

where ``F3 = s**lam G(u)`` is the kernel on its curve (``MSMKernel``).  Two
routes are offered:

``fubini``  the Beta-integral representation of ``G`` is exchanged with the
            outer integral, giving a double tanh-sinh rule in which the
            elementary function ``H`` is evaluated once per outer node.
            When the kernel carries ``u**-n2`` the origin of the square is
            a corner singularity, so that corner is split along ``z = xi``
            into two triangles mapped onto squares;
``nested``  ``G`` is computed at every node of a single tanh-sinh rule.

All node data is handled through logarithms of distances to the endpoints, so
the algebraic endpoint behaviour never loses precision.  Derivatives are
central differences of the inner integral with Richardson extrapolation;
Caputo-type derivatives integrate the exact derivative of the operand.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import DomainError, MissingDerivativeError, NonConvergenceError, OverflowError, StepCollapseError
from .gamma import _as_complex, gamma, log_gamma
from .hypergeometric import MSMKernel, PowerPieces, _logsumexp, hyp2f1_pieces
from .operators import EKParams, Kind, MSMParams, PowerWeight, SaigoParams, Side
from .quadrature import tanh_sinh
from .series import WrightParams, log_term_coefficient

__all__ = [
    "Integrand",
    "PowerSum",
    "QuadratureReport",
    "caputo_numeric",
    "lhs_integrand",
    "msm_derivative_numeric",
    "msm_integral_numeric",
    "saigo_integral_numeric",
    "series_lhs_numeric",
]

DEFAULT_TOL = 1e-10
DERIVATIVE_TOL = 1e-6
_MIN_LEVEL = 3
_MAX_LEVEL_1D = 8
_MAX_LEVEL_2D = 7


# ---------------------------------------------------------------------------
# integrands


@dataclass(frozen=True)
class Integrand:
    """A function of ``t > 0`` with an optional exact-derivative handle.

    ``func`` maps an array of ``t`` to complex values.  ``derivative(m)``
    returns the m-th derivative as another ``Integrand``.
    """

    func: Callable[[np.ndarray], np.ndarray]
    derivative_handle: Callable[[int], "Integrand"] | None = None

    def __call__(self, t) -> np.ndarray:
        return np.asarray(self.func(np.asarray(t, dtype=float)), dtype=complex)

    def log_eval(self, log_t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Values as ``mantissa * exp(scale)``."""
        # nodes that underflow to t = 0 carry negligible weight; keep them off the origin
        t = np.maximum(np.exp(log_t), np.finfo(float).tiny)
        vals = self(t)
        return vals, np.zeros(np.shape(log_t))

    def derivative(self, m: int) -> Integrand:
        if m == 0:
            return self
        if self.derivative_handle is None:
            raise MissingDerivativeError("integrand has no exact derivative")
        return self.derivative_handle(m)

    def scaled(self, c) -> Integrand:
        c = complex(c)
        handle = None if self.derivative_handle is None else (lambda m: self.derivative(m).scaled(c))
        return Integrand(lambda t: c * self(t), handle)


class PowerSum(Integrand):
    """``sum_j c_j t**e_j`` with exact derivatives and overflow-free evaluation."""

    def __init__(self, coeffs: Sequence, exponents: Sequence) -> None:
        c = np.array([complex(v) for v in coeffs], dtype=complex)
        e = np.array([_as_complex(v) for v in exponents], dtype=complex)
        if c.shape != e.shape:
            raise DomainError("coefficient and exponent lists differ in length")
        keep = c != 0
        object.__setattr__(self, "coeffs", c[keep])
        object.__setattr__(self, "exponents", e[keep])
        object.__setattr__(self, "func", self._direct)
        object.__setattr__(self, "derivative_handle", self._derivative)

    @classmethod
    def monomial(cls, exponent, coeff=1.0) -> PowerSum:
        return cls([coeff], [exponent])

    def _direct(self, t):
        m, s = self.log_eval(np.log(np.asarray(t, dtype=float)))
        return m * np.exp(s)

    def log_eval(self, log_t: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        log_t = np.asarray(log_t, dtype=float)
        if self.coeffs.size == 0:
            return np.zeros(log_t.shape, dtype=complex), np.zeros(log_t.shape)
        logs = self.exponents[:, None] * log_t[None, :]
        top = np.max(logs.real, axis=0)
        mant = np.sum(self.coeffs[:, None] * np.exp(logs - top[None, :]), axis=0)
        return mant, top

    def _derivative(self, m: int) -> PowerSum:
        c = self.coeffs.copy()
        e = self.exponents.copy()
        for _ in range(m):
            c = c * e
            e = e - 1
        return PowerSum(c, e)

    def scaled(self, c) -> PowerSum:
        return PowerSum(self.coeffs * complex(c), self.exponents)

    def __add__(self, other: PowerSum) -> PowerSum:
        return PowerSum(np.concatenate([self.coeffs, other.coeffs]), np.concatenate([self.exponents, other.exponents]))


def lhs_integrand(side: Side, w: PowerWeight, f: WrightParams, n_terms: int) -> PowerSum:
    """Truncated operand ``t**(rho/k-1) Psi(a t**(mu/k))`` or ``t**(-rho/k) Psi(a t**(-mu/k))``."""
    k = float(f.k)
    rho = _as_complex(w.rho)
    mu = float(w.mu)
    a = _as_complex(w.a)
    coeffs, exps = [], []
    for n in range(n_terms + 1):
        if n and a == 0:
            break
        c = np.exp(log_term_coefficient(f, n)) * (a**n if n else 1.0)
        if side is Side.LEFT:
            exps.append((rho + n * mu) / k - 1.0)
        else:
            exps.append(-(rho + n * mu) / k)
        coeffs.append(c)
    return PowerSum(coeffs, exps)


@dataclass(frozen=True)
class QuadratureReport:
    """Value with its estimated absolute error and the number of integrand evaluations."""

    value: complex
    est_error: float
    evaluations: int
    truncation_T: float | None = None


def _as_integrand(f) -> Integrand:
    if isinstance(f, Integrand):
        return f
    if callable(f):
        return Integrand(f)
    raise DomainError(f"not an integrand: {f!r}")


# ---------------------------------------------------------------------------
# shared level loop


def _finish(mant: complex, scale: float, log_pre: complex) -> complex:
    if mant == 0:
        return 0j
    lm = complex(np.log(mant)) + scale + log_pre
    if lm.real > 709.0:
        raise OverflowError("integral value exceeds double range")
    return complex(np.exp(lm))


def _adaptive(step: Callable[[int], tuple[complex, int]], tol: float, max_level: int) -> QuadratureReport:
    """Raise the tanh-sinh level until successive values agree to ``tol``."""
    prev = None
    err = math.inf
    evaluations = 0
    for level in range(_MIN_LEVEL, max_level + 1):
        val, n = step(level)
        evaluations += n
        if not np.isfinite(val):
            raise NonConvergenceError(f"quadrature value is not finite at level {level}")
        if prev is not None:
            err = abs(val - prev)
            if err <= tol * abs(val) or err == 0.0:
                return QuadratureReport(val, err, evaluations)
        prev = val
    raise NonConvergenceError(
        f"quadrature did not reach relative tolerance {tol} by level {max_level} (last change {err:.3g})"
    )


# ---------------------------------------------------------------------------
# MSM integrals


class _MSMQuadrature:
    """Integration machinery for one MSM integral operator; caches kernel data per level."""

    def __init__(self, op: MSMParams) -> None:
        if op.kind is not Kind.INTEGRAL:
            raise DomainError("expected an integral operator")
        self.op = op
        a, ap, b, bp, g = (_as_complex(v) for v in op.values)
        self.kernel = MSMKernel(a, ap, b, bp, g)
        lam = self.kernel.lam
        self.sigma = lam - ap if op.side is Side.LEFT else a + lam - g - 1.0
        self.g = g
        self.log_pre_const = -log_gamma(g)
        self.x_power = g - a - ap
        self._outer: dict[int, tuple] = {}
        self._split: dict[int, list] = {}

    def _log_f(self, f: Integrand, log_x: float, log_s: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        log_t = log_x + log_s if self.op.side is Side.LEFT else log_x - log_s
        return f.log_eval(log_t)

    def _log_pre(self, x: float) -> complex:
        return self.log_pre_const + self.x_power * math.log(x)

    # -- fubini route -----------------------------------------------------

    def _outer_data(self, level: int):
        if level not in self._outer:
            rule = tanh_sinh(level)
            z = np.exp(rule.log_a)
            wz = np.exp(rule.log_b)
            pieces = self.kernel.h_pieces(z, wz)
            self._outer[level] = (rule, pieces)
        return self._outer[level]

    def _head(self, f: Integrand, x: float, rule) -> complex:
        ker = self.kernel
        if ker.n1 == 0:
            return 0j, 0.0
        lu, ls = rule.log_a, rule.log_b
        fm, fs = self._log_f(f, math.log(x), ls)
        logs = []
        vals = []
        for n in range(ker.n1):
            logs.append(rule.log_w + (self.g - 1.0 + n) * lu + self.sigma * ls + fs)
            vals.append(ker.coeffs[n] * fm)
        return _logsumexp(np.concatenate(logs), np.concatenate(vals))

    def _split_data(self, level: int) -> list:
        """Node groups covering ``0 < z < 1``, ``0 < xi < 1`` with the corner at the origin split along ``z = xi``.

        Each group is ``(lz, lwz, lxi, l1xi, logw, pieces)`` on an
        (outer, inner) grid.  ``pieces`` describes ``H`` on the outer nodes
        when ``z`` is the outer variable and on the whole grid otherwise.
        """
        if level in self._split:
            return self._split[level]
        r = tanh_sinh(level)
        la, lb, lw = r.log_a, r.log_b, r.log_w
        a = np.exp(la)
        half = math.log(0.5)
        ker = self.kernel

        def col(v):
            return v[:, None]

        def row(v):
            return v[None, :]

        def single(pieces, lwz):
            # away from z = 1 the powers of w_z carry no extra precision
            return PowerPieces([0j], [pieces.evaluate(lwz)])

        groups = []
        # z in (1/2, 1): the original product form s = w_z (1 - xi)
        lz, lwz = half + np.log1p(a), half + lb
        pieces = ker.h_pieces(np.exp(lz), np.exp(lwz))
        keep = [(e, v) for e, v in zip(pieces.exponents, pieces.values) if np.any(v)]
        pieces = PowerPieces([e for e, _ in keep], [v for _, v in keep])
        groups.append((col(lz), col(lwz), row(la), row(lb), col(half + lw) + row(lw), pieces))
        # z in (0, 1/2), xi in (1/2, 1)
        lz, lwz = half + la, np.log1p(-0.5 * a)
        pieces = single(ker.h_pieces(np.exp(lz), np.exp(lwz)), lwz)
        groups.append((col(lz), col(lwz), row(half + np.log1p(a)), row(half + lb), col(2 * half + lw) + row(lw), pieces))
        # xi < z < 1/2: xi = z tau
        lxi = col(lz) + row(la)
        groups.append((col(lz), col(lwz), lxi, np.log1p(-np.exp(lxi)), col(half + lw + lz) + row(lw), pieces))
        # z < xi < 1/2: z = xi tau, so H lives on the whole grid
        lxi = half + la
        lz2 = col(lxi) + row(la)
        lwz2 = np.log1p(-np.exp(lz2))
        pieces = single(ker.h_pieces(np.exp(lz2).ravel(), np.exp(lwz2).ravel()), lwz2.ravel())
        pieces.values = [v.reshape(lz2.shape) for v in pieces.values]
        groups.append((lz2, lwz2, col(lxi), col(np.log1p(-0.5 * a)), col(half + lw + lxi) + row(lw), pieces))
        self._split[level] = groups
        return groups

    def split(self, f: Integrand, x: float, level: int) -> tuple[complex, int]:
        """Double rule on the split square; used when the ``u**-n2`` factor makes the origin a corner singularity."""
        ker = self.kernel
        E, D = ker.E, ker.D
        logs, vals, count = [], [], 0
        for lz, lwz, lxi, l1xi, logw, pieces in self._split_data(level):
            lu = np.logaddexp(lz, lwz + lxi)
            ls = lwz + l1xi
            fm, fs = self._log_f(f, math.log(x), ls.ravel())
            fm, fs = fm.reshape(ls.shape), fs.reshape(ls.shape)
            base = logw + (D - 1.0) * lz + E * lwz + (E - 1.0) * lxi - ker.n2 * lu + self.sigma * ls + fs
            count += base.size
            if pieces.values[0].ndim == 1:
                # H depends on the outer node only: sum the inner rule first
                top = np.max(base.real, axis=1)
                top = np.where(np.isfinite(top), top, 0.0)
                jm = np.sum(fm * np.exp(base - top[:, None]), axis=1)
                lw1 = lwz[:, 0]
                logs.extend(top + e * lw1 for e in pieces.exponents)
                vals.extend(v * jm for v in pieces.values)
            else:
                logs.append(base.ravel())
                vals.append((pieces.values[0] * fm).ravel())
        tail_m, tail_s = _logsumexp(np.concatenate(logs), np.concatenate(vals))
        log_p = np.log(complex(ker.K)) - ker.log_beta
        head_m, head_s = self._head(f, x, tanh_sinh(level))
        top = max(tail_s + log_p.real, head_s)
        mant = tail_m * np.exp(tail_s + log_p - top) + head_m * np.exp(head_s - top)
        return _finish(complex(mant), top, self._log_pre(x)), count

    def fubini(self, f: Integrand, x: float, level: int) -> tuple[complex, int]:
        ker = self.kernel
        if ker.n2:
            return self.split(f, x, level)
        rule, pieces = self._outer_data(level)
        inner = tanh_sinh(level)
        lz, lwz = rule.log_a, rule.log_b
        lxi, l1xi = inner.log_a, inner.log_b
        # u = z + w_z xi and s = 1 - u = w_z (1 - xi)
        lu = np.logaddexp(lz[:, None], lwz[:, None] + lxi[None, :])
        ls = lwz[:, None] + l1xi[None, :]
        fm, fs = self._log_f(f, math.log(x), ls.ravel())
        fm = fm.reshape(ls.shape)
        fs = fs.reshape(ls.shape)
        E, D = ker.E, ker.D
        logj = inner.log_w[None, :] + (E - 1.0) * lxi[None, :] - ker.n2 * lu + self.sigma * ls + fs
        top = np.max(logj.real, axis=1)
        top = np.where(np.isfinite(top), top, 0.0)
        jm = np.sum(fm * np.exp(logj - top[:, None]), axis=1)
        base = rule.log_w + (D - 1.0) * lz + E * lwz + top
        logs = np.concatenate([base + e * lwz for e in pieces.exponents])
        vals = np.concatenate([v * jm for v in pieces.values])
        tail_m, tail_s = _logsumexp(logs, vals)
        log_p = np.log(complex(ker.K)) - ker.log_beta
        head_m, head_s = self._head(f, x, rule)
        top2 = max(tail_s + log_p.real, head_s)
        mant = tail_m * np.exp(tail_s + log_p - top2) + head_m * np.exp(head_s - top2)
        value = _finish(complex(mant), top2, self._log_pre(x))
        return value, ls.size + rule.log_a.size

    # -- nested route -----------------------------------------------------

    def nested(self, f: Integrand, x: float, level: int) -> tuple[complex, int]:
        rule = tanh_sinh(level)
        lu, ls = rule.log_a, rule.log_b
        gm, gs = self.kernel.log_g(np.exp(ls))
        fm, fs = self._log_f(f, math.log(x), ls)
        logs = rule.log_w + (self.g - 1.0) * lu + self.sigma * ls + gs + fs
        m, s = _logsumexp(logs, gm * fm)
        return _finish(m, s, self._log_pre(x)), lu.size

    def integrate(self, f: Integrand, x: float, tol: float, method: str) -> QuadratureReport:
        if not x > 0:
            raise DomainError(f"x must be positive, got {x}")
        if method == "fubini":
            rep = _adaptive(lambda L: self.fubini(f, x, L), tol, _MAX_LEVEL_2D)
        elif method == "nested":
            rep = _adaptive(lambda L: self.nested(f, x, L), tol, _MAX_LEVEL_1D)
        else:
            raise DomainError(f"unknown method {method!r}")
        return _with_t(rep, self.op.side)


def _with_t(rep: QuadratureReport, side: Side) -> QuadratureReport:
    return QuadratureReport(rep.value, rep.est_error, rep.evaluations, math.inf if side is Side.RIGHT else None)


_CACHE: dict[tuple, _MSMQuadrature] = {}


def _msm_quadrature(op: MSMParams) -> _MSMQuadrature:
    key = (tuple(_as_complex(v) for v in op.values), op.side)
    q = _CACHE.get(key)
    if q is None:
        if len(_CACHE) > 64:
            _CACHE.clear()
        q = _CACHE[key] = _MSMQuadrature(op)
    return q


def msm_integral_numeric(op: MSMParams, f, x: float, tol: float = DEFAULT_TOL, method: str = "fubini") -> QuadratureReport:
    """MSM fractional integral of ``f`` at ``x`` from its defining integral."""
    if op.kind is not Kind.INTEGRAL:
        raise DomainError("msm_integral_numeric expects an integral operator")
    return _msm_quadrature(op).integrate(_as_integrand(f), x, tol, method)


# ---------------------------------------------------------------------------
# Saigo integrals (Gauss kernel)


def saigo_integral_numeric(op: SaigoParams | EKParams, f, x: float, tol: float = DEFAULT_TOL) -> QuadratureReport:
    """Saigo fractional integral of ``f`` at ``x`` with the Gauss-function kernel."""
    if isinstance(op, EKParams):
        op = op.to_saigo()
    if op.kind is not Kind.INTEGRAL:
        raise DomainError("saigo_integral_numeric expects an integral operator")
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    f = _as_integrand(f)
    a, b, c = (_as_complex(v) for v in (op.alpha, op.beta, op.gamma))
    left = op.side is Side.LEFT
    sigma = 0.0 if left else b - 1.0
    log_pre = -log_gamma(a) - b * math.log(x)
    log_x = math.log(x)

    def step(level: int) -> tuple[complex, int]:
        rule = tanh_sinh(level)
        lu, ls = rule.log_a, rule.log_b
        pieces = hyp2f1_pieces(a + b, -c, a, np.exp(lu), np.exp(ls), tol=1e-15)
        fm, fs = f.log_eval(log_x + ls if left else log_x - ls)
        base = rule.log_w + (a - 1.0) * lu + sigma * ls + fs
        logs = np.concatenate([base + e * ls for e in pieces.exponents])
        vals = np.concatenate([v * fm for v in pieces.values])
        m, s = _logsumexp(logs, vals)
        return _finish(m, s, log_pre), lu.size

    return _with_t(_adaptive(step, tol, _MAX_LEVEL_1D), op.side)


# ---------------------------------------------------------------------------
# derivatives


def _inner_integral_op(op: MSMParams | SaigoParams | EKParams):
    """Integral operator inside a derivative, plus the order ``m``."""
    if isinstance(op, EKParams):
        op = op.to_saigo()
    m = op.m
    if isinstance(op, SaigoParams):
        a, b, c = op.alpha, op.beta, op.gamma
        if op.side is Side.LEFT:
            return SaigoParams(-a + m, -b - m, a + c - m, op.side, Kind.INTEGRAL), m
        return SaigoParams(-a + m, -b - m, a + c, op.side, Kind.INTEGRAL), m
    a, ap, b, bp, g = op.values
    if op.side is Side.LEFT:
        return MSMParams(-ap, -a, -bp + m, -b, -g + m, op.side, Kind.INTEGRAL), m
    return MSMParams(-ap, -a, -bp, -b + m, -g + m, op.side, Kind.INTEGRAL), m


def _integral(op, f, x, tol, method="fubini") -> QuadratureReport:
    if isinstance(op, SaigoParams):
        return saigo_integral_numeric(op, f, x, tol)
    return msm_integral_numeric(op, f, x, tol, method)


def _stencil(m: int) -> tuple[np.ndarray, np.ndarray]:
    p = (m - 1) // 2 + 2
    nodes = np.arange(-p, p + 1, dtype=float)
    mat = np.vander(nodes, increasing=True).T
    rhs = np.zeros(nodes.size)
    rhs[m] = math.factorial(m)
    return nodes, np.linalg.solve(mat, rhs)


def _richardson_derivative(g: Callable[[float], complex], x: float, m: int, tol: float) -> QuadratureReport:
    nodes, weights = _stencil(m)
    h = 0.01 * x
    floor = 1e-6 * x
    table: list[list[complex]] = []
    cache: dict[float, complex] = {}
    evaluations = 0

    def val(pt: float) -> complex:
        nonlocal evaluations
        if pt not in cache:
            cache[pt] = g(pt)
            evaluations += 1
        return cache[pt]

    best = None
    while h >= floor:
        d0 = sum(w * val(x + j * h) for j, w in zip(nodes, weights) if w != 0) / h**m
        row = [complex(d0)]
        for l, prev in enumerate(table[-1] if table else []):
            factor = 4.0 ** (l + 2) - 1.0
            row.append(row[l] + (row[l] - prev) / factor)
        if table:
            err = abs(row[-1] - table[-1][-1])
            best = (row[-1], err)
            if err <= tol * abs(row[-1]) or err == 0.0:
                return QuadratureReport(row[-1], err, evaluations)
        table.append(row)
        h *= 0.5
    msg = "difference stencil could not meet the tolerance before the step floor"
    if best is not None:
        msg += f" (last change {best[1]:.3g})"
    raise StepCollapseError(msg)


def msm_derivative_numeric(
    op: MSMParams | SaigoParams | EKParams, f, x: float, tol: float = DERIVATIVE_TOL, quad_tol: float = 1e-12
) -> QuadratureReport:
    """Fractional derivative as the m-th difference quotient of its inner integral."""
    if op.kind is not Kind.DERIVATIVE:
        raise DomainError("msm_derivative_numeric expects a derivative operator")
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    inner, m = _inner_integral_op(op)
    f = _as_integrand(f)
    sign = 1.0 if op.side is Side.LEFT else (-1.0) ** m
    rep = _richardson_derivative(lambda y: _integral(inner, f, y, quad_tol).value, x, m, tol)
    return QuadratureReport(sign * rep.value, rep.est_error, rep.evaluations, math.inf if op.side is Side.RIGHT else None)


def caputo_numeric(op: MSMParams | SaigoParams | EKParams, f, x: float, tol: float = DEFAULT_TOL) -> QuadratureReport:
    """Caputo-type derivative: the inner integral applied to the exact m-th derivative of ``f``."""
    if op.kind is not Kind.CAPUTO:
        raise DomainError("caputo_numeric expects a Caputo-type operator")
    f = _as_integrand(f)
    inner, m = _inner_integral_op(op)
    fm = f.derivative(m)
    if isinstance(fm, PowerSum) and fm.coeffs.size == 0:
        return QuadratureReport(0j, 0.0, 0, math.inf if op.side is Side.RIGHT else None)
    rep = _integral(inner, fm, x, tol)
    sign = 1.0 if op.side is Side.LEFT else (-1.0) ** m
    return QuadratureReport(sign * rep.value, rep.est_error, rep.evaluations, rep.truncation_T)


def apply_numeric(op, f, x: float, tol: float | None = None) -> QuadratureReport:
    """Dispatch on the operator kind."""
    if isinstance(op, EKParams):
        op = op.to_saigo()
    if op.kind is Kind.INTEGRAL:
        return _integral(op, f, x, DEFAULT_TOL if tol is None else tol)
    if op.kind is Kind.DERIVATIVE:
        return msm_derivative_numeric(op, f, x, DERIVATIVE_TOL if tol is None else tol)
    return caputo_numeric(op, f, x, DEFAULT_TOL if tol is None else tol)


def series_lhs_numeric(op, w: PowerWeight, f: WrightParams, x: float, tol: float | None = None, N: int = 8) -> complex:
    """Operator applied numerically to the operand truncated after ``n = N``.

    The truncated series is integrated as one function; summation and
    integration are never exchanged.
    """
    integrand = lhs_integrand(op.side, w, f, N)
    return apply_numeric(op, integrand, x, tol).value
