"""Gauss and Appell hypergeometric evaluators.

``gauss_2f1`` sums the Gauss series inside the unit disk and continues it to
the negative real axis with the Pfaff transformation.  For real arguments in
(1/2, 1) the classical connection formula around ``z = 1`` is used instead of
the slowly converging series.

``appell_f3`` sums the third Appell function as a single series of Gauss
functions, so that the second argument may lie anywhere on the negative real
axis.

``MSMKernel`` evaluates the Appell kernel of the MSM operators along the curve
``(1 - s, 1 - 1/s)``, ``0 < s < 1``, on which it is needed by the quadrature
oracle.  Near ``s = 0`` both series forms above converge too slowly, so the
kernel is rewritten as an Euler-type integral of an elementary Gauss function
(see the class docstring).
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from math import comb

import numpy as np

from .errors import DomainError, NonConvergenceError, OverflowError
from .gamma import _as_complex, gamma, log_gamma, pochhammer, rgamma
from .quadrature import gauss_legendre, tanh_sinh

__all__ = [
    "AppellF3Params",
    "DEFAULT_TOL",
    "Gauss2F1Params",
    "MSMKernel",
    "PowerPieces",
    "appell_f3",
    "gauss_2f1",
    "hyp2f1",
    "hyp2f1_pieces",
    "term_cap",
]

DEFAULT_TOL = 1e-12
_DEFAULT_CAP = 20000
_INT_TOL = 1e-14
# connection formula near integer c - a - b: nodes m + j*eps with eps*|log w| ~ _EPS_LOG
_EPS_LOG = 0.003
_OFFSETS = (-3, -2, -1, 1, 2, 3)
_BUCKET = math.log(1.25)


def term_cap(default: int = _DEFAULT_CAP) -> int:
    """Series term cap, overridable through ``KWRIGHT_TERM_CAP``."""
    raw = os.environ.get("KWRIGHT_TERM_CAP")
    if raw is None:
        return default
    try:
        cap = int(raw)
    except ValueError as exc:
        raise DomainError(f"KWRIGHT_TERM_CAP must be a positive integer, got {raw!r}") from exc
    if cap <= 0:
        raise DomainError(f"KWRIGHT_TERM_CAP must be a positive integer, got {raw!r}")
    return cap


def _is_nonpos_int(z: complex, tol: float = _INT_TOL) -> bool:
    n = round(z.real)
    return n <= 0 and abs(z - n) < tol


def _lagrange(nodes: tuple[float, ...], x: complex) -> tuple[complex, ...]:
    out = []
    for j, xj in enumerate(nodes):
        num = den = 1.0
        for i, xi in enumerate(nodes):
            if i != j:
                num *= x - xi
                den *= xj - xi
        out.append(num / den)
    return tuple(out)


@dataclass(frozen=True)
class Gauss2F1Params:
    """Parameters ``(alpha, beta; gamma)`` of the Gauss function."""

    alpha: complex
    beta: complex
    gamma: complex

    def __post_init__(self) -> None:
        for name in ("alpha", "beta", "gamma"):
            object.__setattr__(self, name, _as_complex(getattr(self, name)))
        if _is_nonpos_int(self.gamma, 1e-12):
            raise DomainError(f"2F1 lower parameter {self.gamma} is a nonpositive integer")


@dataclass(frozen=True)
class AppellF3Params:
    """Parameters ``(alpha, alpha', beta, beta'; gamma)`` of the Appell F3 function."""

    alpha: complex
    alpha_prime: complex
    beta: complex
    beta_prime: complex
    gamma: complex

    def __post_init__(self) -> None:
        for name in ("alpha", "alpha_prime", "beta", "beta_prime", "gamma"):
            object.__setattr__(self, name, _as_complex(getattr(self, name)))
        if _is_nonpos_int(self.gamma, 1e-12):
            raise DomainError(f"F3 lower parameter {self.gamma} is a nonpositive integer")


# ---------------------------------------------------------------------------
# Gauss series


def _tail(mag, prev):
    """Geometric bound ``|t| / (1 - r)`` on the remainder, ``r`` the last term ratio."""
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(prev > 0, mag / np.where(prev > 0, prev, 1.0), 0.0)
        return np.where(r < 1.0, mag / (1.0 - np.where(r < 1.0, r, 0.0)), np.inf)


def _series_scalar(a: complex, b: complex, c: complex, z: complex, tol: float, cap: int) -> complex:
    term = total = 1.0 + 0j
    small = 0
    n = 0
    while True:
        prev = abs(term)
        term *= (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total += term
        n += 1
        if _tail(abs(term), prev) <= tol * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
        if n >= cap:
            raise NonConvergenceError(f"2F1 series reached the term cap {cap} at z = {z}")


def _series_vec(a: complex, b: complex, c: complex, z: np.ndarray, tol: float, cap: int) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    term = np.ones_like(z)
    total = np.ones_like(z)
    small = np.zeros(z.shape, dtype=int)
    n = 0
    while small.min(initial=3) < 3:
        prev = np.abs(term)
        term = term * ((a + n) * (b + n) / ((c + n) * (n + 1))) * z
        total = total + term
        n += 1
        small = np.where(_tail(np.abs(term), prev) <= tol * np.abs(total), small + 1, 0)
        if n >= cap:
            raise NonConvergenceError(f"2F1 series reached the term cap {cap}")
    return total


@dataclass
class PowerPieces:
    """Sum of terms ``values[i] * w**exponents[i]`` over a common base ``w``."""

    exponents: list[complex] = field(default_factory=list)
    values: list[np.ndarray] = field(default_factory=list)

    def add(self, exponent: complex, values: np.ndarray) -> None:
        self.exponents.append(complex(exponent))
        self.values.append(values)

    def log_terms(self, log_w: np.ndarray, extra: np.ndarray | float = 0.0) -> list[np.ndarray]:
        """Per-piece ``exponent * log_w + extra`` (without the values)."""
        return [e * log_w + extra for e in self.exponents]

    def evaluate(self, log_w: np.ndarray) -> np.ndarray:
        out = np.zeros(np.shape(log_w), dtype=complex)
        for e, v in zip(self.exponents, self.values):
            out += v * np.exp(e * log_w)
        return out


def _two_term(a: complex, b: complex, c: complex, w: np.ndarray, tol: float, cap: int) -> list[tuple[complex, np.ndarray]]:
    delta = c - a - b
    gc = gamma(c)
    out = []
    a1 = gc * gamma(delta) * rgamma(c - a) * rgamma(c - b)
    if a1 != 0:
        out.append((0j, a1 * _series_vec(a, b, 1.0 - delta, w, tol, cap)))
    a2 = gc * gamma(-delta) * rgamma(a) * rgamma(b)
    if a2 != 0:
        out.append((delta, a2 * _series_vec(c - a, c - b, 1.0 + delta, w, tol, cap)))
    return out


def _near_one(a: complex, b: complex, c: complex, w: np.ndarray, tol: float, cap: int) -> list[tuple[complex, np.ndarray]]:
    """Connection formula around ``z = 1`` as ``[(exponent of w, values)]``.

    When ``c - a - b`` is close to an integer ``m`` the two terms cancel; the
    function is then interpolated in ``c`` from nodes ``c - a - b = m + j*eps``,
    with ``eps`` shrinking like ``1/|log w|`` so the interpolant stays smooth.
    """
    w = np.asarray(w, dtype=float)
    delta = c - a - b
    m = round(delta.real)
    eta = delta - m
    logl = np.log(np.maximum(1.0, np.abs(np.log(w))))
    bucket = np.ceil(logl / _BUCKET).astype(int)
    out: list[tuple[complex, np.ndarray]] = []
    for bk in np.unique(bucket):
        sel = bucket == bk
        eps = _EPS_LOG / math.exp(bk * _BUCKET)
        if abs(eta) >= 0.5 * eps:
            parts = _two_term(a, b, c, w[sel], tol, cap)
        else:
            nodes = tuple(j * eps for j in _OFFSETS)
            weights = _lagrange(nodes, eta)
            parts = []
            for t, lj in zip(nodes, weights):
                for e, v in _two_term(a, b, c - eta + t, w[sel], tol, cap):
                    parts.append((e, lj * v))
        for e, v in parts:
            vals = np.zeros(w.shape, dtype=complex)
            vals[sel] = v
            out.append((e, vals))
    return out


def hyp2f1_pieces(a, b, c, z: np.ndarray, w: np.ndarray, tol: float = DEFAULT_TOL) -> PowerPieces:
    """``2F1(a, b; c; z)`` for real ``z`` in [0, 1) as powers of ``w = 1 - z``.

    ``w`` must be supplied accurately by the caller; it carries all the
    information near ``z = 1``.
    """
    a, b, c = _as_complex(a), _as_complex(b), _as_complex(c)
    z = np.asarray(z, dtype=float)
    w = np.asarray(w, dtype=float)
    cap = term_cap()
    pieces = PowerPieces()
    if _is_nonpos_int(a) or _is_nonpos_int(b):
        pieces.add(0, _series_vec(a, b, c, z, tol, cap))
        return pieces
    lo = z <= 0.5
    if lo.any():
        vals = np.zeros(z.shape, dtype=complex)
        vals[lo] = _series_vec(a, b, c, z[lo], tol, cap)
        pieces.add(0, vals)
    hi = ~lo
    if hi.any():
        for e, v in _near_one(a, b, c, w[hi], tol, cap):
            vals = np.zeros(z.shape, dtype=complex)
            vals[hi] = v
            pieces.add(e, vals)
    return pieces


def _unit_interval(a: complex, b: complex, c: complex, x: float, w: float, tol: float, cap: int) -> complex:
    if x <= 0.5:
        return _series_scalar(a, b, c, complex(x), tol, cap)
    lw = math.log(w)
    total = 0j
    for e, v in _near_one(a, b, c, np.array([w]), tol, cap):
        total += complex(v[0]) * np.exp(e * lw)
    return total


def hyp2f1(a, b, c, z, tol: float = DEFAULT_TOL) -> complex:
    """Gauss function on the unit disk and the negative real axis."""
    a, b, c, z = (_as_complex(v) for v in (a, b, c, z))
    if _is_nonpos_int(c, 1e-12):
        raise DomainError(f"2F1 lower parameter {c} is a nonpositive integer")
    cap = term_cap()
    if z == 0:
        return 1.0 + 0j
    if _is_nonpos_int(a) or _is_nonpos_int(b):
        return _series_scalar(a, b, c, z, tol, cap)
    if z.imag == 0.0:
        x = z.real
        if x < 0.0:
            # Pfaff: z -> z/(z-1) maps (-inf, 0) onto (0, 1)
            scale = np.exp(-a * math.log1p(-x))
            return complex(scale * _unit_interval(a, c - b, c, x / (x - 1.0), 1.0 / (1.0 - x), tol, cap))
        if x < 1.0:
            return _unit_interval(a, b, c, x, 1.0 - x, tol, cap)
        raise DomainError(f"2F1 argument {x} is outside the served region")
    if abs(z) < 1.0:
        return _series_scalar(a, b, c, z, tol, cap)
    raise DomainError(f"2F1 argument {z} is outside the served region")


def gauss_2f1(p: Gauss2F1Params, z, tol: float = DEFAULT_TOL) -> complex:
    """``2F1(p.alpha, p.beta; p.gamma; z)`` for ``|z| < 1`` or real ``z <= 0``."""
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    return hyp2f1(p.alpha, p.beta, p.gamma, z, tol)


def appell_f3(p: AppellF3Params, x, y, tol: float = DEFAULT_TOL) -> complex:
    """Third Appell function for ``|x| < 1`` and ``|y| < 1`` or real ``y <= 0``.

    Summed as ``sum_m (alpha)_m (beta)_m / ((gamma)_m m!) x**m 2F1(alpha', beta'; gamma+m; y)``.
    """
    x, y = _as_complex(x), _as_complex(y)
    if not tol > 0:
        raise DomainError(f"tol must be positive, got {tol}")
    if not abs(x) < 1.0:
        raise DomainError(f"F3 first argument {x} must satisfy |x| < 1")
    if not (abs(y) < 1.0 or (y.imag == 0.0 and y.real <= 0.0)):
        raise DomainError(f"F3 second argument {y} must satisfy |y| < 1 or be real and <= 0")
    al, alp, be, bep, ga = p.alpha, p.alpha_prime, p.beta, p.beta_prime, p.gamma
    cap = term_cap()
    coef = 1.0 + 0j
    total = 0j
    small = 0
    m = 0
    while True:
        term = coef * hyp2f1(alp, bep, ga + m, y, 0.1 * tol)
        total += term
        if abs(term) <= tol * abs(total):
            small += 1
            if small >= 3:
                return total
        else:
            small = 0
        coef *= (al + m) * (be + m) / ((ga + m) * (m + 1)) * x
        m += 1
        if coef == 0:
            return total
        if m >= cap:
            raise NonConvergenceError(f"F3 outer series reached the term cap {cap}")


# ---------------------------------------------------------------------------
# MSM kernel on its integration curve


def _poly_theta(shifts: list[complex]) -> list[complex]:
    """Coefficients ``e_i`` of ``prod_j (theta + shift_j) = sum_i e_i theta**i``."""
    coeffs = [1.0 + 0j]
    for c in shifts:
        new = [0j] * (len(coeffs) + 1)
        for i, e in enumerate(coeffs):
            new[i] += e * c
            new[i + 1] += e
        coeffs = new
    return coeffs


def _stirling2(n: int, k: int) -> int:
    return sum((-1) ** (k - j) * comb(k, j) * j**n for j in range(k + 1)) // math.factorial(k)


def _logsumexp(logs: np.ndarray, vals: np.ndarray) -> tuple[complex, float]:
    """``sum(vals * exp(logs))`` as ``(mantissa, scale)`` with a real scale."""
    if logs.size == 0:
        return 0j, 0.0
    top = float(np.max(logs.real))
    if not math.isfinite(top):
        return 0j, 0.0
    return complex(np.sum(vals * np.exp(logs - top))), top


class MSMKernel:
    """Appell kernel ``F3(alpha, alpha', beta, beta'; gamma; 1 - s, 1 - 1/s)``.

    A Pfaff step on each inner Gauss function turns the kernel into
    ``s**lam * G(u)`` with ``u = 1 - s``, where ``lam`` is ``alpha'`` or
    ``beta'`` (the kernel is symmetric in the two) and ``kap`` is the other one.
    Collecting powers of ``u`` gives

        G(u) = sum_N (d)_N / (g)_N * S_N * u**N,   d = gamma - kap,  g = gamma,

    with ``S_N`` the Taylor coefficients of
    ``W(z) = (1 - z)**(-lam) * 2F1(alpha, beta; d; z)``.  Writing
    ``(d)_N/(g)_N`` as a Beta integral, after moving ``d`` up by ``n1`` and
    ``g`` up by ``n2`` so that both Beta exponents are positive, yields

        G(u) = sum_{N<n1} c_N u**N
               + u**n1 * K / B(D, E) * int_0^1 v**(D-1) (1-v)**(E-1) H(u v) dv,

    where ``H = z**-n1 * (prod_j (theta + g + j) W - polynomial)`` and
    ``theta = z d/dz``.  ``H`` is elementary apart from Gauss functions whose
    behaviour at ``z = 1`` is handled exactly by the connection formula.
    """

    _NSERIES = 160

    def __init__(self, alpha, alpha_prime, beta, beta_prime, gamma_, tol: float = 1e-15) -> None:
        self.params = tuple(_as_complex(v) for v in (alpha, alpha_prime, beta, beta_prime, gamma_))
        al, alp, be, bep, ga = self.params
        if _is_nonpos_int(ga, 1e-12):
            raise DomainError(f"kernel lower parameter {ga} is a nonpositive integer")
        self.tol = tol
        best = None
        for lam, kap in ((alp, bep), (bep, alp)):
            d = ga - kap
            if _is_nonpos_int(d, 1e-9):
                continue
            n1 = max(0, math.ceil(0.25 - d.real))
            n2 = max(0, math.ceil(0.25 - kap.real))
            if best is None or n1 + n2 < best[0]:
                best = (n1 + n2, lam, kap, n1, n2)
        if best is None:
            raise DomainError(f"no usable kernel representation for parameters {self.params}")
        _, self.lam, self.kap, self.n1, self.n2 = best
        self.a, self.b, self.g = al, be, ga
        self.d = ga - self.kap
        self.D = self.d + self.n1
        self.E = self.kap + self.n2
        self._setup()

    def _setup(self) -> None:
        a, b, d, g, lam, n1, n2 = self.a, self.b, self.d, self.g, self.lam, self.n1, self.n2
        ns = self._NSERIES
        wa = np.empty(ns, dtype=complex)
        wb = np.empty(ns, dtype=complex)
        wa[0] = wb[0] = 1.0
        for m in range(1, ns):
            wa[m] = wa[m - 1] * (a + m - 1) * (b + m - 1) / ((d + m - 1) * m)
            wb[m] = wb[m - 1] * (lam + m - 1) / m
        self.S = np.convolve(wa, wb)[:ns]
        ratio = np.empty(ns, dtype=complex)
        ratio[0] = 1.0
        for n in range(1, ns):
            ratio[n] = ratio[n - 1] * (d + n - 1) / (g + n - 1)
        self.coeffs = ratio * self.S
        shifts = [g + j for j in range(n2)]
        self.hseries = np.array(
            [self.S[n] * np.prod([n + s for s in shifts]) for n in range(n1, ns)], dtype=complex
        )
        self.poly = [self.S[n] * np.prod([n + s for s in shifts]) for n in range(n1)]
        e = _poly_theta(shifts)
        self.eps = [sum(e[i] * _stirling2(i, l) for i in range(l, len(e))) for l in range(len(e))]
        self.K = pochhammer(d, n1) / (pochhammer(g, n1) * pochhammer(g + n1, n2))
        self.log_beta = log_gamma(self.D) + log_gamma(self.E) - log_gamma(self.D + self.E)

    # -- H(z) ---------------------------------------------------------------

    def h_pieces(self, z: np.ndarray, w: np.ndarray) -> PowerPieces:
        """``H`` at real ``z`` in (0, 1) as powers of ``w = 1 - z``."""
        z = np.asarray(z, dtype=float)
        w = np.asarray(w, dtype=float)
        cap = term_cap()
        pieces = PowerPieces()
        lo = z <= 0.5
        if lo.any():
            vals = np.zeros(z.shape, dtype=complex)
            vals[lo] = np.polynomial.polynomial.polyval(z[lo], self.hseries)
            pieces.add(0, vals)
        hi = ~lo
        if not hi.any():
            return pieces
        zh, wh = z[hi], w[hi]
        a, b, d, lam, n1 = self.a, self.b, self.d, self.lam, self.n1
        for l, el in enumerate(self.eps):
            if el == 0:
                continue
            for r in range(l + 1):
                coef = el * comb(l, r) * pochhammer(lam, l - r) * pochhammer(a, r) * pochhammer(b, r) / pochhammer(d, r)
                if coef == 0:
                    continue
                ar, br, cr = a + r, b + r, d + r
                if _is_nonpos_int(ar) or _is_nonpos_int(br):
                    parts = [(0j, _series_vec(ar, br, cr, zh, self.tol, cap))]
                else:
                    parts = _near_one(ar, br, cr, wh, self.tol, cap)
                zfac = coef * zh ** (l - n1)
                for e, v in parts:
                    vals = np.zeros(z.shape, dtype=complex)
                    vals[hi] = zfac * v
                    pieces.add(e - lam - l + r, vals)
        if n1:
            poly = np.polynomial.polynomial.polyval(zh, np.array(self.poly, dtype=complex))
            vals = np.zeros(z.shape, dtype=complex)
            vals[hi] = -poly * zh ** (-n1)
            pieces.add(0, vals)
        return pieces

    # -- G(u) ---------------------------------------------------------------

    def log_g(self, s) -> tuple[np.ndarray, np.ndarray]:
        """``G(1 - s)`` as ``mantissa * exp(scale)`` for ``s`` in (0, 1]."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        mant = np.zeros(s.shape, dtype=complex)
        scale = np.zeros(s.shape, dtype=float)
        small = s >= 0.5
        if small.any():
            mant[small] = np.polynomial.polynomial.polyval(1.0 - s[small], self.coeffs)
        for idx in np.flatnonzero(~small):
            mant[idx], scale[idx] = self._log_g_one(float(s[idx]))
        return mant, scale

    def _log_g_one(self, s: float) -> tuple[complex, float]:
        u = 1.0 - s
        D, E = self.D, self.E
        head = complex(np.polynomial.polynomial.polyval(u, self.coeffs[: self.n1])) if self.n1 else 0j
        rule = tanh_sinh(5)
        # v in (0, 1/2): z = u v stays on the series side
        lv = math.log(0.5) + rule.log_a
        v = np.exp(lv)
        hv = np.polynomial.polynomial.polyval(u * v, self.hseries)
        first = complex(np.sum(np.exp(math.log(0.5) + rule.log_w + (D - 1) * lv + (E - 1) * np.log1p(-v)) * hv))
        # v in (1/2, 1) with 1 - v = w
        if s >= 0.05:
            lw = math.log(0.5) + rule.log_a
            wv = np.exp(lw)
            logs_base = math.log(0.5) + rule.log_w + (E - 1) * lw + (D - 1) * np.log1p(-wv)
            wz = s + u * wv
            zz = u * (1.0 - wv)
        else:
            # w_z = s e^tau resolves the near-singularity at w ~ s
            tau_max = math.log((s + 0.5 * u) / s)
            tau1 = np.exp(rule.log_a)
            lem1 = np.where(tau1 < 1e-8, rule.log_a + 0.5 * tau1, np.log(np.expm1(np.maximum(tau1, 1e-300))))
            npan = max(1, math.ceil((tau_max - 1.0) / 2.0))
            gx, gw = gauss_legendre(20)
            edges = np.linspace(1.0, tau_max, npan + 1)
            width = np.diff(edges)
            tau2 = (edges[:-1, None] + width[:, None] * gx[None, :]).ravel()
            w2 = (width[:, None] * gw[None, :]).ravel()
            tau = np.concatenate([tau1, tau2])
            logw_tau = np.concatenate([rule.log_w, np.log(w2)])
            lem = np.concatenate([lem1, np.log(np.expm1(tau2))])
            lw = math.log(s) - math.log(u) + lem
            wv = np.exp(lw)
            logs_base = logw_tau + math.log(s / u) + tau + (E - 1) * lw + (D - 1) * np.log1p(-wv)
            wz = s * np.exp(tau)
            zz = 1.0 - wz
        pieces = self.h_pieces(zz, wz)
        lwz = np.log(wz)
        logs = np.concatenate([logs_base + e * lwz for e in pieces.exponents])
        vals = np.concatenate(pieces.values)
        m2, sc2 = _logsumexp(logs, vals)
        pref = u**self.n1 * self.K * np.exp(-self.log_beta)
        top = max(0.0, sc2)
        mant = (head + pref * first) * math.exp(-top) + pref * m2 * math.exp(sc2 - top)
        return complex(mant), top

    def f3(self, s) -> np.ndarray:
        """Kernel value ``F3(...; 1 - s, 1 - 1/s)`` for ``s`` in (0, 1]."""
        s = np.atleast_1d(np.asarray(s, dtype=float))
        if np.any(s <= 0) or np.any(s > 1):
            raise DomainError("kernel curve parameter s must lie in (0, 1]")
        mant, scale = self.log_g(s)
        with np.errstate(over="ignore", invalid="ignore"):
            out = mant * np.exp(self.lam * np.log(s) + scale)
        if not np.all(np.isfinite(out)):
            raise OverflowError("kernel value exceeds double range")
        return out
