"""Complex gamma, k-gamma and k-Pochhammer primitives.

The gamma function uses a Lanczos approximation with ``g = 7`` and fifteen
coefficients, fitted so that the rational sum is exact at ``z = 0, ..., 14``.
Arguments with ``Re(z) < 0.5`` go through the reflection formula.
"""

from __future__ import annotations

import cmath
import math
from numbers import Number

from .errors import DomainError, OverflowError, PoleError

__all__ = [
    "POLE_TOL",
    "gamma",
    "gamma_k",
    "log_gamma",
    "log_gamma_k",
    "pochhammer",
    "pochhammer_k",
    "rgamma",
    "sinpi",
]

POLE_TOL = 1e-12

_G = 7.0
_LANCZOS = (
    1.0000000000000000074,
    676.52036812188353721,
    -1259.1392167222817739,
    771.32342877543770652,
    -176.61502914598978109,
    12.507343225028745327,
    -0.13857103233328224313,
    1.0091126294731372862e-05,
    -3.4345842252531046081e-07,
    8.3593378357125965382e-07,
    -8.5977556445396087554e-07,
    6.0464973384949281078e-07,
    -2.9113287278906137139e-07,
    8.5891293135682268559e-08,
    -1.1646065639867851529e-08,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_HALF_LOG_2PI = 0.5 * math.log(2.0 * math.pi)
_LOG_PI = math.log(math.pi)
_MAX_EXP = 709.78


def _as_complex(z) -> complex:
    if isinstance(z, complex):
        return z
    if isinstance(z, Number):
        return complex(float(z.real), float(z.imag))
    return complex(z)


def _lanczos_sum(z):
    acc = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        acc += _LANCZOS[k] / (z + k)
    return acc


def _check_pole(z: complex) -> None:
    n = round(z.real)
    if n <= 0 and abs(z - n) < POLE_TOL:
        raise PoleError(f"gamma has a pole at z = {n} (argument {z})")


def sinpi(z):
    """``sin(pi*z)`` with argument reduction, exact zeros at integers."""
    z = _as_complex(z)
    x = z.real - 2.0 * round(z.real / 2.0)
    if x > 0.5:
        w, sign = complex(1.0 - x, -z.imag), 1.0
    elif x < -0.5:
        w, sign = complex(1.0 + x, z.imag), -1.0
    else:
        w, sign = complex(x, z.imag), 1.0
    if w.imag == 0.0:
        return complex(sign * math.sin(math.pi * w.real))
    return sign * cmath.sin(math.pi * w)


def _gamma_real(x: float) -> float:
    if x < 0.5:
        s = sinpi(x).real
        if 1.0 - x > 171.0:
            lg = _LOG_PI - math.log(abs(s)) - _log_gamma_real_pos(1.0 - x)
            return math.copysign(math.exp(lg), s)
        return math.pi / (s * _gamma_real(1.0 - x))
    if x > 171.62:
        raise OverflowError(f"gamma({x}) exceeds double range")
    zz = x - 1.0
    t = zz + _G + 0.5
    half = t ** (0.5 * (zz + 0.5))
    return _SQRT_2PI * _lanczos_sum(zz) * (half * math.exp(-t)) * half


def _log_gamma_real_pos(x: float) -> float:
    if x < 171.0:
        return math.log(abs(_gamma_real(x)))
    zz = x - 1.0
    t = zz + _G + 0.5
    return _HALF_LOG_2PI + (zz + 0.5) * math.log(t) - t + math.log(_lanczos_sum(zz))


def _log_gamma_right(z: complex) -> complex:
    zz = z - 1.0
    t = zz + _G + 0.5
    return _HALF_LOG_2PI + (zz + 0.5) * cmath.log(t) - t + cmath.log(_lanczos_sum(zz))


def _wrap(v: complex) -> complex:
    im = math.remainder(v.imag, 2.0 * math.pi)
    if im <= -math.pi:
        im += 2.0 * math.pi
    return complex(v.real, im)


def gamma(z) -> complex:
    """Euler gamma function of a complex argument."""
    z = _as_complex(z)
    _check_pole(z)
    if z.imag == 0.0:
        val = complex(_gamma_real(z.real))
    elif z.real < 0.5:
        val = math.pi / (sinpi(z) * gamma(1.0 - z))
    else:
        lg = _log_gamma_right(z)
        if lg.real > _MAX_EXP:
            raise OverflowError(f"|gamma({z})| exceeds double range")
        val = cmath.exp(lg)
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise OverflowError(f"gamma({z}) is not representable")
    return val


def rgamma(z) -> complex:
    """Reciprocal gamma, zero at the poles of gamma."""
    z = _as_complex(z)
    n = round(z.real)
    if n <= 0 and abs(z - n) < POLE_TOL:
        return 0j
    try:
        return 1.0 / gamma(z)
    except OverflowError:
        return 0j


def log_gamma(z) -> complex:
    """Logarithm of gamma with imaginary part reduced to ``(-pi, pi]``."""
    z = _as_complex(z)
    _check_pole(z)
    if z.imag == 0.0:
        x = z.real
        if x > 0.0:
            return complex(_log_gamma_real_pos(x))
        s = sinpi(x).real
        lg = _LOG_PI - math.log(abs(s)) - _log_gamma_real_pos(1.0 - x)
        return complex(lg, 0.0 if s > 0 else math.pi)
    if z.real >= 0.5:
        return _wrap(_log_gamma_right(z))
    return _wrap(_LOG_PI - cmath.log(sinpi(z)) - log_gamma(1.0 - z))


def _check_k(k) -> float:
    k = float(k)
    if not k > 0.0 or not math.isfinite(k):
        raise DomainError(f"k must be a positive real, got {k}")
    return k


def gamma_k(z, k) -> complex:
    """k-gamma function ``k**(z/k - 1) * gamma(z/k)``."""
    k = _check_k(k)
    if k == 1.0:
        return gamma(z)
    w = _as_complex(z) / k
    g = gamma(w)
    if w.imag == 0.0:
        val = g * math.pow(k, w.real - 1.0)
    else:
        val = g * cmath.exp((w - 1.0) * math.log(k))
    if not (math.isfinite(val.real) and math.isfinite(val.imag)):
        raise OverflowError(f"gamma_k({z}, {k}) is not representable")
    return val


def log_gamma_k(z, k) -> complex:
    """Logarithm of the k-gamma function, imaginary part in ``(-pi, pi]``."""
    k = _check_k(k)
    if k == 1.0:
        return log_gamma(z)
    w = _as_complex(z) / k
    return _wrap((w - 1.0) * math.log(k) + log_gamma(w))


def pochhammer_k(z, n: int, k) -> complex:
    """k-Pochhammer symbol ``z (z+k) ... (z+(n-1)k)``; ``k = 0`` gives ``z**n``."""
    if int(n) != n or n < 0:
        raise DomainError(f"n must be a nonnegative integer, got {n}")
    z = _as_complex(z)
    k = float(k)
    acc = 1.0 + 0j
    for i in range(int(n)):
        acc *= z + i * k
    if not (math.isfinite(acc.real) and math.isfinite(acc.imag)):
        raise OverflowError(f"pochhammer_k({z}, {n}, {k}) exceeds double range")
    return acc


def pochhammer(z, n: int) -> complex:
    """Rising factorial ``(z)_n``."""
    return pochhammer_k(z, n, 1.0)
