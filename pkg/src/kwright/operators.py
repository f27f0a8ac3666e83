"""Closed-form operator images.

Every image is a ratio of gamma functions whose arguments are ``c + rho`` for
constants ``c`` built from the operator parameters.  A power image evaluates
that ratio; a K-Wright transform turns each factor ``Gamma(c + (rho + n mu)/k)``
into ``Gamma_k(k c + rho + n mu)``, which appends the pair ``(k c + rho, mu)``
to the series parameters and leaves a factor ``k**(sum lower - sum upper)``.

Parameter values are carried exactly, so Fractions in give Fractions out and
parameter maps can be compared with ``==``.
"""

from __future__ import annotations

import cmath
import json
import math
import warnings
from dataclasses import dataclass, field, replace
from enum import Enum
from typing import Any

from .errors import ConvergenceError, DomainError, PoleError, PreconditionError
from .gamma import _as_complex, gamma, rgamma
from .series import DELTA_TOL, WrightParams, classify, convergence_data, kwright_partial_sum, kwright_sum

__all__ = [
    "COROLLARIES",
    "EKParams",
    "Kind",
    "MSMParams",
    "PowerImage",
    "PowerWeight",
    "SaigoParams",
    "Side",
    "THEOREMS",
    "TransformedWright",
    "corollary_transform",
    "dual_derivative_image",
    "evaluate_image",
    "evaluate_image_with_error",
    "power_image",
    "reduce_saigo",
    "rho_bounds",
    "simplify",
    "transform",
]

WARN_BAND = 1e-10
SIMPLIFY_TOL = 1e-14


class Side(str, Enum):
    LEFT = "left"
    RIGHT = "right"


class Kind(str, Enum):
    INTEGRAL = "integral"
    DERIVATIVE = "derivative"
    CAPUTO = "caputo"


def _re(v: Any):
    return v.real if hasattr(v, "real") else v


def _floor_plus_one(v: Any) -> int:
    return math.floor(_re(v)) + 1


@dataclass(frozen=True)
class MSMParams:
    """Parameters ``(alpha, alpha', beta, beta', gamma)`` of an MSM operator."""

    alpha: Any
    alpha_prime: Any
    beta: Any
    beta_prime: Any
    gamma: Any
    side: Side = Side.LEFT
    kind: Kind = Kind.INTEGRAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "side", Side(self.side))
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.INTEGRAL and not _re(self.gamma) > 0:
            raise PreconditionError(f"MSM integral requires Re(gamma) > 0, got gamma={self.gamma}")

    @property
    def m(self) -> int:
        return _floor_plus_one(self.gamma)

    @property
    def values(self) -> tuple:
        return (self.alpha, self.alpha_prime, self.beta, self.beta_prime, self.gamma)


@dataclass(frozen=True)
class SaigoParams:
    """Parameters ``(alpha, beta, gamma)`` of a Saigo operator."""

    alpha: Any
    beta: Any
    gamma: Any
    side: Side = Side.LEFT
    kind: Kind = Kind.INTEGRAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "side", Side(self.side))
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.INTEGRAL and not _re(self.alpha) > 0:
            raise PreconditionError(f"Saigo integral requires Re(alpha) > 0, got alpha={self.alpha}")

    @property
    def m(self) -> int:
        return _floor_plus_one(self.alpha)


@dataclass(frozen=True)
class EKParams:
    """Erdelyi-Kober operator of order ``alpha`` and weight ``gamma`` (Saigo with beta = 0)."""

    alpha: Any
    gamma: Any
    side: Side = Side.LEFT
    kind: Kind = Kind.INTEGRAL

    def __post_init__(self) -> None:
        object.__setattr__(self, "side", Side(self.side))
        object.__setattr__(self, "kind", Kind(self.kind))
        if self.kind is Kind.INTEGRAL and not _re(self.alpha) > 0:
            raise PreconditionError(f"Erdelyi-Kober integral requires Re(alpha) > 0, got alpha={self.alpha}")

    @property
    def m(self) -> int:
        return _floor_plus_one(self.alpha)

    def to_saigo(self) -> SaigoParams:
        return SaigoParams(self.alpha, 0, self.gamma, self.side, self.kind)


@dataclass(frozen=True)
class PowerWeight:
    """Weight ``t**(rho/k - 1)`` (left) or ``t**(-rho/k)`` (right) and argument ``a t**(+-mu/k)``."""

    rho: Any
    mu: Any
    a: Any = 0

    def __post_init__(self) -> None:
        mu = self.mu
        if isinstance(mu, complex) or not mu > 0:
            raise PreconditionError(f"mu must be a positive real, got {mu!r}")


@dataclass(frozen=True)
class PowerImage:
    """``coefficient * x**exponent``."""

    coefficient: complex
    exponent: Any

    def value(self, x: float) -> complex:
        return self.coefficient * _as_complex(x) ** _as_complex(self.exponent)


@dataclass(frozen=True)
class TransformedWright:
    """``k**prefactor_k_exp * x**x_exponent * Psi(params; a * x**(argument_sign * mu / k))``."""

    prefactor_k_exp: Any
    x_exponent: Any
    params: WrightParams
    argument_sign: int
    a: Any = 0
    mu: Any = 1

    @property
    def k(self):
        return self.params.k

    def to_dict(self) -> dict:
        pk = _as_complex(self.prefactor_k_exp)
        xe = _as_complex(self.x_exponent)
        a = _as_complex(self.a)
        return {
            "prefactor_k_exp": [pk.real, pk.imag],
            "x_exponent": [xe.real, xe.imag],
            "argument_sign": "+" if self.argument_sign > 0 else "-",
            "params": self.params.to_dict(),
            "a": [a.real, a.imag],
            "mu": float(self.mu),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> TransformedWright:
        try:
            pk = _decode_complex(data["prefactor_k_exp"])
            xe = _decode_complex(data["x_exponent"])
            sign = {"+": 1, "-": -1}[data["argument_sign"]]
            params = WrightParams.from_dict(data["params"])
            a = _decode_complex(data.get("a", 0.0))
            mu = float(data.get("mu", 1.0))
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError(f"malformed TransformedWright object: {exc}") from exc
        return cls(pk, xe, params, sign, a, mu)

    @classmethod
    def from_json(cls, text: str) -> TransformedWright:
        return cls.from_dict(json.loads(text))


def _decode_complex(v):
    if isinstance(v, (list, tuple)):
        re, im = (float(x) for x in v)
        return complex(re, im) if im else re
    return float(v)


# ---------------------------------------------------------------------------
# gamma-ratio tables


@dataclass(frozen=True)
class _Ratio:
    """``prod Gamma(u + rho) / prod Gamma(l + rho) * x**(x_const + sign*rho)``.

    ``bounds`` are the lower bounds of ``Re(rho)``; ``k_exp`` is the exact
    exponent of ``k`` left over by the K-Wright transform.
    """

    upper: tuple
    lower: tuple
    x_const: Any
    sign: int
    k_exp: Any
    bounds: tuple[tuple[str, Any], ...] = field(default=())


def _msm_ratio(kind: Kind, side: Side, a, ap, b, bp, g, m: int) -> _Ratio:
    if kind is Kind.INTEGRAL and side is Side.LEFT:
        return _Ratio(
            (0, -ap + bp, -a - ap - b + g),
            (bp, -a - ap + g, -ap - b + g),
            -a - ap + g - 1, 1, g,
            (("0", 0), ("Re(alpha'-beta')", ap - bp), ("Re(alpha+alpha'+beta-gamma)", a + ap + b - g)),
        )
    if kind is Kind.INTEGRAL:
        return _Ratio(
            (-b, a + ap - g, a + bp - g),
            (0, a - b, a + ap + bp - g),
            -a - ap + g, -1, g,
            (("Re(beta)", b), ("Re(-alpha-alpha'+gamma)", -a - ap + g), ("Re(-alpha-beta'+gamma)", -a - bp + g)),
        )
    if kind is Kind.DERIVATIVE and side is Side.LEFT:
        return _Ratio(
            (0, a - b, a + ap + bp - g),
            (-b, a + ap - g, a + bp - g),
            a + ap - g - 1, 1, -g,
            (("0", 0), ("Re(-alpha+beta)", -a + b), ("Re(-alpha-alpha'-beta'+gamma)", -a - ap - bp + g)),
        )
    if kind is Kind.DERIVATIVE:
        return _Ratio(
            (bp, -a - ap + g, -ap - b + g),
            (0, -ap + bp, -a - ap - b + g),
            a + ap - g, -1, -g,
            (("Re(-beta')", -bp), ("Re(alpha'+beta-gamma)", ap + b - g), ("Re(alpha+alpha'-gamma)+m", a + ap - g + m)),
        )
    if side is Side.LEFT:
        return _Ratio(
            (0, a - b - m, a + ap + bp - g - m),
            (-b - m, a + ap - g, a + bp - g - m),
            a + ap - g - 1, 1, -g,
            (("m", m), ("Re(-alpha+beta)+m", -a + b + m), ("Re(-alpha-alpha'-beta'+gamma)+m", -a - ap - bp + g + m)),
        )
    return _Ratio(
        (bp + m, -a - ap + g, -ap - b + g + m),
        (0, -ap + bp + m, -a - ap - b + g + m),
        a + ap - g, -1, -g,
        (("Re(-beta')-m", -bp - m), ("Re(alpha'+beta-gamma)-m", ap + b - g - m), ("Re(alpha+alpha'-gamma)", a + ap - g)),
    )


def _saigo_ratio(kind: Kind, side: Side, a, b, g, m: int) -> _Ratio:
    if kind is Kind.INTEGRAL and side is Side.LEFT:
        return _Ratio((0, -b + g), (-b, a + g), -b - 1, 1, a, (("0", 0), ("Re(beta-gamma)", b - g)))
    if kind is Kind.INTEGRAL:
        return _Ratio((b, g), (0, a + b + g), -b, -1, a, (("Re(-beta)", -b), ("Re(-gamma)", -g)))
    if kind is Kind.DERIVATIVE and side is Side.LEFT:
        return _Ratio((0, a + b + g), (b, g), b - 1, 1, -a, (("0", 0), ("Re(-alpha-beta-gamma)", -a - b - g)))
    if kind is Kind.DERIVATIVE:
        return _Ratio((-b, a + g), (0, -b + g), b, -1, -a, (("Re(-alpha-gamma)", -a - g), ("Re(beta)+m", b + m)))
    if side is Side.LEFT:
        return _Ratio(
            (0, a + b + g - m), (b, g - m), b - 1, 1, -a,
            (("m", m), ("Re(-alpha-beta-gamma)+m", -a - b - g + m)),
        )
    return _Ratio(
        (-b, a + g + m), (0, -b + g + m), b, -1, -a,
        (("Re(beta)", b), ("Re(-alpha-gamma)-m", -a - g - m)),
    )


def _ek_ratio(kind: Kind, side: Side, a, g, m: int) -> _Ratio:
    sign = 1 if side is Side.LEFT else -1
    xc = -1 if side is Side.LEFT else 0
    if kind is Kind.INTEGRAL:
        return _Ratio((g,), (a + g,), xc, sign, a, (("0", 0), ("Re(-gamma)", -g)))
    if kind is Kind.DERIVATIVE:
        first = ("0", 0) if side is Side.LEFT else ("m", m)
        return _Ratio((a + g,), (g,), xc, sign, -a, (first, ("Re(-alpha-gamma)", -a - g)))
    if side is Side.LEFT:
        return _Ratio((a + g - m,), (g - m,), xc, sign, -a, (("m", m), ("Re(-alpha-gamma)+m", -a - g + m)))
    return _Ratio((a + g + m,), (g + m,), xc, sign, -a, (("0", 0), ("Re(-alpha-gamma)-m", -a - g - m)))


def _ratio_of(op: MSMParams | SaigoParams | EKParams) -> _Ratio:
    if isinstance(op, MSMParams):
        return _msm_ratio(op.kind, op.side, *op.values, op.m)
    if isinstance(op, SaigoParams):
        return _saigo_ratio(op.kind, op.side, op.alpha, op.beta, op.gamma, op.m)
    if isinstance(op, EKParams):
        return _ek_ratio(op.kind, op.side, op.alpha, op.gamma, op.m)
    raise TypeError(f"unsupported operator {op!r}")


def rho_bounds(op: MSMParams | SaigoParams | EKParams) -> tuple[tuple[str, Any], ...]:
    """Named lower bounds of ``Re(rho)`` (``Re(rho/k)`` in a transform) for the image of ``op``."""
    return _ratio_of(op).bounds


def _check_bounds(label: str, value, bounds) -> None:
    """Strict ``Re(value) > bound`` for every bound; warns inside the fragile band."""
    re = float(_re(_as_complex(value)))
    for name, bound in bounds:
        b = float(_re(_as_complex(bound)))
        if not re > b:
            raise PreconditionError(f"{label}: requires {re:.17g} > {name} = {b:.17g}")
        if re - b < WARN_BAND:
            warnings.warn(f"{label}: {re:.17g} is within {WARN_BAND} of the bound {name}", RuntimeWarning, stacklevel=3)


def _gamma_ratio(upper, lower, rho) -> complex:
    num = 1.0 + 0j
    for c in upper:
        num *= gamma(_as_complex(c) + _as_complex(rho))
    den = 1.0 + 0j
    for c in lower:
        den *= rgamma(_as_complex(c) + _as_complex(rho))
    return num * den


def _image(ratio: _Ratio, rho) -> PowerImage:
    try:
        coef = _gamma_ratio(ratio.upper, ratio.lower, rho)
    except PoleError as exc:
        raise PoleError(f"power image numerator gamma has a pole: {exc}") from exc
    return PowerImage(coef, ratio.x_const + ratio.sign * rho)


def power_image(op: MSMParams | SaigoParams | EKParams, rho) -> PowerImage:
    """Image of ``t**(rho-1)`` (left operators) or ``t**(-rho)`` (right operators)."""
    if isinstance(op, EKParams):
        op = op.to_saigo()
    if isinstance(op, SaigoParams):
        op = reduce_saigo(op)
    ratio = _ratio_of(op)
    _check_bounds(f"{op.kind.value} {op.side.value} power image", rho, ratio.bounds)
    return _image(ratio, rho)


def dual_derivative_image(op: MSMParams, rho) -> PowerImage:
    """Derivative image rebuilt from the integral image by the duality substitution.

    Hypotheses come from the integral lemma with ``alpha -> -alpha'``,
    ``alpha' -> -alpha``, ``beta -> -beta'``, ``beta' -> -beta``,
    ``gamma -> -gamma + m`` and ``m`` added to ``beta`` (left) or ``beta'``
    (right); the image itself uses the same map without the shifts.
    """
    if op.kind is not Kind.DERIVATIVE:
        raise DomainError("dual_derivative_image needs a derivative operator")
    a, ap, b, bp, g = op.values
    m = op.m
    if op.side is Side.LEFT:
        hyp = _msm_ratio(Kind.INTEGRAL, Side.LEFT, -ap, -a, -bp + m, -b, -g + m, m)
    else:
        hyp = _msm_ratio(Kind.INTEGRAL, Side.RIGHT, -ap, -a, -bp, -b + m, -g + m, m)
    _check_bounds(f"dual {op.side.value} derivative image", rho, hyp.bounds)
    rhs = _msm_ratio(Kind.INTEGRAL, op.side, -ap, -a, -bp, -b, -g, m)
    return _image(rhs, rho)


def reduce_saigo(op: SaigoParams | EKParams) -> MSMParams:
    """MSM operator equal to the given Saigo (or Erdelyi-Kober) operator.

    Integrals: ``(a, b, c) -> (a + b, 0, -c, 0, a)``.  Derivatives and Caputo
    derivatives: ``(a, b, c) -> (0, a + b, 0, a + c, a)``.  The parameter the
    reduced operator does not depend on is set to 0.
    """
    if isinstance(op, EKParams):
        op = op.to_saigo()
    a, b, c = op.alpha, op.beta, op.gamma
    if op.kind is Kind.INTEGRAL:
        return MSMParams(a + b, 0, -c, 0, a, op.side, op.kind)
    return MSMParams(0, a + b, 0, a + c, a, op.side, op.kind)


def _check_series(f: WrightParams) -> None:
    data = convergence_data(f)
    if not data.delta_cap > -1.0 + DELTA_TOL:
        raise ConvergenceError(f"the transformed series needs Delta > -1, got Delta = {data.delta_cap:.17g}")


def _build(ratio: _Ratio, w: PowerWeight, f: WrightParams, label: str) -> TransformedWright:
    k = f.k
    _check_bounds(label, w.rho / k, ratio.bounds)
    _check_series(f)
    upper = tuple(f.upper) + tuple((k * c + w.rho, w.mu) for c in ratio.upper)
    lower = tuple(f.lower) + tuple((k * c + w.rho, w.mu) for c in ratio.lower)
    x_exp = ratio.x_const + ratio.sign * (w.rho / k)
    return TransformedWright(ratio.k_exp, x_exp, WrightParams(k, upper, lower), ratio.sign, w.a, w.mu)


def transform(op: MSMParams, w: PowerWeight, f: WrightParams) -> TransformedWright:
    """Closed-form image of ``t**(rho/k-1) Psi(a t**(mu/k))`` (left) or ``t**(-rho/k) Psi(a t**(-mu/k))`` (right)."""
    if not isinstance(op, MSMParams):
        raise TypeError("transform expects MSMParams; use corollary_transform for Saigo or Erdelyi-Kober operators")
    name = THEOREM_OF[(op.kind, op.side)]
    return _build(_ratio_of(op), w, f, f"theorem {name} hypothesis Re(rho/k)")


def corollary_transform(op: SaigoParams | EKParams, w: PowerWeight, f: WrightParams) -> TransformedWright:
    """Closed-form image under a Saigo (order 2 map) or Erdelyi-Kober (order 1 map) operator."""
    family = "ek" if isinstance(op, EKParams) else "saigo"
    if not isinstance(op, (SaigoParams, EKParams)):
        raise TypeError("corollary_transform expects SaigoParams or EKParams")
    name = COROLLARY_OF[(family, op.kind, op.side)]
    return _build(_ratio_of(op), w, f, f"corollary {name} hypothesis Re(rho/k)")


def simplify(t: TransformedWright, tol: float = SIMPLIFY_TOL) -> TransformedWright:
    """Cancel upper/lower pairs whose values and steps agree to ``tol``."""
    upper = list(t.params.upper)
    lower = list(t.params.lower)
    i = 0
    while i < len(upper):
        u, us = upper[i]
        for j, (l, ls) in enumerate(lower):
            if abs(_as_complex(u) - _as_complex(l)) <= tol and abs(float(us) - float(ls)) <= tol:
                del upper[i]
                del lower[j]
                break
        else:
            i += 1
    return replace(t, params=WrightParams(t.params.k, tuple(upper), tuple(lower)))


def _prefactor(t: TransformedWright, x: float) -> complex:
    if not x > 0:
        raise DomainError(f"x must be positive, got {x}")
    log_k = math.log(float(t.k))
    return cmath.exp(_as_complex(t.prefactor_k_exp) * log_k + _as_complex(t.x_exponent) * math.log(x))


def image_argument(t: TransformedWright, x: float) -> complex:
    return _as_complex(t.a) * x ** (t.argument_sign * float(t.mu) / float(t.k))


def evaluate_image(t: TransformedWright, x: float, tol: float = 1e-12, n_terms: int | None = None) -> complex:
    """Numeric value of a transform at ``x``; ``n_terms`` truncates the series after that index."""
    pre = _prefactor(t, x)
    z = image_argument(t, x)
    if n_terms is not None:
        return pre * kwright_partial_sum(t.params, z, n_terms)
    verdict = classify(t.params, z)
    if not verdict.convergent:
        raise DomainError(f"image series does not converge at {z}: {verdict.describe()}")
    return pre * kwright_sum(t.params, z, tol)[0]


def evaluate_image_with_error(t: TransformedWright, x: float, tol: float = 1e-12) -> tuple[complex, float]:
    """``evaluate_image`` together with the absolute series-tail bound."""
    pre = _prefactor(t, x)
    z = image_argument(t, x)
    verdict = classify(t.params, z)
    if not verdict.convergent:
        raise DomainError(f"image series does not converge at {z}: {verdict.describe()}")
    value, err = kwright_sum(t.params, z, tol)
    return pre * value, abs(pre) * err


THEOREMS: dict[str, tuple[Kind, Side]] = {
    "3.1": (Kind.INTEGRAL, Side.LEFT),
    "3.2": (Kind.INTEGRAL, Side.RIGHT),
    "4.1": (Kind.DERIVATIVE, Side.LEFT),
    "4.2": (Kind.DERIVATIVE, Side.RIGHT),
    "5.1": (Kind.CAPUTO, Side.LEFT),
    "5.2": (Kind.CAPUTO, Side.RIGHT),
}
THEOREM_OF = {v: k for k, v in THEOREMS.items()}

COROLLARIES: dict[str, tuple[str, Kind, Side]] = {
    "3.1": ("saigo", Kind.INTEGRAL, Side.LEFT),
    "3.3": ("ek", Kind.INTEGRAL, Side.LEFT),
    "3.4": ("saigo", Kind.INTEGRAL, Side.RIGHT),
    "3.6": ("ek", Kind.INTEGRAL, Side.RIGHT),
    "4.1": ("saigo", Kind.DERIVATIVE, Side.LEFT),
    "4.3": ("ek", Kind.DERIVATIVE, Side.LEFT),
    "4.4": ("saigo", Kind.DERIVATIVE, Side.RIGHT),
    "4.6": ("ek", Kind.DERIVATIVE, Side.RIGHT),
    "5.1": ("saigo", Kind.CAPUTO, Side.LEFT),
    "5.3": ("ek", Kind.CAPUTO, Side.LEFT),
    "5.4": ("saigo", Kind.CAPUTO, Side.RIGHT),
    "5.6": ("ek", Kind.CAPUTO, Side.RIGHT),
}
COROLLARY_OF = {v: k for k, v in COROLLARIES.items()}
