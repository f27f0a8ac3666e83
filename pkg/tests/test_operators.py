from __future__ import annotations

import math
import warnings
from collections import Counter
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from pytest import mark, raises

from kwright.errors import ConvergenceError, PoleError, PreconditionError
from kwright.gamma import gamma
from kwright.operators import (
    EKParams,
    Kind,
    MSMParams,
    PowerWeight,
    SaigoParams,
    Side,
    TransformedWright,
    corollary_transform,
    dual_derivative_image,
    evaluate_image,
    power_image,
    reduce_saigo,
    rho_bounds,
    simplify,
    transform,
)
from kwright.series import WrightParams, kwright_partial_sum

# quadrature of the defining integral of t**1 at x = 1 (oracle, tol 1e-13)
C_PINNED = 0.511067286780864
# quadrature of the truncated operand (N = 40) for the theorem-level example
W_PINNED = 0.688981969292906

SCALARS = (0.5, 0.3, 0.2, 0.1, 1.2)
EMPTY = WrightParams(1)
L, R = Side.LEFT, Side.RIGHT
I, D, C = Kind.INTEGRAL, Kind.DERIVATIVE, Kind.CAPUTO


def rel(a, b):
    return abs(a - b) / abs(b)


def pairs(t: TransformedWright, n: int):
    """Appended pairs as rounded tuples."""
    up = [(round(complex(v).real, 12), float(s)) for v, s in t.params.upper[-n:]]
    lo = [(round(complex(v).real, 12), float(s)) for v, s in t.params.lower[-n:]]
    return up, lo


# ---------------------------------------------------------------------------
# power images


def test_rl_collapse_integral():
    img = power_image(MSMParams(0, 0, 0, 0, 0.5), 1)
    assert img.coefficient == pytest.approx(1.1283791670955126, rel=1e-14)
    assert img.exponent == pytest.approx(0.5)


def test_rl_collapse_derivative():
    img = power_image(MSMParams(0, 0, 0, 0, 0.5, L, D), 2)
    assert img.coefficient == pytest.approx(1.1283791670955126, rel=1e-14)
    assert img.exponent == pytest.approx(0.5)


def test_lemma_coefficient_pinned():
    img = power_image(MSMParams(*SCALARS), 2)
    assert rel(img.coefficient, C_PINNED) < 1e-13
    assert img.exponent == pytest.approx(1.4)


@mark.parametrize(
    "op, rho",
    [
        (MSMParams(*SCALARS, L, I), 0.05),
        (MSMParams(*SCALARS, R, I), 0.2),
        (MSMParams(*SCALARS, L, D), 0.25),
        (MSMParams(*SCALARS, R, C), -0.5),
        (SaigoParams(0.5, 0.4, 0.2, L, I), 0.1),
        (EKParams(0.5, -0.7, L, I), 0.6),
    ],
)
def test_precondition_violations(op, rho):
    with raises(PreconditionError):
        power_image(op, rho)


def test_precondition_message_names_inequality():
    with raises(PreconditionError, match=r"Re\(alpha\+alpha'\+beta-gamma\)"):
        power_image(MSMParams(0.5, 0.3, 1.5, 0.1, 1.2), 0.9)


def test_warning_band():
    op = MSMParams(0.5, 0.1, 0.2, 0.3, 1.2, L, I)
    with pytest.warns(RuntimeWarning):
        power_image(op, 1e-11)


def test_denominator_pole_gives_zero():
    # Gamma(rho + beta') in the denominator at a pole
    img = power_image(MSMParams(0.5, -0.5, 0.2, -3.0, 1.2), 3.0)
    assert img.coefficient == 0


def test_numerator_pole_is_an_error():
    # rho = 0.3 clears the bound 0.3 only by rounding; Gamma(rho - 0.3) is then at its pole
    with pytest.warns(RuntimeWarning), raises(PoleError):
        power_image(MSMParams(*SCALARS, L, D), 0.3)


def test_integral_needs_positive_gamma():
    with raises(PreconditionError):
        MSMParams(0.1, 0.1, 0.1, 0.1, 0.0)


@mark.parametrize("g, m", [(0.5, 1), (1.0, 2), (1.2, 2), (2.999, 3), (-0.5, 0)])
def test_order_m(g, m):
    assert MSMParams(0, 0, 0, 0, g, L, D).m == m


@given(st.integers(min_value=0, max_value=2**31))
@settings(max_examples=20, deadline=None)
def test_duality_reproduces_derivative_images(seed):
    rng = np.random.default_rng(seed)
    a, ap, b, bp = rng.uniform(-0.5, 0.5, 4)
    g = rng.integers(0, 2) + rng.uniform(0.1, 0.9)
    for side in (L, R):
        op = MSMParams(a, ap, b, bp, g, side, D)
        rho = max(float(v) for _, v in rho_bounds(op)) + 0.05 + rng.uniform(0, 1.5)
        assert rel(dual_derivative_image(op, rho).coefficient, power_image(op, rho).coefficient) < 1e-10


def _falling(e, m):
    out = 1.0
    for j in range(m):
        out *= e - j
    return out


@mark.parametrize("values", [(0.37, -0.21, 0.44, 0.13, 1.61), (-0.3, 0.45, 0.2, -0.15, 0.6)])
@mark.parametrize("side", [L, R])
def test_derivative_is_differentiated_inner_image(values, side):
    a, ap, b, bp, g = values
    op = MSMParams(a, ap, b, bp, g, side, D)
    m = op.m
    if side is L:
        inner = MSMParams(-ap, -a, -bp + m, -b, -g + m, side, I)
    else:
        inner = MSMParams(-ap, -a, -bp, -b + m, -g + m, side, I)
    rho = max(float(v) for _, v in rho_bounds(op)) + max(float(v) for _, v in rho_bounds(inner)) + 0.7
    img = power_image(inner, rho)
    sign = 1 if side is L else (-1) ** m
    # d^m/dx^m of c x**e
    expected = sign * img.coefficient * _falling(complex(img.exponent).real, m)
    assert rel(power_image(op, rho).coefficient, expected) < 1e-10
    assert power_image(op, rho).exponent == pytest.approx(complex(img.exponent).real - m)


@mark.parametrize("values", [(0.37, -0.21, 0.44, 0.13, 1.61), (-0.3, 0.45, 0.2, -0.15, 0.6)])
def test_caputo_factorisation(values):
    a, ap, b, bp, g = values
    op = MSMParams(a, ap, b, bp, g, L, C)
    m = op.m
    inner = MSMParams(-ap, -a, -bp + m, -b, -g + m, L, I)
    rho = 5.3
    expected = gamma(rho) / gamma(rho - m) * power_image(inner, rho - m).coefficient
    assert rel(power_image(op, rho).coefficient, expected) < 1e-10


# ---------------------------------------------------------------------------
# theorems


def test_theorem_31_example():
    t = transform(MSMParams(*SCALARS, L, I), PowerWeight(2, 1), EMPTY)
    up, lo = pairs(t, 3)
    assert up == [(2.0, 1.0), (1.8, 1.0), (2.2, 1.0)]
    assert lo == [(2.1, 1.0), (2.4, 1.0), (2.7, 1.0)]
    assert complex(t.x_exponent).real == pytest.approx(1.4)
    assert t.prefactor_k_exp == pytest.approx(1.2)


def test_theorem_41_example():
    # pairs from the derivative image with the same scalars
    t = transform(MSMParams(*SCALARS, L, D), PowerWeight(2, 1), EMPTY)
    up, lo = pairs(t, 3)
    assert up == [(2.0, 1.0), (2.3, 1.0), (1.7, 1.0)]
    assert lo == [(1.8, 1.0), (1.6, 1.0), (1.4, 1.0)]
    assert complex(t.x_exponent).real == pytest.approx(0.6)
    assert t.prefactor_k_exp == pytest.approx(-1.2)


def test_theorem_51_rejects_rho_two():
    with raises(PreconditionError, match="m"):
        transform(MSMParams(*SCALARS, L, C), PowerWeight(2, 1), EMPTY)


def test_theorem_51_example():
    t = transform(MSMParams(*SCALARS, L, C), PowerWeight(4, 1), EMPTY)
    up, lo = pairs(t, 3)
    assert up == [(4.0, 1.0), (2.3, 1.0), (1.7, 1.0)]
    # first lower pair is (-k beta + rho - k m, mu)
    assert lo == [(1.8, 1.0), (3.6, 1.0), (1.4, 1.0)]
    assert complex(t.x_exponent).real == pytest.approx(2.6)


def test_full_theorem_example_pinned():
    t = transform(MSMParams(*SCALARS), PowerWeight(2, 1, 0.5), EMPTY)
    assert rel(evaluate_image(t, 1.0), W_PINNED) < 1e-12


def test_identity_composition():
    g, rho = 0.7, 1.6
    t = transform(MSMParams(0, 0, 0, 0, g), PowerWeight(rho, 1), EMPTY)
    assert rel(evaluate_image(t, 1.0), gamma(rho) / gamma(g + rho)) < 1e-13


def test_x_scaling_without_argument():
    t = transform(MSMParams(*SCALARS), PowerWeight(2, 1), WrightParams(1, ((1, 1),), ((2, 1),)))
    e = complex(t.x_exponent).real
    assert rel(evaluate_image(t, 2.0), evaluate_image(t, 1.0) * 2**e) < 1e-13


def test_x_scaling_breaks_with_argument():
    t = transform(MSMParams(*SCALARS), PowerWeight(2, 1, 0.5), EMPTY)
    e = complex(t.x_exponent).real
    assert rel(evaluate_image(t, 2.0), evaluate_image(t, 1.0) * 2**e) > 1e-6


_KINDS = [(I, 1.2, 1), (D, 1.2, -1), (C, 1.2, -1)]


@mark.parametrize("kind, g, sign", _KINDS)
@mark.parametrize("side", [L, R])
@mark.parametrize("k", [1.0, 2.5])
def test_prefactor_and_order_laws(kind, g, sign, side, k):
    op = MSMParams(0.5, 0.3, 0.2, 0.1, g, side, kind)
    rho = k * (max(float(v) for _, v in rho_bounds(op)) + 0.5)
    f = WrightParams(k, ((1, 1),), ((2, 1),))
    t = transform(op, PowerWeight(rho, 1.5), f)
    assert t.prefactor_k_exp == pytest.approx(sign * g)
    assert t.params.p - f.p == t.params.q - f.q == 3
    assert all(s == 1.5 for _, s in t.params.upper[1:] + t.params.lower[1:])
    assert t.argument_sign == (1 if side is L else -1)


def test_operand_must_satisfy_delta():
    f = WrightParams(1, ((1, 1), (1, 1)), ())
    with raises(ConvergenceError):
        transform(MSMParams(*SCALARS), PowerWeight(2, 1), f)


def test_transform_evaluates_termwise():
    f = WrightParams(2, ((1, 1),), ((2, 1),))
    op = MSMParams(*SCALARS, R, I)
    w = PowerWeight(6.0, 1, 0.5)
    t = transform(op, w, f)
    # term n of the operand is a monomial with rho -> rho + n mu
    total = 0
    for n in range(6):
        coef = kwright_partial_sum(f, 1.0, n) - (kwright_partial_sum(f, 1.0, n - 1) if n else 0)
        img = power_image(op, (6.0 + n) / 2)
        total += coef * 0.5**n * img.value(1.3)
    assert rel(evaluate_image(t, 1.3, n_terms=5), total) < 1e-12


def test_json_round_trip():
    t = transform(MSMParams(*SCALARS, R, D), PowerWeight(8.0, 1.5, 0.25 + 0.1j), WrightParams(2, ((1, 1),), ()))
    again = TransformedWright.from_json(t.to_json())
    assert again.to_dict() == t.to_dict()
    assert evaluate_image(again, 1.7) == evaluate_image(t, 1.7)


def test_json_shape():
    d = transform(MSMParams(*SCALARS), PowerWeight(2, 1), EMPTY).to_dict()
    assert d["argument_sign"] == "+"
    assert d["x_exponent"] == pytest.approx([1.4, 0.0])
    assert set(d) >= {"prefactor_k_exp", "x_exponent", "argument_sign", "params"}


# ---------------------------------------------------------------------------
# corollaries and reductions


def test_corollary_31_riemann_liouville():
    alpha, rho = 0.7, 1
    t = simplify(corollary_transform(SaigoParams(alpha, -alpha, 0.4), PowerWeight(rho, 1), EMPTY))
    assert rel(evaluate_image(t, 1.0), gamma(rho) / gamma(rho + alpha)) < 1e-13
    assert complex(t.x_exponent).real == pytest.approx(rho + alpha - 1)


def test_corollary_33_example():
    t = corollary_transform(EKParams(1, 0.5), PowerWeight(2, 1), WrightParams(2))
    assert t.prefactor_k_exp == 1
    up, lo = pairs(t, 1)
    assert up == [(3.0, 1.0)] and lo == [(5.0, 1.0)]
    assert complex(t.x_exponent).real == pytest.approx(0.0)


def test_corollary_51_example():
    t = corollary_transform(SaigoParams(0.5, 0.1, 0.3, L, C), PowerWeight(2, 1), EMPTY)
    up, lo = pairs(t, 2)
    assert up == [(2.0, 1.0), (1.9, 1.0)]
    assert lo == [(2.1, 1.0), (1.3, 1.0)]


@mark.parametrize("kind", [I, D, C])
@mark.parametrize("side", [L, R])
def test_corollary_orders(kind, side):
    w = PowerWeight(6, 1)
    assert corollary_transform(SaigoParams(0.6, 0.2, 0.3, side, kind), w, EMPTY).params.p == 2
    assert corollary_transform(EKParams(0.6, 0.3, side, kind), w, EMPTY).params.p == 1


def test_reduce_saigo_examples():
    assert reduce_saigo(SaigoParams(0.6, 0.2, 0.3)).values == pytest.approx((0.8, 0, -0.3, 0, 0.6))
    assert reduce_saigo(EKParams(0.6, 0.3)).values == pytest.approx((0.6, 0, -0.3, 0, 0.6))
    assert reduce_saigo(SaigoParams(0.6, 0.2, 0.3, L, D)).values == pytest.approx((0, 0.8, 0, 0.9, 0.6))


@given(st.integers(min_value=0, max_value=2**31))
@settings(max_examples=10, deadline=None)
def test_reduce_saigo_round_trip(seed):
    rng = np.random.default_rng(seed)
    a, b, bp = rng.uniform(-0.5, 0.5, 3)
    g = rng.uniform(0.2, 1.8)
    msm = MSMParams(a, 0, b, bp, g)
    saigo = SaigoParams(g, a - g, -b)
    back = reduce_saigo(saigo)
    assert back.values[:3] == pytest.approx((a, 0, b)) and back.gamma == pytest.approx(g)
    rho = max(float(v) for _, v in rho_bounds(msm)) + 0.3
    assert rel(power_image(saigo, rho).coefficient, power_image(msm, rho).coefficient) < 1e-12


def _multiset(t: TransformedWright):
    return Counter(t.params.upper), Counter(t.params.lower)


@mark.parametrize("side", [L, R])
def test_theorem_corollary_consistency_integral(side):
    a, b, bp, g = Fraction(1, 2), Fraction(1, 5), Fraction(1, 10), Fraction(6, 5)
    w = PowerWeight(Fraction(4), 1)
    thm = simplify(transform(MSMParams(a, 0, b, bp, g, side, I), w, EMPTY))
    cor = simplify(corollary_transform(SaigoParams(g, a - g, -b, side, I), w, EMPTY))
    assert _multiset(thm) == _multiset(cor)
    assert thm.x_exponent == cor.x_exponent and thm.prefactor_k_exp == cor.prefactor_k_exp


@mark.parametrize("kind", [D, C])
@mark.parametrize("side", [L, R])
def test_theorem_corollary_consistency_derivative(kind, side):
    # Saigo (a, b, c) derivatives embed as MSM (0, a+b, 0, a+c, a)
    a, b, c = Fraction(13, 10), Fraction(1, 5), Fraction(-1, 10)
    w = PowerWeight(Fraction(7), 1)
    thm = simplify(transform(MSMParams(0, a + b, 0, a + c, a, side, kind), w, EMPTY))
    cor = simplify(corollary_transform(SaigoParams(a, b, c, side, kind), w, EMPTY))
    assert _multiset(thm) == _multiset(cor)
    assert thm.x_exponent == cor.x_exponent


def test_parameters_stay_exact():
    t = transform(MSMParams(Fraction(1, 2), Fraction(1, 3), 0, 0, Fraction(5, 4)), PowerWeight(Fraction(3), 1), EMPTY)
    assert all(isinstance(v, Fraction) for v, _ in t.params.upper)
    assert t.x_exponent == Fraction(5, 4) - Fraction(1, 2) - Fraction(1, 3) + 3 - 1


def test_simplify_is_opt_in():
    t = transform(MSMParams(0.5, 0, 0.2, 0.1, 1.2), PowerWeight(2, 1), EMPTY)
    assert t.params.p == 3
    assert simplify(t).params.p == 2
    assert rel(evaluate_image(simplify(t), 1.0), evaluate_image(t, 1.0)) < 1e-14


def test_transform_rejects_saigo():
    with raises(TypeError):
        transform(SaigoParams(0.5, 0.1, 0.2), PowerWeight(2, 1), EMPTY)


@mark.parametrize("mu", [0, -1, 1j])
def test_weight_needs_positive_mu(mu):
    with raises(PreconditionError):
        PowerWeight(1, mu)
