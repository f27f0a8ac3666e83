"""Acceptance criteria, each at its stated tolerance.

Every test records a verdict through the ``acceptance`` fixture; the terminal
summary prints one PASS/FAIL line per criterion.
"""

from __future__ import annotations

import cmath
import time
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from pytest import mark

from kwright.errors import DomainError
from kwright.gamma import gamma, gamma_k
from kwright.hypergeometric import AppellF3Params, Gauss2F1Params, appell_f3, gauss_2f1
from kwright.operators import (
    THEOREMS,
    EKParams,
    Kind,
    MSMParams,
    PowerWeight,
    SaigoParams,
    Side,
    corollary_transform,
    dual_derivative_image,
    evaluate_image,
    power_image,
    simplify,
    transform,
)
from kwright.series import WrightParams, classify, convergence_data, eval_kwright
from kwright.validation import check_power_image, draw_operator, draw_rho, theorem_case

L, R = Side.LEFT, Side.RIGHT
I, D, C = Kind.INTEGRAL, Kind.DERIVATIVE, Kind.CAPUTO
XS = (0.5, 1.0, 2.0)
DRAWS = 20
SEED = 20240601


def rel(a, b):
    return abs(a - b) / abs(b)


def _power_image_sweep(kind, side, tol):
    rng = np.random.default_rng([SEED, list(Kind).index(kind), list(Side).index(side)])
    worst = 0.0
    for _ in range(DRAWS):
        op = draw_operator(rng, "msm", kind, side)
        rho = draw_rho(rng, op)
        worst = max(worst, check_power_image(op, rho, XS))
    return worst


# ---------------------------------------------------------------------------
# 1. power images of the integral operators


def test_1_integral_power_images(acceptance):
    start = time.perf_counter()
    worst = max(_power_image_sweep(I, side, 1e-8) for side in (L, R))
    elapsed = time.perf_counter() - start
    ok = acceptance.record("1", worst < 1e-8 and elapsed < 60, f"integral power images: max rel {worst:.2e}, {elapsed:.1f} s")
    assert ok


# ---------------------------------------------------------------------------
# 2. power images of the derivatives


@mark.parametrize("side", [L, R])
def test_2_derivative_power_images(acceptance, side):
    worst = _power_image_sweep(D, side, 1e-4)
    assert acceptance.record("2", worst < 1e-4, f"{side.value} derivative, finite differences: max rel {worst:.2e}")


@mark.parametrize("side", [L, R])
def test_2_caputo_power_images(acceptance, side):
    worst = _power_image_sweep(C, side, 1e-8)
    assert acceptance.record("2", worst < 1e-8, f"{side.value} Caputo, exact derivative: max rel {worst:.2e}")


# ---------------------------------------------------------------------------
# 3. theorem-level transforms against the truncated-operand quadrature


@mark.parametrize("theorem", list(THEOREMS))
def test_3_theorems(acceptance, theorem):
    kind, side = THEOREMS[theorem]
    tol = 1e-4 if kind is D else 1e-6
    rng = np.random.default_rng([SEED, int(theorem.replace(".", ""))])
    start = time.perf_counter()
    worst = 0.0
    for operand in (False, True):
        for k in (1.0, 2.0):
            for a in (0.0, 0.5):
                op = draw_operator(rng, "msm", kind, side)
                rho = draw_rho(rng, op, k)
                worst = max(worst, theorem_case(theorem, op, k, rho, a, operand, x=1.0, n_terms=8).rel_error)
    elapsed = time.perf_counter() - start
    assert acceptance.record("3", worst < tol, f"theorem {theorem}: max rel {worst:.2e} (tol {tol:.0e}), {elapsed:.1f} s")


# ---------------------------------------------------------------------------
# 4. reduction chain

F = Fraction
OPERAND = WrightParams(2, ((1, 1),), ((2, 1),))
EMPTY = WrightParams(1)
X4 = 1.3


def _lists(t):
    return sorted(t.params.upper), sorted(t.params.lower), t.x_exponent, t.prefactor_k_exp


def _same(t1, t2):
    """Exact list equality after simplification plus value agreement."""
    s1, s2 = simplify(t1, 0), simplify(t2, 0)
    exact = _lists(s1) == _lists(s2)
    gap = rel(evaluate_image(t1, X4), evaluate_image(t2, X4))
    return exact, gap


# exact (Fraction) parameters: a Saigo order, its beta and gamma, and a spare MSM value
SA, SB, SC, SPARE = F(13, 10), F(1, 5), F(-1, 10), F(3, 10)


def _msm_for_saigo(kind, side):
    """MSM operator whose kernel no longer sees the spare parameter."""
    if kind is I:
        # alpha' = 0 frees beta'
        return MSMParams(SA + SB, 0, -SC, SPARE, SA, side, kind)
    # alpha = 0 frees beta
    return MSMParams(0, SA + SB, SPARE, SA + SC, SA, side, kind)


@mark.parametrize("kind", [I, D, C])
@mark.parametrize("side", [L, R])
def test_4_theorem_to_saigo(acceptance, kind, side):
    w = PowerWeight(F(9), 1, F(1, 2))
    thm = transform(_msm_for_saigo(kind, side), w, OPERAND)
    cor = corollary_transform(SaigoParams(SA, SB, SC, side, kind), w, OPERAND)
    exact, gap = _same(thm, cor)
    ok = exact and gap < 1e-10
    assert acceptance.record("4", ok, f"{kind.value} {side.value} theorem -> Saigo: lists equal {exact}, rel {gap:.1e}")


@mark.parametrize("kind", [I, D, C])
@mark.parametrize("side", [L, R])
def test_4_saigo_to_erdelyi_kober(acceptance, kind, side):
    w = PowerWeight(F(9), 1, F(1, 2))
    saigo = corollary_transform(SaigoParams(SA, 0, SC, side, kind), w, OPERAND)
    ek = corollary_transform(EKParams(SA, SC, side, kind), w, OPERAND)
    exact, gap = _same(saigo, ek)
    ok = exact and gap < 1e-10
    assert acceptance.record("4", ok, f"{kind.value} {side.value} Saigo(beta=0) -> EK: lists equal {exact}, rel {gap:.1e}")


def _rl_image(kind, side, a, rho):
    """Riemann-Liouville images of t**(rho-1) (left) and t**(-rho) (right)."""
    if kind is I:
        return (gamma(rho) / gamma(rho + a), rho + a - 1) if side is L else (gamma(rho - a) / gamma(rho), a - rho)
    return (gamma(rho) / gamma(rho - a), rho - a - 1) if side is L else (gamma(rho + a) / gamma(rho), -rho - a)


@mark.parametrize("kind", [I, D, C])
@mark.parametrize("side", [L, R])
@mark.parametrize("order", [F(1, 2), F(13, 10)])
def test_4_saigo_to_riemann_liouville(acceptance, kind, side, order):
    rho = F(7, 2)
    t = corollary_transform(SaigoParams(order, -order, SC, side, kind), PowerWeight(rho, 1), EMPTY)
    s = simplify(t, 0)
    coeff, x_exp = _rl_image(kind, side, float(order), float(rho))
    exact = s.params.p == 1 and s.params.q == 1 and s.x_exponent == F(x_exp).limit_denominator(10**6)
    gap = rel(evaluate_image(t, X4), coeff * X4**x_exp)
    ok = exact and gap < 1e-10
    assert acceptance.record("4", ok, f"{kind.value} {side.value} Saigo(beta=-alpha={order}) -> RL: one pair each {exact}, rel {gap:.1e}")


# ---------------------------------------------------------------------------
# 5. special-function identities

GRID5 = [-0.5, -0.25, 0.0, 0.25, 0.5]


@pytest.mark.xfail(strict=True, reason="the F3 -> 2F1 reduction without the factor (1-y)**(alpha+beta-gamma) does not hold off y = 0")
def test_5_appell_gauss_without_factor(acceptance):
    a, b, g = 0.7, -0.45, 1.6
    worst = max(
        rel(appell_f3(AppellF3Params(a, g - a, b, g - b, g), x, y), gauss_2f1(Gauss2F1Params(a, b, g), x + y - x * y))
        for x in GRID5
        for y in GRID5
    )
    assert acceptance.record("5", worst < 1e-10, f"F3 -> 2F1 reduction without (1-y) factor: max rel {worst:.2e}")


def test_5_appell_gauss_corrected(acceptance):
    a, b, g = 0.7, -0.45, 1.6
    worst = max(
        rel(
            appell_f3(AppellF3Params(a, g - a, b, g - b, g), x, y),
            (1 - y) ** (a + b - g) * gauss_2f1(Gauss2F1Params(a, b, g), x + y - x * y),
        )
        for x in GRID5
        for y in GRID5
    )
    assert acceptance.record("5", worst < 1e-10, f"F3 -> 2F1 reduction with (1-y)**(a+b-g): max rel {worst:.2e} (supplementary)")


def _complex_grid(n=50, seed=SEED):
    rng = np.random.default_rng(seed)
    return [complex(x, y) for x, y in zip(rng.uniform(0.3, 4.0, n), rng.uniform(-3.0, 3.0, n))], rng.uniform(0.5, 3.0, n)


def _gamma_k_integral(z, k):
    """Integral form of Gamma_k: exact series on (0, 1), quadrature on (1, inf)."""
    z = mpmath.mpc(z)
    head = mpmath.nsum(lambda n: (-1 / mpmath.mpf(k)) ** n / mpmath.factorial(n) / (z + k * n), [0, mpmath.inf])
    tail = mpmath.quad(lambda t: t ** (z - 1) * mpmath.exp(-(t**k) / k), [1, 10, 100, mpmath.inf])
    return complex(head + tail)


def test_5_gamma_k(acceptance):
    zs, ks = _complex_grid()
    worst_rec = worst_int = 0.0
    with mpmath.workdps(30):
        for z, k in zip(zs, ks):
            k = float(k)
            g = gamma_k(z, k)
            worst_rec = max(worst_rec, rel(gamma_k(z + k, k), z * g))
            worst_int = max(worst_int, rel(g, _gamma_k_integral(z, k)))
    ok = worst_rec < 1e-12 and worst_int < 1e-12
    assert acceptance.record("5", ok, f"Gamma_k recurrence {worst_rec:.1e}, integral form {worst_int:.1e} on 50 points")


def _disk(radius, n=200):
    rng = np.random.default_rng(SEED)
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    th = rng.uniform(0, 2 * np.pi, n)
    return [complex(v) for v in r * np.exp(1j * th)] + [complex(radius), complex(-radius), complex(0, radius)]


@mark.parametrize("k", [0.5, 1.0, 3.7])
def test_5_exponential(acceptance, k):
    # |z| <= 3 keeps the cancellation factor exp(|z| - Re z) below exp(6)
    worst = max(rel(eval_kwright(WrightParams(k), z), cmath.exp(z)) for z in _disk(3.0))
    assert acceptance.record("5", worst < 1e-12, f"0Psi0^k = exp on |z|<=3, k={k}: max rel {worst:.1e}")


@mark.parametrize("k", [0.5, 1.0, 3.7])
def test_5_exponential_conditioning(k):
    # farther out the error tracks the condition number of the alternating sum
    for z in _disk(7.0):
        bound = 1e-14 * cmath.exp(abs(z) - z.real).real
        assert rel(eval_kwright(WrightParams(k), z), cmath.exp(z)) <= max(bound, 1e-14)


# ---------------------------------------------------------------------------
# 6. convergence classifier on the geometric series

GEOMETRIC = WrightParams(1, ((1, 1),), ())


def test_6_classifier(acceptance):
    d = convergence_data(GEOMETRIC)
    data_ok = d.delta_cap == -1 and d.delta_radius == 1 and d.mu.real == -0.5
    rng = np.random.default_rng(SEED)
    zs = [0.9 * r * cmath.exp(1j * th) for r, th in zip(np.sqrt(rng.uniform(0, 1, 50)), rng.uniform(0, 2 * np.pi, 50))]
    zs += [0.9, -0.9, 0.9j, 0.0]
    worst = max(abs(eval_kwright(GEOMETRIC, z) - 1 / (1 - z)) / abs(1 / (1 - z)) for z in zs)
    refused = 0
    for z in (1.0, -1.0, 1j, 1.5, 3 - 4j):
        assert not classify(GEOMETRIC, z).convergent
        with pytest.raises(DomainError):
            eval_kwright(GEOMETRIC, z)
        refused += 1
    ok = data_ok and worst < 1e-10 and refused == 5
    assert acceptance.record("6", ok, f"Delta/delta/mu {data_ok}, 1/(1-z) max rel {worst:.1e}, refusals {refused}/5")


# ---------------------------------------------------------------------------
# 7. duality between integral and derivative images


def test_7_duality(acceptance):
    rng = np.random.default_rng(SEED)
    worst = 0.0
    for i in range(20):
        side = (L, R)[i % 2]
        op = draw_operator(rng, "msm", D, side)
        rho = draw_rho(rng, op) + 0.5
        x = float(rng.uniform(0.3, 3.0))
        worst = max(worst, rel(dual_derivative_image(op, rho).value(x), power_image(op, rho).value(x)))
    assert acceptance.record("7", worst < 1e-10, f"duality at 20 random points: max rel {worst:.1e}")
