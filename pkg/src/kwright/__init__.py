"""Generalized K-Wright functions under Marichev-Saigo-Maeda fractional operators."""

from __future__ import annotations

from .errors import (
    ConvergenceError,
    DomainError,
    KWrightError,
    MissingDerivativeError,
    NonConvergenceError,
    OverflowError,
    PoleError,
    PreconditionError,
    StepCollapseError,
)
from .gamma import gamma, gamma_k, log_gamma, log_gamma_k, pochhammer, pochhammer_k, rgamma
from .hypergeometric import AppellF3Params, Gauss2F1Params, appell_f3, gauss_2f1, hyp2f1
from .operators import (
    COROLLARIES,
    THEOREMS,
    EKParams,
    Kind,
    MSMParams,
    PowerImage,
    PowerWeight,
    SaigoParams,
    Side,
    TransformedWright,
    corollary_transform,
    dual_derivative_image,
    evaluate_image,
    power_image,
    reduce_saigo,
    simplify,
    transform,
)
from .oracle import (
    Integrand,
    PowerSum,
    QuadratureReport,
    caputo_numeric,
    msm_derivative_numeric,
    msm_integral_numeric,
    saigo_integral_numeric,
    series_lhs_numeric,
)
from .series import ConvergenceClass, ConvergenceData, WrightParams, classify, convergence_data, eval_kwright

__all__ = [
    "AppellF3Params",
    "COROLLARIES",
    "ConvergenceClass",
    "ConvergenceData",
    "ConvergenceError",
    "DomainError",
    "EKParams",
    "Gauss2F1Params",
    "Integrand",
    "KWrightError",
    "Kind",
    "MSMParams",
    "MissingDerivativeError",
    "NonConvergenceError",
    "OverflowError",
    "PoleError",
    "PowerImage",
    "PowerSum",
    "PowerWeight",
    "PreconditionError",
    "QuadratureReport",
    "SaigoParams",
    "Side",
    "StepCollapseError",
    "THEOREMS",
    "TransformedWright",
    "WrightParams",
    "appell_f3",
    "caputo_numeric",
    "classify",
    "convergence_data",
    "corollary_transform",
    "dual_derivative_image",
    "eval_kwright",
    "evaluate_image",
    "gamma",
    "gamma_k",
    "gauss_2f1",
    "hyp2f1",
    "log_gamma",
    "log_gamma_k",
    "msm_derivative_numeric",
    "msm_integral_numeric",
    "pochhammer",
    "pochhammer_k",
    "power_image",
    "reduce_saigo",
    "rgamma",
    "saigo_integral_numeric",
    "series_lhs_numeric",
    "simplify",
    "transform",
]
