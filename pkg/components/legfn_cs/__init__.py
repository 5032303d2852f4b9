""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import cmath
import math
import sys
import constants
import numpy as np

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import List, NamedTuple, Optional
from scipy import special
from scipy.special import expit
from aws_lambda_powertools import Logger
from components import special_fn
from components.errors import DomainError, RouteDisagreementError
from components.quadrature import integrate_half_line, integrate_interval, integrate_vertical_line
from components.v_function import evaluate_v

logger = Logger(service=constants.SERVICE_NAME, level=constants.LOG_LEVEL, stream=sys.stderr)

TWO_PI = 2.0 * math.pi
ROOT_TOLERANCE = 1e-12
P_ROUTE_TOLERANCE = 1e-9
ASYMPTOTIC_MAX_ORDER = 20


class LegRoute(str, Enum):
    SQRT_PRODUCT = "SqrtProduct"
    FINITE_PRODUCT = "FiniteProduct"
    INTEGRAL_REP = "IntegralRep"
    MELLIN_BARNES = "MellinBarnes"
    ASYMPTOTIC = "Asymptotic"


@dataclass(frozen=True)
class LegEvaluation:
    N: int
    value: complex
    route: LegRoute
    z_value: Optional[complex] = None
    k: Optional[int] = None


class OnePoint(NamedTuple):
    via_v: float
    via_P: float


def _check_order(N: int) -> None:
    if int(N) != N or N < 1:
        raise DomainError(f"N must be a positive integer, got {N}")


def branch_sqrt(z_value: complex) -> complex:
    """√𝒵 with Arg 𝒵 taken in (0, 2π)."""
    z_value = complex(z_value)
    if z_value == 0:
        raise DomainError("√Z is undefined at Z=0")
    angle = cmath.phase(z_value)
    if angle == 0.0:
        raise DomainError(f"Z={z_value} lies on the positive real axis where the (0, 2π) branch is ambiguous")
    if angle < 0:
        angle += TWO_PI
    return math.sqrt(abs(z_value)) * cmath.exp(0.5j * angle)


def root_index(z_value: complex, N: int) -> Optional[int]:
    """j with 𝒵 = 𝔮^j (0 ≤ j < 2N), or None when 𝒵 is not such a root."""
    z_value = complex(z_value)
    if abs(abs(z_value) - 1.0) > ROOT_TOLERANCE:
        return None
    angle = cmath.phase(z_value) % TWO_PI
    j = angle * N / math.pi
    nearest = int(round(j))
    if abs(j - nearest) > ROOT_TOLERANCE * N:
        return None
    return nearest % (2 * N)


def _log_q_difference(a: np.ndarray, b: np.ndarray, N: int) -> np.ndarray:
    # ln(𝔮^a − 𝔮^b) = ln 2 + iπ/2 + iπ(a+b)/2N + ln sin(π(a−b)/2N)
    sines = np.sin(np.pi * (a - b) / (2.0 * N)).astype(complex)
    return math.log(2.0) + 0.5j * math.pi + 1j * np.pi * (a + b) / (2.0 * N) + np.log(sines)


def log_leg_finite(N: int, j: int) -> complex:
    """ln p(𝔮^j, 𝔮) from the finite root-of-unity products."""
    _check_order(N)
    if not 0 <= j < 2 * N:
        raise DomainError(f"Root index must satisfy 0 <= j < 2N, got j={j}, N={N}")
    k, odd = divmod(j, 2)
    whole = np.arange(N, dtype=float)
    halves = whole + 0.5
    others = np.delete(whole, k)
    if not odd:
        return (
            math.log(N) - 1j * math.pi * k / N
            + np.sum(_log_q_difference(np.full(N, float(k)), halves, N))
            - np.sum(_log_q_difference(np.full(N - 1, float(k)), others, N))
        )
    point = k + 0.5
    return (
        1j * math.pi * point / N - math.log(N)
        + np.sum(_log_q_difference(np.full(N - 1, point), np.delete(halves, k), N))
        - np.sum(_log_q_difference(np.full(N, point), whole, N))
    )


def leg_p_finite(N: int, j: int) -> LegEvaluation:
    value = cmath.exp(log_leg_finite(N, j))
    return LegEvaluation(N=N, value=value, route=LegRoute.FINITE_PRODUCT,
                         z_value=cmath.exp(1j * math.pi * j / N), k=j)


def sqrt_product(root: complex, N: int) -> complex:
    """∏_{k<N}(√𝒵 + 𝔮ᵏ)/∏_{k<N}(√𝒵 + 𝔮^{k+1/2}) for a given square root."""
    exponents = np.arange(N, dtype=float)
    numerator = root + np.exp(1j * np.pi * exponents / N)
    denominator = root + np.exp(1j * np.pi * (exponents + 0.5) / N)
    return complex(np.exp(np.sum(np.log(numerator)) - np.sum(np.log(denominator))))


def leg_p(z_value: complex, N: int) -> LegEvaluation:
    """Leg function p(𝒵, 𝔮), 𝔮 = e^{iπ/N}.

    Roots 𝒵 = 𝔮^j go through the finite products, which also settle 𝒵 = 1;
    any other point uses the square-root product on the (0, 2π) branch.
    """
    _check_order(N)
    j = root_index(z_value, N)
    if j is not None:
        return leg_p_finite(N, j)
    value = sqrt_product(branch_sqrt(z_value), N)
    return LegEvaluation(N=N, value=value, route=LegRoute.SQRT_PRODUCT, z_value=complex(z_value))


def _check_k(N: int, k: int) -> int:
    _check_order(N)
    if not 0 < abs(k) < N:
        raise DomainError(f"gamma_hat requires 0 < |k| < N, got k={k}, N={N}")
    return abs(k)


def _log_gamma_term(k: int) -> float:
    return 0.5 * math.log(k) + special.gammaln(k + 0.5) - special.gammaln(k + 1.0)


def gamma_hat(N: int, k: int, tol: float = constants.DEFAULT_TOL) -> complex:
    """Γ̂_N(e^{2πik/N}) = ln(√|k|Γ(|k|+½)/Γ(|k|+1)) − ∫₀^∞ tanh(t/4N) sinh(|k|t/N)/(t(1+eᵗ)) dt."""
    k = _check_k(N, k)

    # Integrate in s = t/N so the decay rate N−|k| never drops below one
    def integrand(s: np.ndarray) -> np.ndarray:
        growth = 0.5 * (np.exp((k - N) * s) - np.exp(-(k + N) * s))
        return np.tanh(s / 4.0) / s * growth * expit(N * s)

    result = integrate_half_line(integrand, tol)
    return complex(_log_gamma_term(k) - result.value.real)


def gamma_hat_definition(z_value: complex, N: int, tol: float = constants.DEFAULT_TOL) -> complex:
    """Γ̂_N(𝒵) from −i(√𝒵 − 1/√𝒵)∫₀¹ (1+t)ln[(1−t^N)/(1+t^N)]/(2π√t(1−𝒵t)(1−t/𝒵)) dt."""
    _check_order(N)
    root = branch_sqrt(z_value)

    def integrand(t: np.ndarray) -> np.ndarray:
        log_t = np.log(t)
        log_ratio = np.log(-np.expm1(N * log_t)) - np.log1p(np.exp(N * log_t))
        return (1.0 + t) * log_ratio / (TWO_PI * np.sqrt(t) * (1.0 - z_value * t) * (1.0 - t / z_value))

    result = integrate_interval(integrand, 0.0, 1.0, tol)
    return -1j * (root - 1.0 / root) * result.value


def _stable_tan(w: np.ndarray) -> np.ndarray:
    upper = w.imag >= 0
    e = np.exp(2j * np.where(upper, w, -w))
    tan_upper = 1j * (1.0 - e) / (1.0 + e)
    return np.where(upper, tan_upper, -tan_upper)


def _stable_sec(w: np.ndarray) -> np.ndarray:
    upper = w.imag >= 0
    e = np.exp(1j * np.where(upper, w, -w))
    return 2.0 * e / (1.0 + e * e)


def gamma_hat_barnes(z_value: complex, N: int, tol: float = constants.DEFAULT_TOL) -> complex:
    """Γ̂_N(𝒵) = −∫ du/(4i) tan(πu/4N)/(u cos(πu/2)) (−i√𝒵)^{−u} along Re u = 0."""
    _check_order(N)
    log_base = cmath.log(-1j * branch_sqrt(z_value))

    def integrand(u: np.ndarray) -> np.ndarray:
        return _stable_tan(np.pi * u / (4.0 * N)) * _stable_sec(np.pi * u / 2.0) / u * np.exp(-u * log_base)

    result = integrate_vertical_line(integrand, 0.0, tol)
    return -0.5 * math.pi * result.value


def leg_p_from_gamma_hat(z_value: complex, N: int, tol: float = constants.DEFAULT_TOL) -> LegEvaluation:
    """p = exp(Γ̂ − ½ln(1 − 1/√𝒵) + ½ln(1 + 1/√𝒵)) for 𝒵 ∉ ℝ₊."""
    _check_order(N)
    root = branch_sqrt(z_value)
    j = root_index(z_value, N)
    if j is not None and j % 2 == 0:
        hat, route = gamma_hat(N, j // 2, tol), LegRoute.INTEGRAL_REP
    else:
        hat, route = gamma_hat_barnes(z_value, N, tol), LegRoute.MELLIN_BARNES
    exponent = hat - 0.5 * cmath.log(1.0 - 1.0 / root) + 0.5 * cmath.log(1.0 + 1.0 / root)
    return LegEvaluation(N=N, value=cmath.exp(exponent), route=route, z_value=complex(z_value))


def leg_asymptotic_terms(N: int, k: int, n_max: int) -> List[float]:
    """Summands (4ⁿ−2)B₂ₙ[B₂ₙ₊₁(|k|)+B₂ₙ₊₁(|k|+1)−2B₂ₙ₊₁(|k|+½)]/(4n(2n+1)!)·(iπ/N)^{2n}."""
    _check_order(N)
    if not 1 <= n_max <= ASYMPTOTIC_MAX_ORDER:
        raise DomainError(f"leg_asymptotic needs 1 <= n_max <= {ASYMPTOTIC_MAX_ORDER}, got {n_max}")
    k = abs(k)
    terms = []
    for n in range(1, n_max + 1):
        bracket = (
            special_fn.bernoulli_poly_exact(2 * n + 1, k)
            + special_fn.bernoulli_poly_exact(2 * n + 1, k + 1)
            - 2 * special_fn.bernoulli_poly_exact(2 * n + 1, Fraction(2 * k + 1, 2))
        )
        rational = (4 ** n - 2) * special_fn.bernoulli_fraction(2 * n) * bracket / (4 * n * math.factorial(2 * n + 1))
        terms.append(float(rational) * (-1.0) ** n * (math.pi / N) ** (2 * n))
    return terms


def leg_asymptotic(N: int, k: int, n_max: int) -> complex:
    """Truncated large-N expansion of Γ̂_N(e^{2πik/N})."""
    k = _check_k(N, k)
    return complex(_log_gamma_term(k) + math.fsum(leg_asymptotic_terms(N, k, n_max)))


def leg_p_asymptotic(N: int, k: int, n_max: int) -> LegEvaluation:
    """p(𝔮^{2k}, 𝔮) with Γ̂ replaced by its truncated large-N expansion."""
    z_value = cmath.exp(2j * math.pi * k / N)
    root = cmath.exp(1j * math.pi * (k % N) / N)
    exponent = leg_asymptotic(N, k, n_max) - 0.5 * cmath.log(1.0 - 1.0 / root) + 0.5 * cmath.log(1.0 + 1.0 / root)
    return LegEvaluation(N=N, value=cmath.exp(exponent), route=LegRoute.ASYMPTOTIC, z_value=z_value, k=k)


def _reduce_mod_two_pi_i(value: complex) -> complex:
    return value - 2j * math.pi * round(value.imag / TWO_PI)


def log_product_P_sine(N: int) -> float:
    """ln P from (4N²)ᴺ[∏_{l<2N} sin(πl/4N)^{2N−l} / ∏_{l<N} sin(πl/2N)^{4N−4l}]²."""
    _check_order(N)
    quarter = np.arange(1, 2 * N, dtype=float)
    half = np.arange(1, N, dtype=float)
    numerator = np.sum((2 * N - quarter) * np.log(np.sin(np.pi * quarter / (4 * N))))
    denominator = np.sum((4 * N - 4 * half) * np.log(np.sin(np.pi * half / (2 * N))))
    return float(N * math.log(4.0 * N * N) + 2.0 * (numerator - denominator))


def log_product_P_ratio(N: int) -> complex:
    """ln ∏ₖ p(𝔮^{2k},𝔮)/p(𝔮^{2k+1},𝔮), reduced modulo 2πi."""
    _check_order(N)
    total = sum(log_leg_finite(N, 2 * k) - log_leg_finite(N, 2 * k + 1) for k in range(N))
    return _reduce_mod_two_pi_i(complex(total))


def product_P(N: int) -> float:
    """P(𝔮) by the sine form, checked against the p-ratio product."""
    sine_form = log_product_P_sine(N)
    ratio_form = log_product_P_ratio(N)
    gap = abs(ratio_form - sine_form)
    if gap > P_ROUTE_TOLERANCE:
        logger.error(f"Product P routes disagree at N={N} by {gap:.3g} in log space")
        raise RouteDisagreementError(f"P(q) routes disagree at N={N}: log gap {gap:.3g}")
    return math.exp(sine_form)


def cs_partition_log(N: int, k: int) -> complex:
    """ln Z(N,k) of U(N) Chern–Simons theory on the three-sphere."""
    _check_order(N)
    if int(k) != k or k < 1:
        raise DomainError(f"Chern-Simons level k must be a positive integer, got {k}")
    l = np.arange(1, N, dtype=float)
    sines = np.sum((N - l) * np.log(np.sin(np.pi * l / (k + N))))
    return 1j * math.pi * N * N / 4.0 - 0.5 * N * math.log(k + N) + 0.5 * (N * N - N) * math.log(2.0) + sines


def cs_identity_residual(N: int) -> float:
    """|ln P − (2 ln Z(2N,2N) − 8 ln Z(N,N))| modulo 2πi."""
    gap = log_product_P_sine(N) - (2.0 * cs_partition_log(2 * N, 2 * N) - 8.0 * cs_partition_log(N, N))
    return abs(_reduce_mod_two_pi_i(complex(gap)))


def one_point(N: int, tol: float = constants.DEFAULT_TOL) -> OnePoint:
    """The finite-volume one-point function from v(1/N) and from P(𝔮)."""
    _check_order(N)
    g_product = special_fn.barnes_constants().g_product
    v = evaluate_v(float(N), tol).value.real
    via_v = g_product * (TWO_PI / N) ** 0.25 * math.exp(v)
    via_P = math.sqrt(2.0) / math.sqrt(product_P(N))
    logger.info(f"One-point function at N={N}: via v {via_v:.15g}, via P {via_P:.15g}")
    return OnePoint(via_v=via_v, via_P=via_P)
