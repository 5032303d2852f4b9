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
from typing import List, Tuple, Union
from scipy import special
from scipy.special import expit
from aws_lambda_powertools import Logger
from components import special_fn
from components.divisor import sigma_o_minus2_array
from components.errors import DomainError, NumericalOverflowError
from components.quadrature import integrate_half_line, integrate_vertical_line

logger = Logger(service=constants.SERVICE_NAME, level=constants.LOG_LEVEL, stream=sys.stderr)

OPTIMAL = "optimal"
METHODS = ("auto", "integral", "mellin-barnes", "loggamma", "borel", "series", "all")
LN2 = math.log(2.0)
LN_2PI = math.log(2.0 * math.pi)


class Route(str, Enum):
    INTEGRAL = "Integral"
    MELLIN_BARNES = "MellinBarnes"
    LOGGAMMA_SUM = "LogGammaSum"
    BOREL_LAPLACE = "BorelLaplace"
    SERIES = "Series"


@dataclass(frozen=True)
class VEvaluation:
    n_value: complex
    value: complex
    route: Route
    abs_err: float

    def __post_init__(self) -> None:
        if not (cmath.isfinite(self.value) and math.isfinite(self.abs_err)):
            raise NumericalOverflowError(f"{self.route.value} route produced a non-finite result at N={self.n_value}")


@dataclass(frozen=True)
class SeriesCoefficients:
    """Coefficients c_n of (1/N)^{2n} in the large-N expansion of v."""
    coeffs: Tuple[float, ...]
    n_max: int

    def __post_init__(self) -> None:
        if len(self.coeffs) != self.n_max:
            raise DomainError("SeriesCoefficients needs exactly n_max coefficients")
        for n, c in enumerate(self.coeffs, start=1):
            if c == 0 or (c > 0) != (n % 2 == 0):
                raise DomainError(f"Coefficient c_{n}={c} breaks the (-1)^n sign pattern")


def _check_n(N: complex) -> complex:
    N = complex(N)
    if N == 0 or not cmath.isfinite(N):
        raise DomainError(f"N must be finite and nonzero, got {N}")
    return N


def integral_in_kappa(kappa: complex, tol: float = constants.DEFAULT_TOL):
    """−∫₀^∞ tanh²(κt)/(2t(eᵗ+1)) dt, with κ = 1/(4N)."""
    def integrand(t: np.ndarray) -> np.ndarray:
        return -np.tanh(kappa * t) ** 2 * expit(-t) / (2.0 * t)

    return integrate_half_line(integrand, tol)


def v_integral(N: complex, tol: float = constants.DEFAULT_TOL) -> VEvaluation:
    N = _check_n(N)
    if abs(cmath.phase(N)) >= math.pi / 2 - constants.INTEGRAL_ARG_MARGIN:
        raise DomainError(
            f"v_integral requires |Arg N| < pi/2 - {constants.INTEGRAL_ARG_MARGIN}, got Arg N={cmath.phase(N):.4f}"
        )
    result = integral_in_kappa(1.0 / (4.0 * N), tol)
    return VEvaluation(n_value=N, value=result.value, route=Route.INTEGRAL, abs_err=result.abs_err)


def _csc_pi(u: np.ndarray) -> np.ndarray:
    # 1/sin(πu) from the decaying exponential only, so tall contours never overflow
    z = np.pi * u
    upper = z.imag >= 0
    e = np.exp(1j * np.where(upper, z, -z))
    return np.where(upper, 2j, -2j) * e / (e * e - 1.0)


def mellin_barnes_integrand(u: np.ndarray, log_n: complex) -> np.ndarray:
    """2(2ᵘ−4)(2^{u+1}−1)ζ(u−1)ζ(−u)·π/(u sin πu)·Nᵘ on arrays of u."""
    factor = (np.exp(u * LN2) - 4.0) * np.expm1((u + 1.0) * LN2)
    kernel = np.pi * _csc_pi(u) / u
    return 2.0 * factor * special_fn.zeta(u - 1.0) * special_fn.zeta(-u) * kernel * np.exp(u * log_n)


def v_mellin_barnes(N: complex, tol: float = constants.DEFAULT_TOL, re_u: float = -1.0) -> VEvaluation:
    N = _check_n(N)
    if not -2.0 < re_u < 0.0:
        raise DomainError(f"The contour must satisfy -2 < Re u < 0, got {re_u}")
    if abs(cmath.phase(N)) > math.pi * (1.0 - constants.MELLIN_BARNES_DELTA):
        raise DomainError(
            f"v_mellin_barnes requires |Arg N| <= pi(1-{constants.MELLIN_BARNES_DELTA}), got {cmath.phase(N):.4f}"
        )
    log_n = cmath.log(N)
    result = integrate_vertical_line(lambda u: mellin_barnes_integrand(u, log_n), re_u, tol)
    return VEvaluation(n_value=N, value=result.value, route=Route.MELLIN_BARNES, abs_err=result.abs_err)


def loggamma_term(n: int, kappa: complex) -> complex:
    """−∫₀^∞ (1−e^{−2κt})² e^{−2nκt}/(2t(1+eᵗ)) dt through ln Γ(x+1/2) − ln Γ(x+1)."""
    x = np.array([n, n + 1, n + 2], dtype=complex) * kappa
    ratio = special_fn.log_gamma_ratio_half(x)
    return complex(-0.5 * (ratio[0] - 2.0 * ratio[1] + ratio[2]))


def single_term_closed(n: int, kappa: complex) -> complex:
    """The same single term from six direct ln Γ values."""
    lg = special.loggamma
    args = np.array([1 + 2 * kappa * (n + 1), 1 + kappa * n, 1 + kappa * (n + 2),
                     1 + 2 * kappa * n, 1 + 2 * kappa * (n + 2), 1 + kappa * (n + 1)], dtype=complex)
    values = lg(args)
    return complex(0.5 * (2 * values[0] + 2 * values[1] + 2 * values[2] - values[3] - values[4] - 4 * values[5]))


def single_term_integral(n: int, kappa: complex, tol: float = constants.DEFAULT_TOL):
    def integrand(t: np.ndarray) -> np.ndarray:
        return -np.expm1(-2.0 * kappa * t) ** 2 * np.exp(-2.0 * n * kappa * t) * expit(-t) / (2.0 * t)

    return integrate_half_line(integrand, tol)


def v_loggamma_sum(
    N: complex,
    tol: float = constants.DEFAULT_TOL,
    max_terms: int = constants.MAX_TERMS
) -> VEvaluation:
    """v as an alternating sum of exact ln Γ combinations.

    Each term is written as −(1/2)Δ² of R(x) = ln Γ(x+1/2) − ln Γ(x+1) + (1/2)ln x
    plus (1/4)ln(n(n+2)/(n+1)²), which keeps the summand smooth and small.
    """
    N = _check_n(N)
    if N.imag == 0 and N.real < 0:
        raise DomainError(f"v_loggamma_sum is undefined on the negative real axis, got N={N}")
    kappa = 1.0 / (4.0 * N)
    first = loggamma_term(0, kappa)

    def terms(n: np.ndarray) -> np.ndarray:
        remainder = special_fn.ratio_half_remainder(np.arange(n[0], n[-1] + 3) * kappa)
        second_difference = remainder[:-2] - 2.0 * remainder[1:-1] + remainder[2:]
        signs = np.where(n % 2 == 0, 1.0, -1.0)
        return signs * (n + 1.0) * (0.25 * np.log1p(-1.0 / (n + 1.0) ** 2) - 0.5 * second_difference)

    # Past |Im(nκ)| ≈ 6 the reflection part of ln Γ is below double precision
    n_min = 64
    if kappa.real < 0:
        n_min = max(n_min, int(math.ceil(6.0 / abs(kappa.imag))) + 32)
    if n_min > max_terms:
        raise DomainError(f"N={N} is too close to the negative real axis for {max_terms} terms")
    tail, err, count = special_fn.sum_alternating(terms, tol, n_start=1, n_min=n_min, max_terms=max_terms)
    logger.debug(f"Log-gamma sum at N={N} used {count} terms")
    return VEvaluation(n_value=N, value=first + tail, route=Route.LOGGAMMA_SUM, abs_err=err)


def v_series_coeff(n: int) -> float:
    """c_n = (−1)ⁿ 2(1−2·4⁻ⁿ)(4−4⁻ⁿ)Γ(2n+2)ζ(2n)ζ(2n+2)/(n(2π)^{2n+2})."""
    if n < 1:
        raise DomainError(f"v_series_coeff requires n >= 1, got {n}")
    log_magnitude = (
        LN2 + math.log1p(-2.0 * 4.0 ** -n) + math.log(4.0 - 4.0 ** -n) + special.gammaln(2 * n + 2)
        + math.log(special.zeta(2 * n)) + math.log(special.zeta(2 * n + 2)) - math.log(n) - (2 * n + 2) * LN_2PI
    )
    if log_magnitude > 709.0:
        raise NumericalOverflowError(f"c_{n} exceeds the double-precision range")
    return (-1.0) ** n * math.exp(log_magnitude)


def v_series_bernoulli_coeff(n: int) -> float:
    """c_n from the product of two Bernoulli numbers."""
    if n < 1:
        raise DomainError(f"v_series_bernoulli_coeff requires n >= 1, got {n}")
    rational = (
        4 * (1 - Fraction(1, 2 ** (2 * n - 1))) * (1 - Fraction(1, 2 ** (2 * n + 2)))
        * special_fn.bernoulli_fraction(2 * n + 2) / (2 * n + 2)
        * special_fn.bernoulli_fraction(2 * n) / (2 * n)
        / math.factorial(2 * n)
    )
    sign = 1.0 if n % 2 == 1 else -1.0
    return sign * float(rational) * (2.0 * math.pi) ** (2 * n)


def v_series_leading_coeff(n: int) -> float:
    """The l=1 term of the divisor-sum form: (−1)ⁿ 8Γ(2n+2)/(n(2π)^{2n+2})."""
    log_magnitude = math.log(8.0) + special.gammaln(2 * n + 2) - math.log(n) - (2 * n + 2) * LN_2PI
    return (-1.0) ** n * math.exp(log_magnitude)


def dirichlet_cutoff(n: int) -> int:
    return min(10 ** 6, max(10 ** 4, int(math.ceil(10.0 ** (7.0 / n)))))


def v_series_dirichlet_coeff(n: int, l_max: int = None) -> float:
    """c_n as the leading factorial times Σ_l (−1)^{l−1} σ₋₂ᵒ(l)/l^{2n}."""
    if n < 1:
        raise DomainError(f"v_series_dirichlet_coeff requires n >= 1, got {n}")
    l_max = l_max or dirichlet_cutoff(n)
    sigma = sigma_o_minus2_array(l_max)[1:]
    l = np.arange(1, l_max + 1, dtype=float)
    signs = np.where(l % 2 == 1, 1.0, -1.0)
    dirichlet = float(np.sum(signs * sigma * np.exp(-2 * n * np.log(l))))
    return v_series_leading_coeff(n) * dirichlet


def v_series_coefficients(n_max: int) -> SeriesCoefficients:
    return SeriesCoefficients(coeffs=tuple(v_series_coeff(n) for n in range(1, n_max + 1)), n_max=n_max)


def _series_terms(N: complex, n_max: int) -> np.ndarray:
    log_n = cmath.log(N)
    terms = np.empty(n_max, dtype=complex)
    for n in range(1, n_max + 1):
        c = v_series_coeff(n)
        terms[n - 1] = math.copysign(1.0, c) * cmath.exp(math.log(abs(c)) - 2 * n * log_n)
    return terms


def v_series_truncated(N: complex, order: Union[int, str] = OPTIMAL) -> VEvaluation:
    """Partial sum Σ c_n N^{−2n}.

    With order="optimal" the sum stops at (and includes) the smallest term over
    the scanned range; abs_err reports the magnitude of the first omitted term.
    """
    N = _check_n(N)
    if abs(N) < 1.0:
        raise DomainError(f"v_series_truncated requires |N| >= 1, got |N|={abs(N):.4g}")
    if order == OPTIMAL:
        scan = min(300, max(20, int(4 * math.pi * abs(N))))
        terms = _series_terms(N, scan + 1)
        last = int(np.argmin(np.abs(terms[:scan]))) + 1
    else:
        last = int(order)
        if last < 1:
            raise DomainError(f"Truncation order must be >= 1, got {order}")
        terms = _series_terms(N, last + 1)
    value = complex(np.sum(terms[:last]))
    return VEvaluation(n_value=N, value=value, route=Route.SERIES, abs_err=float(abs(terms[last])))


def borel_sum(t: np.ndarray, depth: int = constants.EULER_AVERAGING_DEPTH) -> np.ndarray:
    """B(t) = (1/2t) Σ_{n≥1} (−1)ⁿ tanh²(t/4n), vectorized over t.

    The alternating n-sum is run past n ≈ 4|t| and finished with repeated
    averaging of its last partial sums.
    """
    t = np.asarray(t, dtype=complex)
    if t.size == 0:
        return t
    count = 64 + int(math.ceil(4.0 * float(np.max(np.abs(t)))))
    partial = np.zeros_like(t)
    ring = []
    for n in range(1, count + 1):
        partial = partial + (-1.0) ** n * np.tanh(t / (4.0 * n)) ** 2
        if n > count - depth - 1:
            ring.append(partial)
    sums = np.array(ring)
    while sums.shape[0] > 1:
        sums = 0.5 * (sums[:-1] + sums[1:])
    return sums[0] / (2.0 * t)


def v_borel_laplace(N: complex, ray_angle: float = 0.0, tol: float = constants.DEFAULT_TOL) -> VEvaluation:
    """∫₀^{∞e^{iθ}} e^{−tN} B(t) dt along the ray of angle θ."""
    N = _check_n(N)
    offset = abs((ray_angle - math.pi / 2) % math.pi)
    if min(offset, math.pi - offset) < constants.STOKES_RAY_GUARD:
        raise DomainError(f"Laplace ray at angle {ray_angle:.4f} lies on a Stokes line (Arg t = ±pi/2)")
    direction = cmath.exp(1j * ray_angle)
    if (N * direction).real <= 0:
        raise DomainError(f"Laplace ray at angle {ray_angle:.4f} needs Re(N e^(i theta)) > 0 for N={N}")

    def integrand(r: np.ndarray) -> np.ndarray:
        t = r * direction
        exponent = t * N
        values = np.zeros_like(t)
        live = exponent.real <= 40.0
        values[live] = direction * np.exp(-exponent[live]) * borel_sum(t[live])
        return values

    result = integrate_half_line(integrand, tol)
    return VEvaluation(n_value=N, value=result.value, route=Route.BOREL_LAPLACE, abs_err=result.abs_err)


def preferred_route(N: complex) -> Route:
    if abs(cmath.phase(complex(N))) < math.pi / 2 - constants.INTEGRAL_ARG_MARGIN:
        return Route.INTEGRAL
    return Route.LOGGAMMA_SUM


def evaluate_v(
    N: complex,
    tol: float = constants.DEFAULT_TOL,
    method: str = "auto",
    max_terms: int = constants.MAX_TERMS
) -> Union[VEvaluation, List[VEvaluation]]:
    """Dispatch v(1/N) to one route, or to every applicable exact route with method="all".

    `max_terms` caps the log-Γ alternating sum; the other routes have no term budget.
    """
    N = _check_n(N)
    if method not in METHODS:
        raise DomainError(f"Unknown method '{method}', expected one of {', '.join(METHODS)}")
    if method == "auto":
        method = "integral" if preferred_route(N) is Route.INTEGRAL else "loggamma"
        logger.info(f"Route for N={N}: {method}")
    if method == "integral":
        return v_integral(N, tol)
    if method == "mellin-barnes":
        return v_mellin_barnes(N, tol)
    if method == "loggamma":
        return v_loggamma_sum(N, tol, max_terms)
    if method == "borel":
        return v_borel_laplace(N, 0.0, tol)
    if method == "series":
        return v_series_truncated(N, OPTIMAL)

    # Every exact route whose preconditions hold
    evaluations = []
    for route in (v_integral, v_mellin_barnes, v_loggamma_sum, v_borel_laplace):
        budget = {"max_terms": max_terms} if route is v_loggamma_sum else {}
        try:
            evaluations.append(route(N, tol=tol, **budget))
        except DomainError as e:
            logger.info(f"Skipping {route.__name__} at N={N}: {e}")
    if not evaluations:
        raise DomainError(f"No route applies at N={N}")
    return evaluations


def route_spread(evaluations: List[VEvaluation]) -> float:
    values = [e.value for e in evaluations]
    return max((abs(a - b) for i, a in enumerate(values) for b in values[i + 1:]), default=0.0)
