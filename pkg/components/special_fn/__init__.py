""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import math
import sys
import constants
import numpy as np

from fractions import Fraction
from functools import lru_cache
from typing import Callable, NamedTuple, Tuple, Union
from scipy import special
from aws_lambda_powertools import Logger
from components.errors import ConvergenceError, DomainError, NumericalOverflowError, PoleError

logger = Logger(service=constants.SERVICE_NAME, level=constants.LOG_LEVEL, stream=sys.stderr)

ArrayOrComplex = Union[complex, np.ndarray]

LN2 = math.log(2.0)
LN_PI = math.log(math.pi)
ETA_RATE = math.log(3.0 + math.sqrt(8.0))


class BarnesConstants(NamedTuple):
    g_half: float
    g_three_halves: float
    g_product: float
    reflection_log_const: float
    glaisher_log: float


def _as_output(values: np.ndarray, scalar: bool) -> ArrayOrComplex:
    if not np.all(np.isfinite(values)):
        raise NumericalOverflowError("Non-finite value produced; argument outside double-precision range")
    return complex(values.reshape(-1)[0]) if scalar else values


def log_gamma(z: ArrayOrComplex) -> ArrayOrComplex:
    """Principal branch of ln Γ(z), real for real positive z."""
    scalar = np.ndim(z) == 0
    values = np.atleast_1d(np.asarray(z, dtype=complex))
    poles = (values.imag == 0) & (values.real <= 0) & (values.real == np.round(values.real))
    if np.any(poles):
        raise PoleError(f"log_gamma has a pole at z={values[poles][0].real:g}")
    return _as_output(special.loggamma(values), scalar)


def log_gamma_ratio_half(x: ArrayOrComplex) -> ArrayOrComplex:
    """ln Γ(x+1/2) − ln Γ(x+1).

    The argument is shifted by whole steps until Re x ≥ STIRLING_SHIFT, where the
    Bernoulli tail converges to double precision; each step contributes
    ln((x+j+1/2)/(x+j+1)), which stays on the principal branch whenever x is
    off the negative real axis.
    """
    scalar = np.ndim(x) == 0
    values = np.atleast_1d(np.asarray(x, dtype=complex))
    on_axis = (values.imag == 0) & (values.real < 0)
    if np.any(on_axis & ((values.real * 2) == np.round(values.real * 2))):
        raise PoleError("log_gamma_ratio_half hits a pole of Γ(x+1/2) or Γ(x+1)")
    shifts = np.maximum(0, np.ceil(constants.STIRLING_SHIFT - values.real)).astype(np.int64)
    shifted = values + shifts
    result = -0.5 * np.log(shifted) + _ratio_half_tail(shifted)
    for step in range(int(shifts.max(initial=0))):
        active = step < shifts
        z = values[active] + step
        result[active] -= np.log1p(-0.5 / (z + 1.0))
    return _as_output(result, scalar)


def ratio_half_remainder(x: ArrayOrComplex) -> ArrayOrComplex:
    """ln Γ(x+1/2) − ln Γ(x+1) + (1/2)ln x, which decays like −1/(8x)."""
    scalar = np.ndim(x) == 0
    values = np.atleast_1d(np.asarray(x, dtype=complex))
    if np.any(values == 0):
        raise PoleError("ratio_half_remainder is singular at x=0")
    direct = values.real >= constants.STIRLING_SHIFT
    result = np.empty_like(values)
    result[direct] = _ratio_half_tail(values[direct])
    if np.any(~direct):
        result[~direct] = log_gamma_ratio_half(values[~direct]) + 0.5 * np.log(values[~direct])
    return _as_output(result, scalar)


def _ratio_half_tail(w: np.ndarray) -> np.ndarray:
    inverse = 1.0 / w
    inverse_sq = inverse * inverse
    total = np.zeros_like(w)
    power = inverse
    for j in range(1, constants.STIRLING_TERMS + 1):
        total += _ratio_half_coeffs()[j - 1] * power
        power = power * inverse_sq
    return total


@lru_cache(maxsize=None)
def _ratio_half_coeffs() -> Tuple[float, ...]:
    # Coefficient of x^{1-2j} in the large-x expansion of ln Γ(x+1/2) − ln Γ(x+1) + (1/2)ln x
    return tuple(
        float((Fraction(2) ** (1 - 2 * j) - 2) * bernoulli_fraction(2 * j) / ((2 * j - 1) * (2 * j)))
        for j in range(1, constants.STIRLING_TERMS + 1)
    )


def zeta(s: ArrayOrComplex) -> ArrayOrComplex:
    """Riemann ζ continued to the whole plane.

    Alternating (eta) series with Cohen–Rodriguez Villegas–Zagier weights for
    Re s ≥ −1/2, functional equation otherwise, and also near the zeros of
    1 − 2^{1−s} on the line Re s = 1 where the eta quotient loses accuracy.
    """
    scalar = np.ndim(s) == 0
    values = np.atleast_1d(np.asarray(s, dtype=complex))
    if np.any(values == 1):
        raise PoleError("zeta has a pole at s=1")
    if np.any(np.abs(values.imag) > constants.ZETA_MAX_IMAG):
        raise NumericalOverflowError(f"zeta argument |Im s| exceeds {constants.ZETA_MAX_IMAG}")
    eta_factor = np.abs(1.0 - np.exp((1.0 - values) * LN2))
    reflect = (values.real < -0.5) | ((eta_factor < 0.1) & (np.abs(values - 1.0) > 0.5))
    result = np.empty_like(values)
    if np.any(~reflect):
        result[~reflect] = _zeta_eta(values[~reflect])
    if np.any(reflect):
        result[reflect] = _zeta_reflected(values[reflect])
    return _as_output(result, scalar)


def _zeta_eta(s: np.ndarray) -> np.ndarray:
    height = float(np.max(np.abs(s.imag), initial=0.0))
    n = int(math.ceil((40.0 + math.pi * height / 2 + math.log(3.0 * (1.0 + 2.0 * height))) / ETA_RATE)) + 1
    weights = _eta_weights(n)
    eta = np.zeros_like(s)
    for k in range(n):
        eta += weights[k] * np.exp(-s * math.log(k + 1.0))
    return eta / (1.0 - np.exp((1.0 - s) * LN2))


@lru_cache(maxsize=64)
def _eta_weights(n: int) -> np.ndarray:
    # Build the d_k partial sums of the Chebyshev-type weights
    terms = np.empty(n + 1)
    terms[0] = 1.0
    for i in range(1, n + 1):
        terms[i] = terms[i - 1] * (n + i - 1) * 4.0 * (n - i + 1) / ((2.0 * i) * (2.0 * i - 1.0))
    d = np.cumsum(terms)
    signs = np.where(np.arange(n) % 2 == 0, 1.0, -1.0)
    weights = signs * (1.0 - d[:n] / d[n])
    weights.setflags(write=False)
    return weights


def _zeta_reflected(s: np.ndarray) -> np.ndarray:
    log_prefactor = s * LN2 + (s - 1.0) * LN_PI + special.loggamma(1.0 - s)
    return np.exp(log_prefactor) * np.sin(np.pi * s / 2.0) * _zeta_eta(1.0 - s)


def hurwitz_zeta(
    s: ArrayOrComplex,
    a: float,
    shift: int = constants.HURWITZ_SHIFT,
    corrections: int = constants.HURWITZ_CORRECTIONS
) -> ArrayOrComplex:
    """Hurwitz ζ(s, a) by Euler–Maclaurin summation.

    The shift grows with |s| so that the Bernoulli corrections stay small along
    tall contour strips.
    """
    if not 0.0 < a <= 1.0:
        raise DomainError(f"hurwitz_zeta requires a in (0,1], got a={a}")
    scalar = np.ndim(s) == 0
    values = np.atleast_1d(np.asarray(s, dtype=complex))
    if np.any(values == 1):
        raise PoleError("hurwitz_zeta has a pole at s=1")
    m = shift + int(math.ceil(float(np.max(np.abs(values), initial=0.0))))
    total = np.zeros_like(values)
    for k in range(m):
        total += np.exp(-values * math.log(k + a))
    x = m + a
    log_x = math.log(x)
    x_power = np.exp(-values * log_x)
    total += x * x_power / (values - 1.0) + 0.5 * x_power
    rising = values.copy()
    power = x_power / x
    for j in range(1, corrections + 1):
        total += bernoulli_number(2 * j) / math.factorial(2 * j) * rising * power
        rising = rising * (values + 2 * j - 1) * (values + 2 * j)
        power = power / (x * x)
    return _as_output(total, scalar)


@lru_cache(maxsize=None)
def _bernoulli_table() -> Tuple[Fraction, ...]:
    table = [Fraction(1)]
    for m in range(1, constants.BERNOULLI_EXACT_MAX + 1):
        acc = sum(math.comb(m + 1, k) * table[k] for k in range(m))
        table.append(-acc / (m + 1))
    return tuple(table)


def bernoulli_fraction(n: int) -> Fraction:
    """Exact B_n (B_1 = −1/2) for 0 ≤ n ≤ 64."""
    if n < 0 or n > constants.BERNOULLI_EXACT_MAX:
        raise DomainError(f"Exact Bernoulli numbers are tabulated for 0 <= n <= {constants.BERNOULLI_EXACT_MAX}")
    return _bernoulli_table()[n]


def bernoulli_number(n: int) -> float:
    if n < 0:
        raise DomainError(f"bernoulli_number requires n >= 0, got {n}")
    if n <= constants.BERNOULLI_EXACT_MAX:
        return float(bernoulli_fraction(n))
    if n % 2 == 1:
        return 0.0
    # B_{2m} = (−1)^{m+1} 2 (2m)! ζ(2m) / (2π)^{2m}
    log_magnitude = math.log(2.0) + special.gammaln(n + 1) - n * math.log(2.0 * math.pi) + math.log(special.zeta(n))
    if log_magnitude > 709.0:
        raise NumericalOverflowError(f"B_{n} exceeds the double-precision range")
    sign = 1.0 if (n // 2) % 2 == 1 else -1.0
    return sign * math.exp(log_magnitude)


def bernoulli_poly_exact(n: int, x: Union[int, Fraction]) -> Fraction:
    x = Fraction(x)
    return sum((math.comb(n, k) * bernoulli_fraction(k) * x ** (n - k) for k in range(n + 1)), Fraction(0))


def bernoulli_poly(n: int, x: float) -> float:
    """B_n(x) = Σ C(n,k) B_k x^{n−k}, summed exactly from the binary value of x."""
    if n < 0:
        raise DomainError(f"bernoulli_poly requires n >= 0, got {n}")
    return float(bernoulli_poly_exact(n, Fraction(x)))


@lru_cache(maxsize=None)
def zeta_prime_minus_one(radius: float = 0.5, points: int = 64) -> float:
    """ζ′(−1) from a trapezoidal Cauchy integral on a circle around s=−1."""
    angles = 2.0 * np.pi * (np.arange(points) + 0.5) / points
    nodes = -1.0 + radius * np.exp(1j * angles)
    derivative = np.mean(zeta(nodes) * np.exp(-1j * angles)) / radius
    return float(derivative.real)


@lru_cache(maxsize=None)
def barnes_constants() -> BarnesConstants:
    # Glaisher–Kinkelin: ln A = 1/12 − ζ′(−1)
    glaisher_log = 1.0 / 12.0 - zeta_prime_minus_one()
    log_g_half = LN2 / 24.0 + 0.125 - 0.25 * LN_PI - 1.5 * glaisher_log
    g_half = math.exp(log_g_half)
    g_three_halves = math.sqrt(math.pi) * g_half
    g_product = g_half * g_three_halves
    reflection_log_const = 0.5 * LN_PI + 2.0 * math.log(g_product)
    logger.debug(f"Barnes constants: G(1/2)={g_half:.15g}, G(1/2)G(3/2)={g_product:.15g}")
    return BarnesConstants(
        g_half=g_half,
        g_three_halves=g_three_halves,
        g_product=g_product,
        reflection_log_const=reflection_log_const,
        glaisher_log=glaisher_log
    )


def euler_average(partial_sums: np.ndarray, depth: int = constants.EULER_AVERAGING_DEPTH) -> Tuple[complex, float]:
    """Repeated averaging of consecutive partial sums of an alternating series.

    Returns the accelerated value and the change produced by the last level.
    """
    sums = np.asarray(partial_sums[-(depth + 1):], dtype=complex)
    if sums.size < 2:
        raise DomainError("euler_average needs at least two partial sums")
    previous = sums[-1]
    while sums.size > 1:
        previous = sums[-1]
        sums = 0.5 * (sums[:-1] + sums[1:])
    return complex(sums[0]), float(abs(sums[0] - previous))


def sum_alternating(
    terms: Callable[[np.ndarray], np.ndarray],
    tol: float,
    n_start: int = 0,
    n_min: int = 64,
    max_terms: int = constants.MAX_TERMS,
    depth: int = constants.EULER_AVERAGING_DEPTH
) -> Tuple[complex, float, int]:
    """Sum Σ_{n≥n_start} terms(n) for a tail that alternates smoothly in n.

    `terms` receives an integer array and returns signed terms. Consecutive terms
    are paired by the first averaging level; the series is extended by doubling
    until the accelerated estimates of two lengths agree within tol.
    """
    upper = max(n_min, n_start + depth + 2)
    previous = None
    while True:
        indices = np.arange(n_start, upper + 1)
        partial = np.cumsum(np.asarray(terms(indices), dtype=complex))
        estimate, spread = euler_average(partial, depth)
        if not np.isfinite(estimate):
            raise NumericalOverflowError("Alternating sum produced a non-finite partial sum")
        if previous is not None:
            err = max(abs(estimate - previous), spread)
            if err <= tol * max(1.0, abs(estimate)):
                return estimate, err, upper - n_start + 1
        if upper >= max_terms:
            raise ConvergenceError(
                f"Alternating sum did not converge within {max_terms} terms",
                best_estimate=estimate,
                abs_err=spread if previous is None else abs(estimate - previous)
            )
        previous = estimate
        upper = min(2 * upper, max_terms)
