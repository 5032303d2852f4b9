""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import cmath
import math
import sys
import constants
import numpy as np

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Tuple
from aws_lambda_powertools import Logger
from components.errors import ConvergenceError, DomainError
from components.storage import ScanTable

logger = Logger(service=constants.SERVICE_NAME, level=constants.LOG_LEVEL, stream=sys.stderr)

SIGMA_UPPER_BOUND = math.pi ** 2 / 8


def prime_factors(n: int) -> Dict[int, int]:
    if n < 1:
        raise DomainError(f"Factorization needs n >= 1, got {n}")
    factors: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            factors[p] = factors.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def divisors(n: int) -> Tuple[int, ...]:
    result = [1]
    for p, e in prime_factors(n).items():
        result = [d * p ** k for d in result for k in range(e + 1)]
    return tuple(sorted(result))


def odd_part(n: int) -> int:
    return n // (n & -n)


def sigma_k(n: int, k: int) -> Fraction:
    """σ_k(n) = Σ_{d|n} d^k, exact for negative k as well."""
    if n < 1:
        raise DomainError(f"sigma_k requires n >= 1, got {n}")
    return sum((Fraction(d) ** k for d in divisors(n)), Fraction(0))


def sigma_o_minus2(n: int) -> Fraction:
    """Σ 1/l² over the odd divisors l of n."""
    if n < 1:
        raise DomainError(f"sigma_o_minus2 requires n >= 1, got {n}")
    return sum((Fraction(1, d * d) for d in divisors(odd_part(n))), Fraction(0))


def check_sigma_identities(n: int) -> bool:
    """n²σ₋₂ᵒ(n) equals σ₂(n) for odd n and σ₂(n) − σ₂(n/2) for even n."""
    lhs = n * n * sigma_o_minus2(n)
    rhs = sigma_k(n, 2) if n % 2 else sigma_k(n, 2) - sigma_k(n // 2, 2)
    return lhs == rhs


def smallest_prime_factors(n_max: int) -> np.ndarray:
    spf = np.zeros(n_max + 1, dtype=np.int64)
    for p in range(2, math.isqrt(n_max) + 1):
        if spf[p] == 0:
            block = spf[p * p::p]
            block[block == 0] = p
    rest = np.arange(n_max + 1)
    unset = (spf == 0) & (rest >= 2)
    spf[unset] = rest[unset]
    return spf


@dataclass(frozen=True)
class DivisorTable:
    """σ₋₂ᵒ(n) and σ₂(n) for 1 ≤ n ≤ n_max; entry i belongs to n = i + 1."""
    n_max: int
    sigma_o_minus2: Tuple[Fraction, ...]
    sigma_2: Tuple[int, ...]

    @classmethod
    def build(cls, n_max: int) -> "DivisorTable":
        if n_max < 1:
            raise DomainError(f"DivisorTable needs n_max >= 1, got {n_max}")
        spf = smallest_prime_factors(n_max)
        sigma_2 = [0, 1] + [0] * (n_max - 1)
        for n in range(2, n_max + 1):
            p = int(spf[n])
            rest, prime_power = n, 1
            while rest % p == 0:
                rest //= p
                prime_power *= p
            sigma_2[n] = sigma_2[rest] * ((prime_power * prime_power * p * p - 1) // (p * p - 1))
        sigma_o = tuple(Fraction(sigma_2[odd_part(n)], odd_part(n) ** 2) for n in range(1, n_max + 1))
        logger.debug(f"Built divisor table up to n={n_max}")
        return cls(n_max=n_max, sigma_o_minus2=sigma_o, sigma_2=tuple(sigma_2[1:]))

    def sigma_o_minus2_at(self, n: int) -> Fraction:
        return self.sigma_o_minus2[n - 1]

    def sigma_2_at(self, n: int) -> int:
        return self.sigma_2[n - 1]


@lru_cache(maxsize=8)
def sigma_o_minus2_array(l_max: int) -> np.ndarray:
    """Floating σ₋₂ᵒ(l) for 0 ≤ l ≤ l_max (index 0 unused)."""
    sums = np.zeros(l_max + 1)
    for d in range(1, l_max + 1, 2):
        sums[d::d] += 1.0 / (d * d)
    sums[0] = 0.0
    sums.setflags(write=False)
    return sums


def _series_length(radius: float, tol: float) -> int:
    if radius == 0:
        return 1
    target = 1e-3 * tol
    count = int(math.ceil(math.log(target) / math.log(radius))) + 8
    # Grow until n²|z|ⁿ is negligible as well
    while count * count * radius ** count > target * (1.0 - radius):
        count = int(1.5 * count) + 1
        if count > constants.MAX_TERMS:
            raise ConvergenceError(f"Power series at |z|={radius} needs more than {constants.MAX_TERMS} terms")
    return count


def _check_disk(z: complex, name: str) -> None:
    if abs(z) >= 1.0:
        raise DomainError(f"{name} diverges for |z| >= 1, got |z|={abs(z):.6g}")


def _power_sum(z: complex, weights_power: int, tol: float) -> complex:
    count = _series_length(abs(z), tol)
    n = np.arange(1, count + 1)
    sigma = sigma_o_minus2_array(count)[1:]
    powers = np.exp(n * cmath.log(z))
    terms = n.astype(float) ** weights_power * sigma * powers
    tail = abs(terms[-1]) / (1.0 - abs(z))
    total = complex(np.sum(terms))
    if tail > tol * max(1.0, abs(total)):
        raise ConvergenceError(f"Power series tail {tail:.3g} exceeds tolerance", best_estimate=total, abs_err=tail)
    return total


def s_generating(z: complex, tol: float = constants.DEFAULT_TOL) -> complex:
    """4 Σ n σ₋₂ᵒ(n) zⁿ, the generating function 𝒮(−z)."""
    z = complex(z)
    _check_disk(z, "s_generating")
    if z == 0:
        return 0j
    return 4.0 * _power_sum(z, 1, tol)


def s_generating_derivative(z: complex, tol: float = constants.DEFAULT_TOL) -> complex:
    """z d/dz of the generating function: 4 Σ n² σ₋₂ᵒ(n) zⁿ."""
    z = complex(z)
    _check_disk(z, "s_generating_derivative")
    if z == 0:
        return 0j
    return 4.0 * _power_sum(z, 2, tol)


def s_generating_derivative_lambert(z: complex, tol: float = constants.DEFAULT_TOL) -> complex:
    """−4 Σ n²/(zⁿ − z⁻ⁿ), written as 4 Σ n² zⁿ/(1 − z²ⁿ)."""
    z = complex(z)
    _check_disk(z, "s_generating_derivative_lambert")
    if z == 0:
        return 0j
    count = _series_length(abs(z), tol)
    n = np.arange(1, count + 1)
    powers = np.exp(n * cmath.log(z))
    return complex(4.0 * np.sum(n.astype(float) ** 2 * powers / (1.0 - powers * powers)))


def lambert_L(q: complex, tol: float = constants.DEFAULT_TOL) -> complex:
    """ℒ_q(2,1) = Σ n² qⁿ/(1 − qⁿ)."""
    q = complex(q)
    _check_disk(q, "lambert_L")
    if q == 0:
        return 0j
    count = _series_length(abs(q), tol)
    n = np.arange(1, count + 1)
    powers = np.exp(n * cmath.log(q))
    terms = n.astype(float) ** 2 * powers / (1.0 - powers)
    return complex(np.sum(terms))


def q_derivative_identity_residual(q: complex, tol: float = constants.DEFAULT_TOL) -> complex:
    """q∂_q𝒮(q) − 4ℒ_{−q} + 4ℒ_{q²}, with 𝒮(q) = s_generating(−q)."""
    q = complex(q)
    return s_generating_derivative(-q, tol) - 4.0 * lambert_L(-q, tol) + 4.0 * lambert_L(q * q, tol)


def fig1_table(n_max: int = constants.FIG1_N_MAX) -> ScanTable:
    table = DivisorTable.build(n_max)
    rows = tuple(
        (n, float(sigma), float(n * sigma))
        for n, sigma in enumerate(table.sigma_o_minus2, start=1)
    )
    return ScanTable(
        headers=("n", "sigma_o_minus2", "n_sigma_o_minus2"),
        rows=rows,
        title="Odd-divisor sum sigma_o_minus2(n)",
        plot_columns=("sigma_o_minus2",)
    )


def check_bounds(table: DivisorTable) -> bool:
    """1 ≤ σ₋₂ᵒ(n) < π²/8 for every entry."""
    return all(1 <= sigma < SIGMA_UPPER_BOUND for sigma in table.sigma_o_minus2)
