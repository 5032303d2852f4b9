""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import cmath
import math
import sys
import constants
import numpy as np

from dataclasses import dataclass
from typing import Tuple
from aws_lambda_powertools import Logger
from components.divisor import sigma_o_minus2
from components.errors import ConvergenceError, DomainError, PoleError
from components.v_function import borel_sum, v_borel_laplace

logger = Logger(service=constants.SERVICE_NAME, level=constants.LOG_LEVEL, stream=sys.stderr)

TWO_PI_I = 2j * math.pi


@dataclass(frozen=True)
class BorelPoleData:
    l: int
    double_pole_coeff: complex
    single_pole_coeff: complex


def nearest_pole(t: complex) -> Tuple[int, float]:
    """Index l and distance of the closest Borel pole 2πil, l ≠ 0."""
    l = int(round(t.imag / (2.0 * math.pi)))
    if l == 0:
        l = 1 if t.imag >= 0 else -1
    return l, abs(t - TWO_PI_I * l)


def borel_transform(t: complex, tol: float = constants.DEFAULT_TOL) -> complex:
    """B[v](t) = (1/2t) Σ_{n≥1} (−1)ⁿ tanh²(t/4n).

    The averaged tail is recomputed with a deeper averaging pass, and the two
    passes must agree to tol relative to max(1, |B|).
    """
    t = complex(t)
    if t == 0:
        return 0j
    l, distance = nearest_pole(t)
    if distance <= constants.POLE_DISTANCE_MIN:
        raise PoleError(f"t={t} is within {distance:.3g} of the Borel pole at 2*pi*i*{l}")
    points = np.array([t])
    value = complex(borel_sum(points)[0])
    deeper = complex(borel_sum(points, constants.EULER_AVERAGING_DEPTH + 4)[0])
    err = abs(deeper - value)
    if err > tol * max(1.0, abs(deeper)):
        raise ConvergenceError(f"Borel sum at t={t} settled only to {err:.3g}", deeper, err)
    return deeper


def borel_pole_coeffs(l: int) -> BorelPoleData:
    if l == 0:
        raise DomainError("Borel poles sit at 2*pi*i*l with l != 0")
    sigma = float(sigma_o_minus2(abs(l)))
    sign = -1.0 if l % 2 else 1.0
    return BorelPoleData(
        l=l,
        double_pole_coeff=-4j * sign * l * sigma / math.pi,
        single_pole_coeff=2.0 * sign * sigma / math.pi ** 2
    )


def laurent_limit(l: int, epsilon: float, angle: float) -> complex:
    """(t − 2πil)² B(t) at t = 2πil + ε e^{iφ}."""
    offset = epsilon * cmath.exp(1j * angle)
    return offset * offset * borel_transform(TWO_PI_I * l + offset)


def stokes_discontinuity(N: complex, l_max: int = 20, cutoff: float = 1e-14) -> complex:
    """Upper-minus-lower jump across the Arg t = π/2 Stokes line.

    −(4i/π) Σ_{l=1}^{l_max} (−1)^l σ₋₂ᵒ(l)(1 + 2πilN) e^{−2πilN}, stopped early
    once a term drops below the cutoff.
    """
    N = complex(N)
    if l_max < 1:
        raise DomainError(f"stokes_discontinuity requires l_max >= 1, got {l_max}")
    if N.imag >= 0:
        logger.warning(f"Discontinuity series does not decay for Im N >= 0 (N={N})")
    total = 0j
    for l in range(1, l_max + 1):
        sign = -1.0 if l % 2 else 1.0
        term = sign * float(sigma_o_minus2(l)) * (1.0 + TWO_PI_I * l * N) * cmath.exp(-TWO_PI_I * l * N)
        total += term
        if abs(term) < cutoff:
            break
    return -4j / math.pi * total


def lateral_difference(
    N: complex,
    offset: float = constants.LATERAL_RAY_OFFSET,
    tol: float = constants.DEFAULT_TOL
) -> complex:
    """Laplace transform above the Stokes line minus the one below it."""
    upper = v_borel_laplace(N, math.pi / 2 + offset, tol)
    lower = v_borel_laplace(N, math.pi / 2 - offset, tol)
    return upper.value - lower.value
