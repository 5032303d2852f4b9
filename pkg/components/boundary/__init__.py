""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import cmath
import math
import sys
import constants
import numpy as np

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Union
from scipy import special
from aws_lambda_powertools import Logger
from components import special_fn
from components.errors import ConvergenceError, DomainError
from components.storage import ScanTable
from components.v_function import evaluate_v

logger = Logger(service=constants.SERVICE_NAME, level=constants.LOG_LEVEL, stream=sys.stderr)

ZETA_3 = float(special.zeta(3.0))
POWER_BOUND_COEFF = 0.5


class SingularityKind(str, Enum):
    ODD_OVER_ODD = "OddOverOdd"
    DYADIC_MIXED = "DyadicMixed"
    EVEN_OVER_ODD = "EvenOverOdd"
    UNCLASSIFIED = "Unclassified"


class SingularityLaw(str, Enum):
    INVERSE_Y_SQUARED = "InverseYSquared"
    LOG_Y = "LogY"


@dataclass(frozen=True)
class RationalAngle:
    """Boundary point x = num/den, stored reduced with den > 0."""
    num: int
    den: int

    def __post_init__(self) -> None:
        if self.den == 0:
            raise DomainError("RationalAngle needs a nonzero denominator")
        g = math.gcd(self.num, self.den)
        sign = -1 if self.den < 0 else 1
        object.__setattr__(self, "num", sign * self.num // g)
        object.__setattr__(self, "den", sign * self.den // g)

    @classmethod
    def parse(cls, text: str) -> "RationalAngle":
        try:
            num, _, den = text.partition("/")
            return cls(int(num), int(den or 1))
        except ValueError:
            raise DomainError(f"Cannot read '{text}' as a fraction p/q")

    def __float__(self) -> float:
        return self.num / self.den


@dataclass(frozen=True)
class SingularityClass:
    kind: SingularityKind
    predicted_coeff: float
    law: SingularityLaw
    dyadic_power: int = 0
    odd_denominator: int = 1

    def law_value(self, y: float) -> float:
        if self.law is SingularityLaw.LOG_Y:
            return self.predicted_coeff * math.log(abs(y))
        return self.predicted_coeff / (y * y)


@dataclass(frozen=True)
class SingularityFit:
    fitted_coeff: float
    law: SingularityLaw
    predicted: SingularityClass
    relative_residual: float

    @property
    def relative_error(self) -> float:
        return abs(self.fitted_coeff / self.predicted.predicted_coeff - 1.0)


AngleLike = Union[float, RationalAngle]


def _orient(x: float, y: float):
    if y == 0:
        raise DomainError(f"y=0 lies on the natural boundary itself (x={x})")
    # S(x,y) = S(−x,−y), so only y > 0 is ever summed
    return (x, y) if y > 0 else (-x, -y)


def _singular_terms(x: float, y: float, tol: float) -> np.ndarray:
    r = math.exp(-math.pi * y)
    bound = 4.0 / (tol * (1.0 - r) ** 2 * (1.0 - r * r))
    m_max = max(1, int(math.ceil(math.log(bound) / (math.pi * y))))
    m_max = min(m_max, int(constants.UNDERFLOW_EXPONENT / (math.pi * y)) + 1)
    if m_max > constants.SINGULAR_SUM_MAX_TERMS:
        raise ConvergenceError(f"Singular sum at y={y:g} needs {m_max} terms")
    m = np.arange(1, m_max + 1, 2, dtype=float)
    h = m * math.pi * y
    theta = m * math.pi * x
    decay = np.exp(-h)
    # 1 + u with u = e^{−h + iθ}, kept accurate where u approaches −1
    one_plus_u = (-np.expm1(-h) + 2.0 * decay * np.cos(theta / 2.0) ** 2) + 1j * decay * np.sin(theta)
    u = decay * np.exp(1j * theta)
    return -4.0 * u / (m * one_plus_u ** 2)


def singular_sum(x: AngleLike, y: float, tol: float = constants.DEFAULT_TOL) -> complex:
    """𝒮(x,y) = −Σ_{k≥0} 4w^{2k+1}/((2k+1)(w^{2k+1}+1)²), w = e^{−iπx}e^{π|y|}."""
    x, y = _orient(float(x), y)
    terms = _singular_terms(x, y, tol)
    logger.debug(f"Singular sum at ({x}, {y}) used {terms.size} odd terms")
    return complex(np.sum(terms))


def real_singular_sum(x: AngleLike, y: float, tol: float = constants.DEFAULT_TOL) -> float:
    return singular_sum(x, y, tol).real


def imag_singular_sum(x: AngleLike, y: float, tol: float = constants.DEFAULT_TOL) -> float:
    return singular_sum(x, y, tol).imag


def regular_sum_closed(x: AngleLike, y: float) -> complex:
    """𝒮ᵣ(x,y) from its logarithmic closed form, y < 0 through (x,y) → (−x,−y)."""
    x, y = _orient(float(x), y)
    q = cmath.exp(1j * math.pi * x - math.pi * y)
    q2 = q * q
    return (cmath.log(1 + q) - cmath.log(1 - q)) - 0.5 * (cmath.log(1 + q2) - cmath.log(1 - q2))


def regular_sum_series(x: AngleLike, y: float, tol: float = constants.DEFAULT_TOL) -> complex:
    """Direct odd-power sum Σ (2qᵐ − q²ᵐ)/m of the regular part."""
    x, y = _orient(float(x), y)
    r = math.exp(-math.pi * y)
    count = max(1, int(math.ceil(math.log(tol * (1.0 - r)) / math.log(r))))
    m = np.arange(1, count + 2, 2, dtype=float)
    powers = np.exp(m * (1j * math.pi * x - math.pi * y))
    return complex(np.sum((2.0 * powers - powers * powers) / m))


def _reduce_mod_pi_i(value: complex) -> complex:
    return value - 1j * math.pi * round(value.imag / math.pi)


def combination_residual(x: AngleLike, y: float) -> complex:
    """𝒮ᵣ + ½ln[4tan²(πz/2)/(πz tan πz)] − ½ln[4i sign(y)/(πz)], reduced modulo πi."""
    z = complex(float(x), y)
    if y == 0:
        raise DomainError("combination_residual needs y != 0")
    half = cmath.tan(math.pi * z / 2.0)
    lhs = regular_sum_closed(x, y) + 0.5 * cmath.log(4.0 * half * half / (math.pi * z * cmath.tan(math.pi * z)))
    rhs = 0.5 * cmath.log(4j * math.copysign(1.0, y) / (math.pi * z))
    return _reduce_mod_pi_i(lhs - rhs)


def reflection_residual(x: AngleLike, y: float, tol: float = constants.DEFAULT_TOL) -> complex:
    """v(−x−iy) + v(x+iy) + ln[√π G²(½)G²(3/2)] − ½ln(i sign(y)/(x+iy)) − 𝒮(x,y).

    Here v(x+iy) stands for v(1/N) at 1/N = 2(x+iy).
    """
    z = complex(float(x), y)
    if y == 0:
        raise DomainError("reflection_residual needs y != 0")
    N = 1.0 / (2.0 * z)
    lhs = evaluate_v(-N, tol).value + evaluate_v(N, tol).value + special_fn.barnes_constants().reflection_log_const
    rhs = 0.5 * cmath.log(1j * math.copysign(1.0, y) / z) + singular_sum(x, y, tol)
    return lhs - rhs


def barnes_alternating_sum(tol: float = constants.DEFAULT_TOL) -> float:
    """−½ Σ_{n≥1} (−1)ⁿ (n+1) ln[n(n+2)/(n+1)²], equal to ln[2G²(½)G²(3/2)]."""
    def terms(n: np.ndarray) -> np.ndarray:
        signs = np.where(n % 2 == 0, 1.0, -1.0)
        return -0.5 * signs * (n + 1.0) * np.log1p(-1.0 / (n + 1.0) ** 2)

    value, err, count = special_fn.sum_alternating(terms, tol, n_start=1)
    logger.debug(f"Alternating Barnes sum settled after {count} terms (err {err:.3g})")
    return value.real


def classify_boundary_point(x: AngleLike) -> SingularityClass:
    """Leading small-y law of Re 𝒮(x,y) from the powers of two in num and den."""
    if not isinstance(x, RationalAngle):
        return SingularityClass(SingularityKind.UNCLASSIFIED, POWER_BOUND_COEFF, SingularityLaw.INVERSE_Y_SQUARED)
    num, den = x.num, x.den
    if den % 2 == 0:
        power = (den & -den).bit_length() - 1
        odd = den >> power
        return SingularityClass(SingularityKind.DYADIC_MIXED, den / 2.0, SingularityLaw.LOG_Y, power, odd)
    if num % 2 == 0:
        power = (num & -num).bit_length() - 1 if num else 0
        return SingularityClass(SingularityKind.EVEN_OVER_ODD, den / 2.0, SingularityLaw.LOG_Y, power, den)
    coeff = 7.0 * ZETA_3 / (2.0 * math.pi ** 2 * den ** 3)
    return SingularityClass(SingularityKind.ODD_OVER_ODD, coeff, SingularityLaw.INVERSE_Y_SQUARED, 0, den)


def cosine_sum_rule(p: int, q: int = 0) -> float:
    """Σ_{k=0}^{2^p−1} 1/(1+cos((2k+1)(2q+1)π/2^p)), which equals 2^{2p−1}."""
    if p < 1 or q < 0:
        raise DomainError(f"cosine_sum_rule needs p >= 1 and q >= 0, got p={p}, q={q}")
    k = np.arange(2 ** p, dtype=float)
    half_angle = (2 * k + 1) * (2 * q + 1) * math.pi / 2 ** (p + 1)
    return float(np.sum(0.5 / np.cos(half_angle) ** 2))


def dominant_sum(x: AngleLike, y: float) -> float:
    """Cosine-only sum −Σ_{k≤k₀} 2/((2k+1)(1+cos(2k+1)πx)), k₀ = ⌊1/(2π|y|)⌋."""
    if y == 0:
        raise DomainError("dominant_sum needs y != 0")
    k0 = int(math.floor(1.0 / (2.0 * math.pi * abs(y))))
    m = 2.0 * np.arange(k0 + 1) + 1.0
    denominators = 2.0 * np.cos(m * math.pi * float(x) / 2.0) ** 2
    if np.any(denominators < 1e-12):
        raise DomainError(f"dominant_sum at x={float(x)} meets 1 + cos = 0; x has no factor of two")
    return float(-np.sum(2.0 / (m * denominators)))


def singularity_fit(x: AngleLike, y_grid: Iterable[float], tol: float = constants.DEFAULT_TOL) -> SingularityFit:
    """Least-squares fit of Re 𝒮(x,y) as y → 0.

    The largest decade of the grid is dropped. The model a/y² + b ln|y| + c is
    fitted first; when a/y² dominates at the smallest y the law is 1/y² with
    coefficient a. Otherwise a ln|y| + c + d·y is refitted on y ≤ 1/(4 den²),
    where every residue class of the odd terms is already inside the cutoff,
    and the slope a is returned.
    """
    ys = np.abs(np.asarray(list(y_grid), dtype=float))
    if ys.size < 4 or np.min(ys) < 1e-5 or np.max(ys) / np.min(ys) < 100.0:
        raise DomainError("singularity_fit needs a grid spanning two decades with y >= 1e-5")
    ys = ys[ys <= np.max(ys) / 10.0]
    values = np.array([real_singular_sum(x, y, tol) for y in ys])
    log_y = np.log(ys)

    full = np.column_stack([ys ** -2, log_y, np.ones_like(ys)])
    scale = np.linalg.norm(full, axis=0)
    solution = np.linalg.lstsq(full / scale, values, rcond=None)[0] / scale
    y_min = float(np.min(ys))
    if abs(solution[0]) / y_min ** 2 > abs(solution[1] * math.log(y_min)):
        law, design, coeff_index = SingularityLaw.INVERSE_Y_SQUARED, full, 0
    else:
        law, coeff_index = SingularityLaw.LOG_Y, 0
        den = x.den if isinstance(x, RationalAngle) else 1
        smallest = np.sort(ys)[min(constants.FIT_MIN_POINTS, ys.size) - 1]
        window = ys <= max(constants.FIT_WINDOW_SCALE / den ** 2, smallest)
        ys, values, log_y = ys[window], values[window], log_y[window]
        columns = [log_y, np.ones_like(ys)]
        if ys.size > len(columns) + 1:
            columns.append(ys)
        design = np.column_stack(columns)
        scale = np.linalg.norm(design, axis=0)
        solution = np.linalg.lstsq(design / scale, values, rcond=None)[0] / scale
        logger.debug(f"Log fit at x={float(x)} kept {ys.size} points up to y={np.max(ys):.3g}")

    residual = float(np.linalg.norm(design @ solution - values) / np.linalg.norm(values))
    if residual > constants.FIT_MAX_RELATIVE_RESIDUAL:
        logger.error(f"Singularity fit at x={float(x)} left a {residual:.1%} residual")
        raise ConvergenceError(f"Ill-conditioned singularity fit at x={float(x)}: residual {residual:.1%}")
    fit = SingularityFit(float(solution[coeff_index]), law, classify_boundary_point(x), residual)
    logger.info(f"Singularity fit at x={float(x)}: {law.value} coefficient {fit.fitted_coeff:.6g}")
    return fit


def boundary_scan(
    x: AngleLike,
    y_values: Iterable[float],
    tol: float = constants.DEFAULT_TOL,
    threads: int = 1
) -> ScanTable:
    """Scan 𝒮(x,y), the reflection residual and the predicted law along a y grid."""
    predicted = classify_boundary_point(x)

    def row(y: float):
        value = singular_sum(x, y, tol)
        residual: Optional[float] = math.nan
        if abs(y) >= constants.REFLECTION_MIN_Y:
            try:
                residual = abs(reflection_residual(x, y, tol))
            except ConvergenceError as e:
                logger.warning(f"Reflection residual at x={float(x)}, y={y:g} left empty: {e}")
        return (y, value.real, value.imag, residual, predicted.law_value(y))

    y_values = list(y_values)
    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        rows = list(pool.map(row, y_values))
    logger.info(f"Boundary scan at x={float(x)} covered {len(rows)} points")
    return ScanTable(
        headers=("y", "re_S", "im_S", "reflection_residual", "predicted_law_value"),
        rows=rows,
        title=f"Singular sum along x={float(x):.6g}",
        log_x=True,
        plot_columns=("re_S", "predicted_law_value")
    )
