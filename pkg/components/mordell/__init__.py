""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import cmath
import math
import sys
import constants
import numpy as np

from dataclasses import dataclass
from enum import Enum
from typing import NamedTuple, Optional, Tuple
from scipy import special
from aws_lambda_powertools import Logger
from components import special_fn
from components.errors import DomainError
from components.quadrature import integrate_half_line, integrate_vertical_line
from components.storage import ScanTable

logger = Logger(service=constants.SERVICE_NAME, level=constants.LOG_LEVEL, stream=sys.stderr)

LN2 = math.log(2.0)
LN3 = math.log(3.0)
DUAL_PREFACTOR = math.pi / math.sqrt(12.0)
TAIL_EXPONENT = 36.0
MB_ARG_LIMIT = 1.5 * math.pi - constants.MORDELL_ARG_MARGIN


class MordellRoute(str, Enum):
    QUADRATURE = "Quadrature"
    MELLIN_BARNES = "MellinBarnes"
    DUAL_DECOMPOSITION = "DualDecomposition"


@dataclass(frozen=True)
class MordellEvaluation:
    t: complex
    value: complex
    route: MordellRoute
    k_max: Optional[int] = None
    abs_err: float = 0.0


class DualComponents(NamedTuple):
    """A + iB from the Ψ(1/q) term, Ã + iB̃ from the Ψ(1/q̃) term."""
    a: float
    b: float
    a_dual: float
    b_dual: float


def j_quadrature(t: complex, tol: float = constants.DEFAULT_TOL) -> MordellEvaluation:
    """J(t) = ∫₀^∞ e^{−3u²/t} sinh u/sinh 3u du for Re t > 0."""
    t = complex(t)
    if t.real <= 0:
        raise DomainError(f"j_quadrature requires Re t > 0, got t={t}")
    inverse = 1.0 / t

    def integrand(u: np.ndarray) -> np.ndarray:
        # sinh u/sinh 3u written with decaying exponentials only
        ratio = np.exp(-2.0 * u) * np.expm1(-2.0 * u) / np.expm1(-6.0 * u)
        return np.exp(-3.0 * u * u * inverse) * ratio

    result = integrate_half_line(integrand, tol)
    return MordellEvaluation(t=t, value=result.value, route=MordellRoute.QUADRATURE, abs_err=result.abs_err)


def mellin_barnes_integrand(u: np.ndarray, log_t: complex) -> np.ndarray:
    """½ t^{(1−u)/2} Γ((1−u)/2)Γ(u)[ζ(u,⅓) − ζ(u,⅔)]/(2ᵘ 3^{½+u/2})."""
    log_magnitude = (
        special.loggamma(0.5 * (1.0 - u)) + special.loggamma(u)
        + 0.5 * (1.0 - u) * log_t - u * LN2 - (0.5 + 0.5 * u) * LN3
    )
    hurwitz = special_fn.hurwitz_zeta(u, 1.0 / 3.0) - special_fn.hurwitz_zeta(u, 2.0 / 3.0)
    return 0.5 * np.exp(log_magnitude) * hurwitz


def j_mellin_barnes(
    t: complex,
    tol: float = constants.DEFAULT_TOL,
    re_u: float = 0.5,
    arg: Optional[float] = None
) -> MordellEvaluation:
    """J(t) from its Mellin–Barnes integral, valid for |Arg t| < 3π/2.

    `arg` overrides the principal argument of t, which reaches the sheet
    π < Arg t < 3π/2 of the continuation through the upper half-plane.
    """
    t = complex(t)
    if t == 0:
        raise DomainError("j_mellin_barnes is undefined at t=0")
    if not 0.0 < re_u < 1.0:
        raise DomainError(f"The contour must satisfy 0 < Re u < 1, got {re_u}")
    angle = cmath.phase(t) if arg is None else arg
    if abs(angle) > MB_ARG_LIMIT:
        raise DomainError(f"j_mellin_barnes requires |Arg t| <= 3pi/2 - {constants.MORDELL_ARG_MARGIN}, got {angle:.4f}")
    log_t = complex(math.log(abs(t)), angle)
    result = integrate_vertical_line(lambda u: mellin_barnes_integrand(u, log_t), re_u, tol)
    return MordellEvaluation(t=t, value=result.value, route=MordellRoute.MELLIN_BARNES, abs_err=result.abs_err)


def auto_k_max(t: complex, cap: int = constants.FIG2_K_MAX) -> int:
    """Smallest k with −Re(t)(3k+2)²/3 > 36, capped."""
    decay = -complex(t).real
    if decay <= 0:
        raise DomainError(f"The false theta series needs Re t < 0, got t={t}")
    k = int(math.ceil((math.sqrt(3.0 * TAIL_EXPONENT / decay) - 2.0) / 3.0))
    return max(1, min(k + 1, cap))


def psi_false_theta(t: complex, k_max: int) -> complex:
    """Ψ²₃ = Σ_{k<k_max} (e^{t(3k+1)²/3} − e^{t(3k+2)²/3}) for Re t < 0."""
    t = complex(t)
    if t.real >= 0:
        raise DomainError(f"The false theta series diverges for Re t >= 0, got t={t}")
    if k_max < 1:
        raise DomainError(f"psi_false_theta needs k_max >= 1, got {k_max}")
    k = np.arange(k_max, dtype=float)
    first = np.exp(t * (3.0 * k + 1.0) ** 2 / 3.0)
    second = np.exp(t * (3.0 * k + 2.0) ** 2 / 3.0)
    return complex(np.sum(first - second))


def _check_dual(t: complex, k_max: Optional[int]) -> Tuple[complex, int]:
    t = complex(t)
    if t.real >= 0:
        raise DomainError(f"The dual decomposition needs Re t < 0, got t={t}")
    dual = math.pi ** 2 / t
    if k_max is None:
        k_max = max(auto_k_max(t, constants.MAX_TERMS), auto_k_max(dual, constants.MAX_TERMS))
    return t, k_max


def dual_components(t: complex, k_max: Optional[int] = None) -> DualComponents:
    t, k_max = _check_dual(t, k_max)
    theta_term = -t * cmath.sqrt(math.pi / (-12.0 * t)) * psi_false_theta(t, k_max)
    dual_term = DUAL_PREFACTOR * psi_false_theta(math.pi ** 2 / t, k_max)
    return DualComponents(theta_term.real, theta_term.imag, dual_term.real, dual_term.imag)


def j_dual(t: complex, sign: int = 1, k_max: Optional[int] = None) -> MordellEvaluation:
    """J(t ± i0) = ∓it√(π/(−12t))Ψ²₃(1/q) + (π/√12)Ψ²₃(1/q̃), continued to Re t < 0."""
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    t, k_max = _check_dual(t, k_max)
    parts = dual_components(t, k_max)
    value = sign * 1j * complex(parts.a, parts.b) + complex(parts.a_dual, parts.b_dual)
    return MordellEvaluation(t=t, value=value, route=MordellRoute.DUAL_DECOMPOSITION, k_max=k_max)


def j_reflection_residual(x: float, y: float, tol: float = constants.DEFAULT_TOL) -> complex:
    """J(x+iy) + J(x−iy) − 2Ã(x,y) − 2iA(x,y) on the upper sheet."""
    t = complex(x, y)
    if not (x < 0 < y):
        raise DomainError(f"j_reflection_residual needs x < 0 < y, got ({x}, {y})")
    upper = j_mellin_barnes(t, tol)
    mirrored = j_mellin_barnes(t.conjugate(), tol, arg=cmath.phase(t.conjugate()) + 2.0 * math.pi)
    parts = dual_components(t)
    return upper.value + mirrored.value - 2.0 * parts.a_dual - 2j * parts.a


def fig2_scan(
    re_t: float = constants.FIG2_RE_T,
    y_range: Tuple[float, float] = constants.FIG2_Y_RANGE,
    points: int = constants.FIG2_POINTS,
    k_max: int = constants.FIG2_K_MAX,
    sign: int = 1,
    branch: int = 1
) -> ScanTable:
    """Dual-decomposition values along t = re_t + sign·iy, y over y_range.

    `branch_sign` records the half-plane sign; `branch` records the ±i0 decomposition.
    """
    if re_t >= 0:
        raise DomainError(f"fig2_scan needs re_t < 0, got {re_t}")
    if points < 2 or not 0 < y_range[0] < y_range[1]:
        raise DomainError(f"fig2_scan needs points >= 2 and 0 < y_lo < y_hi, got {points}, {y_range}")
    if sign not in (1, -1) or branch not in (1, -1):
        raise DomainError("sign and branch must each be +1 or -1")
    ys = np.linspace(y_range[0], y_range[1], points)
    rows = []
    for y in ys:
        value = j_dual(complex(re_t, sign * y), branch, k_max).value
        rows.append((float(y), value.real, value.imag, sign, branch))
    logger.info(f"Mordell scan at Re t={re_t}, sign {sign:+d}, branch {branch:+d}: {points} points, k_max={k_max}")
    return ScanTable(
        headers=("y", "re_J", "im_J", "branch_sign", "branch"),
        rows=rows,
        title=f"J(t) at Re t={re_t:g}, sign {sign:+d}",
        plot_columns=("re_J", "im_J")
    )


def oscillation_rate(table: ScanTable, y_lo: Optional[float] = None, y_hi: Optional[float] = None) -> float:
    """Sign changes of Re J per unit y inside [y_lo, y_hi]."""
    ys = table.column("y")
    values = table.column("re_J")
    lo = ys.min() if y_lo is None else y_lo
    hi = ys.max() if y_hi is None else y_hi
    window = (ys >= lo) & (ys <= hi)
    if np.count_nonzero(window) < 2 or hi <= lo:
        raise DomainError(f"Window [{lo}, {hi}] holds fewer than two scan points")
    signs = np.sign(values[window])
    changes = np.count_nonzero(signs[1:] * signs[:-1] < 0)
    return changes / (hi - lo)
