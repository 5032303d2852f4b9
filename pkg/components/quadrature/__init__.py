""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import math
import sys
import constants
import numpy as np

from dataclasses import dataclass
from typing import Callable, Tuple
from scipy.special import expit
from aws_lambda_powertools import Logger
from components.errors import ConvergenceError, DecayStallError, DomainError, NumericalOverflowError

logger = Logger(service=constants.SERVICE_NAME, level=constants.LOG_LEVEL, stream=sys.stderr)

Integrand = Callable[[np.ndarray], np.ndarray]

BASE_STEP = 0.5
ROUNDING_FACTOR = 64.0 * np.finfo(float).eps


@dataclass(frozen=True)
class QuadratureResult:
    value: complex
    abs_err: float
    nodes: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.abs_err) or self.abs_err < 0:
            raise NumericalOverflowError(f"Quadrature error estimate is not finite: {self.abs_err}")
        if self.nodes <= 0:
            raise DomainError("A quadrature result needs at least one node")


def _level_taus(level: int, lower: float, upper: float) -> Tuple[np.ndarray, float]:
    step = BASE_STEP / 2 ** level
    indices = np.arange(math.ceil(lower / step), math.floor(upper / step) + 1)
    if level > 0:
        indices = indices[indices % 2 != 0]
    return indices * step, step


def _half_line_map(taus: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    # t = exp(τ − e^{−τ}): double-exponential at 0, single-exponential at ∞
    decay = np.exp(-taus)
    nodes = np.exp(taus - decay)
    return nodes, nodes * (1.0 + decay)


def _interval_map(a: float, b: float) -> Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]]:
    width = b - a

    def transform(taus: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        # Distances to both ends via expit keep the endpoint clustering exact
        stretch = np.pi * np.sinh(taus)
        nodes = np.where(taus <= 0, a + width * expit(stretch), b - width * expit(-stretch))
        weights = width * np.pi * np.cosh(taus) * expit(stretch) * expit(-stretch)
        inside = (nodes > a) & (nodes < b)
        return nodes[inside], weights[inside]

    return transform


def _refine(
    f: Integrand,
    transform: Callable[[np.ndarray], Tuple[np.ndarray, np.ndarray]],
    tau_range: Tuple[float, float],
    tol: float,
    min_level: int,
    max_level: int,
    check_upper_tail: bool
) -> QuadratureResult:
    running = 0j
    magnitude = 0.0
    count = 0
    previous = None
    diff = math.inf
    for level in range(max_level + 1):
        taus, step = _level_taus(level, *tau_range)
        nodes, weights = transform(taus)
        values = np.asarray(f(nodes), dtype=complex)
        contributions = weights * values
        if not np.all(np.isfinite(contributions)):
            raise NumericalOverflowError("Integrand returned a non-finite value on a quadrature node")
        if level == 0 and check_upper_tail and nodes.size:
            # The integrand must be negligible at the last nodes of the half-line map
            tail = float(np.max(np.abs(contributions[-3:]))) * step
            if tail > tol:
                raise ConvergenceError(
                    f"Integrand has not decayed at t={nodes[-1]:.4g} (tail {tail:.3g})",
                    best_estimate=step * complex(contributions.sum()),
                    abs_err=tail
                )
        running += complex(contributions.sum())
        magnitude += float(np.abs(contributions).sum())
        count += nodes.size
        estimate = step * running
        floor = ROUNDING_FACTOR * step * magnitude
        if previous is not None:
            diff = abs(estimate - previous)
            if level >= min_level and diff <= max(tol * max(1.0, abs(estimate)), floor):
                logger.debug(f"Quadrature converged at level {level} with {count} nodes")
                return QuadratureResult(value=estimate, abs_err=max(diff, floor), nodes=count)
        previous = estimate
    logger.error(f"Quadrature failed to converge after level {max_level} (last change {diff:.3g})")
    raise ConvergenceError(
        f"Quadrature did not converge within {max_level} levels (last change {diff:.3g})",
        best_estimate=previous,
        abs_err=diff
    )


def integrate_half_line(
    f: Integrand,
    tol: float = constants.DEFAULT_TOL,
    min_level: int = constants.QUAD_MIN_LEVEL,
    max_level: int = constants.QUAD_MAX_LEVEL
) -> QuadratureResult:
    """Integrate f over (0, ∞) with exp-exp double-exponential nodes.

    `f` is called with numpy arrays of nodes and must return matching arrays.
    Levels halve the step and reuse every earlier node.
    """
    return _refine(f, _half_line_map, constants.HALF_LINE_TAU_RANGE, tol, min_level, max_level, True)


def integrate_interval(
    f: Integrand,
    a: float,
    b: float,
    tol: float = constants.DEFAULT_TOL,
    min_level: int = constants.QUAD_MIN_LEVEL,
    max_level: int = constants.QUAD_MAX_LEVEL
) -> QuadratureResult:
    """Tanh-sinh quadrature on the finite interval (a, b)."""
    if not b > a:
        raise DomainError(f"integrate_interval requires b > a, got a={a}, b={b}")
    bound = constants.INTERVAL_TAU_MAX
    return _refine(f, _interval_map(a, b), (-bound, bound), tol, min_level, max_level, False)


def _midpoint_sum(f: Integrand, re_u: float, height: float, step: float) -> Tuple[complex, float, int]:
    count = int(math.ceil(height / step))
    ys = (np.arange(-count, count) + 0.5) * step
    values = np.asarray(f(re_u + 1j * ys), dtype=complex)
    if not np.all(np.isfinite(values)):
        raise NumericalOverflowError(f"Contour integrand is not finite on Re u={re_u}")
    return complex(values.sum()) * step / (2.0 * np.pi), float(np.abs(values).sum()) * step, ys.size


def _edge_magnitude(f: Integrand, re_u: float, height: float) -> float:
    ys = np.concatenate([np.linspace(height - 1.0, height, 8), -np.linspace(height - 1.0, height, 8)])
    values = np.asarray(f(re_u + 1j * ys), dtype=complex)
    if not np.all(np.isfinite(values)):
        return math.inf
    return float(np.max(np.abs(values)))


def integrate_vertical_line(
    f: Integrand,
    re_u: float,
    tol: float = constants.DEFAULT_TOL,
    height: float = constants.CONTOUR_INITIAL_HEIGHT,
    max_height: float = constants.CONTOUR_MAX_HEIGHT,
    step: float = constants.CONTOUR_INITIAL_STEP,
    max_halvings: int = constants.CONTOUR_MAX_HALVINGS
) -> QuadratureResult:
    """(1/2πi)∫ f(u) du along u = re_u + iy, y ∈ ℝ.

    Midpoint nodes y = (j+1/2)h keep the real axis off the grid, so removable
    points on it are never sampled. The height doubles until the integrand has
    decayed below tol relative to the running value; the step then halves until
    two successive sums agree.
    """
    # Grow the truncation height from the measured decay
    estimate, _, _ = _midpoint_sum(f, re_u, height, step)
    edge = _edge_magnitude(f, re_u, height)
    stalls = 0
    while edge > 0.1 * tol * max(1.0, abs(estimate)):
        if height >= max_height or stalls >= 2:
            logger.error(f"Contour integrand on Re u={re_u} stalled at height {height:g} (edge {edge:.3g})")
            raise DecayStallError(
                f"Integrand on Re u={re_u} does not decay fast enough (|f|≈{edge:.3g} at |Im u|={height:g})",
                best_estimate=estimate,
                abs_err=edge * height
            )
        height *= 2.0
        try:
            next_edge = _edge_magnitude(f, re_u, height)
            estimate, _, _ = _midpoint_sum(f, re_u, height, step)
        except NumericalOverflowError as e:
            raise DecayStallError(
                f"Integrand on Re u={re_u} left the representable range at |Im u|={height:g}: {e}",
                best_estimate=estimate,
                abs_err=edge * height
            )
        stalls = stalls + 1 if height >= 64.0 and next_edge >= edge else 0
        edge = next_edge
    logger.debug(f"Contour height on Re u={re_u} settled at {height:g}")

    # Halve the step until successive sums agree
    total_nodes = 0
    diff = math.inf
    for _ in range(max_halvings):
        step /= 2.0
        refined, magnitude, count = _midpoint_sum(f, re_u, height, step)
        total_nodes += count
        diff = abs(refined - estimate)
        floor = ROUNDING_FACTOR * magnitude / (2.0 * np.pi)
        estimate = refined
        if diff <= max(tol * max(1.0, abs(refined)), floor):
            tail = edge / (2.0 * np.pi)
            return QuadratureResult(value=refined, abs_err=max(diff, floor) + tail, nodes=total_nodes)
    logger.error(f"Contour sum on Re u={re_u} did not settle (last change {diff:.3g})")
    raise ConvergenceError(
        f"Contour quadrature on Re u={re_u} did not converge (last change {diff:.3g})",
        best_estimate=estimate,
        abs_err=diff
    )
