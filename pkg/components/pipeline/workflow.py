""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import cmath
import math
import constants
import numpy as np

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, List
from components import special_fn
from components.boundary import (
    RationalAngle, SingularityLaw, barnes_alternating_sum, classify_boundary_point, combination_residual, cosine_sum_rule,
    dominant_sum, real_singular_sum, reflection_residual, regular_sum_closed, regular_sum_series,
    singular_sum, singularity_fit
)
from components.divisor import (
    DivisorTable, check_bounds, check_sigma_identities, fig1_table, q_derivative_identity_residual,
    s_generating_derivative, s_generating_derivative_lambert
)
from components.legfn_cs import (
    cs_identity_residual, gamma_hat, leg_asymptotic, leg_asymptotic_terms, leg_p, leg_p_from_gamma_hat,
    log_product_P_ratio, log_product_P_sine, one_point, sqrt_product
)
from components.mordell import fig2_scan, j_dual, j_mellin_barnes, j_quadrature, j_reflection_residual, oscillation_rate
from components.resurgence import borel_pole_coeffs, borel_transform, laurent_limit, lateral_difference, stokes_discontinuity
from components.v_function import (
    evaluate_v, route_spread, v_borel_laplace, v_integral, v_series_bernoulli_coeff, v_series_coeff,
    v_series_dirichlet_coeff, v_series_truncated
)

SUITES = ("all", "v", "boundary", "divisor", "resurgence", "cs", "mordell")
GLAISHER = 1.2824271291006226
RANDOM_SEED = 20240
FIT_GRID = np.geomspace(1e-4, 1e-1, 31)


@dataclass(frozen=True)
class Check:
    """One invariant: `measure` returns a deviation that passes when it is <= threshold."""
    name: str
    measure: Callable[[], float]
    threshold: float


def _relative(a: complex, b: complex) -> float:
    return abs(a - b) / max(abs(b), 1e-300)


def _fit_error(x: RationalAngle, law: SingularityLaw) -> float:
    fit = singularity_fit(x, FIT_GRID)
    return fit.relative_error if fit.law is law else math.inf


def _v_checks(bound: Callable[[float], float], work_tol: float) -> List[Check]:
    test_points = (2.0, 3.0, 5.0, 10.0, 1 + 1j, 3.0 * cmath.exp(1j * math.pi / 3))

    def route_agreement() -> float:
        return max(route_spread(evaluate_v(N, work_tol, "all")) for N in test_points)

    def coefficient_forms() -> float:
        deviations = []
        for n in range(1, 13):
            c = v_series_coeff(n)
            deviations.append(_relative(v_series_bernoulli_coeff(n), c))
            deviations.append(_relative(v_series_dirichlet_coeff(n), c))
        return max(deviations)

    def superasymptotic() -> float:
        truncated = v_series_truncated(1.5)
        return abs(truncated.value - v_integral(1.5, work_tol).value) / truncated.abs_err

    def anchors() -> float:
        glaisher = special_fn.barnes_constants().glaisher_log
        return max(
            abs(complex(special_fn.zeta(-1.0)) + 1.0 / 12.0),
            abs(complex(special_fn.zeta(2.0)) - math.pi ** 2 / 6.0),
            abs(glaisher - math.log(GLAISHER))
        )

    return [
        # Four exact routes at the standard points
        Check("v: four-route agreement", route_agreement, bound(1e-9)),
        # Three coefficient forms up to n=12
        Check("v: coefficient forms agree", coefficient_forms, bound(1e-12)),
        # Closed-form leading coefficient
        Check("v: c_1 = -pi^2/384", lambda: abs(v_series_coeff(1) + math.pi ** 2 / 384.0), bound(1e-14)),
        # Optimal truncation error measured in units of the first omitted term
        Check("v: superasymptotic truncation at N=1.5", superasymptotic, 10.0),
        # Special-function anchors
        Check("special_fn: zeta and Glaisher anchors", anchors, bound(1e-12))
    ]


def _boundary_checks(bound: Callable[[float], float], work_tol: float) -> List[Check]:
    def reflection_grid() -> float:
        residuals = [
            abs(reflection_residual(x, sign * y, work_tol))
            for x in (0.1, 0.3, 0.5, 0.7, 0.9)
            for y in (0.05, 0.1, 0.3, 0.6, 1.0)
            for sign in (1.0, -1.0)
        ]
        return max(residuals)

    def barnes_sum() -> float:
        g_product = special_fn.barnes_constants().g_product
        return abs(barnes_alternating_sum(work_tol) - (math.log(2.0) + 2.0 * math.log(g_product)))

    def regular_forms() -> float:
        points = ((0.2, 0.3), (0.7, 0.5), (-0.4, 0.1))
        return max(abs(regular_sum_series(x, y, work_tol) - regular_sum_closed(x, y)) for x, y in points)

    def cosine_rule() -> float:
        return max(
            abs(cosine_sum_rule(p, q) / 2.0 ** (2 * p - 1) - 1.0)
            for p in range(1, 9) for q in range(0, 6)
        )

    def denominator_scaling() -> float:
        fifth = singularity_fit(RationalAngle(1, 5), FIT_GRID).fitted_coeff
        seventh = singularity_fit(RationalAngle(1, 7), FIT_GRID).fitted_coeff
        return abs((fifth / seventh) / (343.0 / 125.0) - 1.0)

    def all_small_denominators() -> float:
        errors = []
        for den in range(2, constants.FIT_MAX_DENOMINATOR + 1):
            for num in range(1, den):
                if math.gcd(num, den) == 1:
                    x = RationalAngle(num, den)
                    errors.append(_fit_error(x, classify_boundary_point(x).law))
        return max(errors)

    def power_bound() -> float:
        rng = np.random.default_rng(RANDOM_SEED)
        xs = rng.uniform(0.0, 2.0, 1000)
        ys = rng.uniform(0.01, 1.0, 1000)
        return max(abs(singular_sum(x, y, work_tol)) * 2.0 * y * y for x, y in zip(xs, ys))

    def dominant_difference() -> float:
        x = RationalAngle(3, 8)
        ys = np.geomspace(1e-1, 1e-4, 13)
        gaps = [abs(real_singular_sum(x, y, work_tol) - dominant_sum(x, y)) for y in ys]
        return max(gaps[1:]) / (2.0 * max(gaps[0], 1.0))

    return [
        # Reflection identity on a grid covering both signs of y
        Check("boundary: reflection identity grid", reflection_grid, bound(1e-8)),
        # Alternating Barnes-constant sum
        Check("boundary: Barnes alternating sum", barnes_sum, bound(1e-10)),
        # Regular sum, term by term against the closed form
        Check("boundary: regular sum closed form", regular_forms, bound(1e-12)),
        Check("boundary: combination identity", lambda: abs(combination_residual(0.2, 0.3)), bound(1e-12)),
        Check("boundary: cosine sum rule", cosine_rule, bound(1e-10)),
        # Leading small-y laws
        Check("boundary: log law at x=1/2", lambda: _fit_error(RationalAngle(1, 2), SingularityLaw.LOG_Y), 0.02),
        Check("boundary: 1/y^2 law at x=1/3", lambda: _fit_error(RationalAngle(1, 3), SingularityLaw.INVERSE_Y_SQUARED), 0.02),
        Check("boundary: 1/5 vs 1/7 scaling", denominator_scaling, 0.03),
        Check(f"boundary: laws for denominators up to {constants.FIT_MAX_DENOMINATOR}", all_small_denominators, 0.05),
        Check("boundary: power-law bound", power_bound, 1.0),
        Check("boundary: dominant-sum difference stays bounded", dominant_difference, 1.0)
    ]


def _divisor_checks(bound: Callable[[float], float], work_tol: float) -> List[Check]:
    def identities() -> float:
        return float(sum(not check_sigma_identities(n) for n in range(1, 10_001)))

    def multiplicativity() -> float:
        table = DivisorTable.build(10_000)
        failures = 0
        for m in range(2, 101):
            for n in range(m + 1, 10_000 // m + 1):
                if math.gcd(m, n) == 1:
                    product = table.sigma_o_minus2_at(m) * table.sigma_o_minus2_at(n)
                    failures += table.sigma_o_minus2_at(m * n) != product
        return float(failures)

    def bounds() -> float:
        table = DivisorTable.build(100_000)
        dyadic = all(table.sigma_o_minus2_at(2 ** k) == Fraction(1) for k in range(17))
        return float(not (check_bounds(table) and dyadic))

    def lambert_identity() -> float:
        rng = np.random.default_rng(RANDOM_SEED)
        radii = 0.7 * np.sqrt(rng.uniform(0.0, 1.0, 20))
        angles = rng.uniform(0.0, 2.0 * math.pi, 20)
        return max(abs(q_derivative_identity_residual(r * cmath.exp(1j * a), work_tol)) for r, a in zip(radii, angles))

    def fig1_bounds() -> float:
        table = fig1_table()
        sigma = table.column("sigma_o_minus2")
        inside = len(table.rows) == constants.FIG1_N_MAX and np.all((sigma >= 1.0) & (sigma < math.pi ** 2 / 8))
        return float(not inside)

    return [
        # Exact rational identities
        Check("divisor: n^2 sigma identities for n <= 10^4", identities, 0.0),
        Check("divisor: multiplicativity for mn <= 10^4", multiplicativity, 0.0),
        Check("divisor: bounds for n <= 10^5", bounds, 0.0),
        # Generating function and Lambert series
        Check("divisor: Lambert identity in |q| <= 0.7", lambert_identity, bound(1e-10)),
        Check(
            "divisor: derivative as Lambert series",
            lambda: abs(s_generating_derivative(0.3, work_tol) - s_generating_derivative_lambert(0.3, work_tol)),
            bound(1e-11)
        ),
        Check("divisor: fig1 table inside bounds", fig1_bounds, 0.0)
    ]


def _resurgence_checks(bound: Callable[[float], float], work_tol: float) -> List[Check]:
    def pole_limits() -> float:
        deviations = []
        for l in (1, 2, 3):
            limits = [laurent_limit(l, 1e-4, angle) for angle in (0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi)]
            deviations.append(abs(sum(limits) / 4.0 - borel_pole_coeffs(l).double_pole_coeff))
        return max(deviations)

    def laplace_identity() -> float:
        return max(abs(v_borel_laplace(N, 0.0, work_tol).value - v_integral(N, work_tol).value) for N in (3.0, 5.0, 10.0))

    def stokes_jump() -> float:
        return max(_relative(lateral_difference(N, tol=work_tol), stokes_discontinuity(N)) for N in (2 - 2j, 1 - 1.5j, 3 - 1j))

    def small_t() -> float:
        return _relative(borel_transform(1e-3) / 1e-3, -math.pi ** 2 / 384.0)

    return [
        # Double-pole coefficients against the numeric Laurent limit
        Check("resurgence: double-pole limits l=1,2,3", pole_limits, 1e-6),
        Check("resurgence: small-t slope", small_t, 1e-6),
        Check("resurgence: oddness", lambda: abs(borel_transform(-0.7 + 0.4j) + borel_transform(0.7 - 0.4j)), 1e-13),
        # Laplace transforms
        Check("resurgence: Laplace of Borel transform", laplace_identity, bound(1e-10)),
        Check("resurgence: lateral difference vs discontinuity", stokes_jump, 1e-4)
    ]


def _cs_checks(bound: Callable[[float], float], work_tol: float) -> List[Check]:
    def leg_routes() -> float:
        deviations = []
        for N in (2, 3, 5, 8):
            for j in range(1, 2 * N):
                z_value = cmath.exp(1j * math.pi * j / N)
                finite = leg_p(z_value, N).value
                deviations.append(_relative(sqrt_product(cmath.exp(0.5j * math.pi * j / N), N), finite))
                deviations.append(_relative(leg_p_from_gamma_hat(z_value, N, work_tol).value, finite))
        return max(deviations)

    def p_routes() -> float:
        return max(abs(log_product_P_ratio(N) - log_product_P_sine(N)) for N in range(1, 31))

    def one_point_match() -> float:
        deviations = []
        for N in (1, 2, 3, 4, 6, 8, 12, 16):
            pair = one_point(N, work_tol)
            deviations.append(_relative(pair.via_v, pair.via_P))
        return max(deviations)

    def asymptotic_truncation() -> float:
        N, k, order = 40, 3, 3
        omitted = abs(leg_asymptotic_terms(N, k, order + 1)[-1])
        error = abs(leg_asymptotic(N, k, order) - gamma_hat(N, k, work_tol))
        return error / (omitted + 1e-12)

    return [
        # Leg function routes at every root of unity
        Check("cs: leg function three-route agreement", leg_routes, bound(1e-10)),
        Check("cs: P route agreement for N <= 30", p_routes, bound(1e-9)),
        Check("cs: P = Z^2(2N,2N)/Z^8(N,N) for N <= 50", lambda: max(cs_identity_residual(N) for N in range(1, 51)), bound(1e-9)),
        # One-point function from v and from P
        Check("cs: one-point function routes", one_point_match, bound(1e-8)),
        Check("cs: asymptotic truncation at N=40", asymptotic_truncation, 1.0)
    ]


def _mordell_checks(bound: Callable[[float], float], work_tol: float) -> List[Check]:
    def quadrature_vs_barnes() -> float:
        return max(
            abs(j_quadrature(t, work_tol).value - j_mellin_barnes(t, work_tol).value) for t in (0.3, 1.0, 2.0)
        )

    def barnes_vs_dual() -> float:
        return max(abs(j_mellin_barnes(t, work_tol).value - j_dual(t).value) for t in (-0.2, -1.0, -math.pi, -5.0))

    def fan_continuity() -> float:
        h = 1e-3
        gaps = []
        for angle in (0.5 * math.pi, math.pi):
            values = [j_mellin_barnes(cmath.exp(1j * (angle + s * h)), work_tol, arg=angle + s * h).value for s in (-1, 0, 1)]
            gaps.append(abs(values[0] - 2.0 * values[1] + values[2]))
        return max(gaps)

    def truncation_stability() -> float:
        coarse = fig2_scan(points=50, k_max=800)
        fine = fig2_scan(points=50, k_max=1200)
        return float(np.max(np.abs(coarse.column("re_J") - fine.column("re_J")) + np.abs(coarse.column("im_J") - fine.column("im_J"))))

    def oscillation_contrast() -> float:
        span = constants.FIG2_Y_RANGE[1] - constants.FIG2_Y_RANGE[0]
        calm = oscillation_rate(fig2_scan(sign=1))
        wild = oscillation_rate(fig2_scan(sign=-1))
        return 10.0 * max(calm, 1.0 / span) / max(wild, 1e-300)

    return [
        # Three routes on their overlaps
        Check("mordell: quadrature vs Mellin-Barnes", quadrature_vs_barnes, bound(1e-10)),
        Check("mordell: Mellin-Barnes vs dual decomposition", barnes_vs_dual, bound(1e-8)),
        Check("mordell: reflection residual", lambda: abs(j_reflection_residual(-0.5, 0.3, work_tol)), bound(1e-8)),
        Check("mordell: continuity across Arg t = pi/2 and pi", fan_continuity, 1e-5),
        # Scans toward the Stokes directions
        Check("mordell: k_max 800 vs 1200", truncation_stability, bound(1e-8)),
        Check("mordell: oscillation toward Arg t = 3pi/2", oscillation_contrast, 1.0)
    ]


def get_verification_suites(tol: float = constants.DEFAULT_TOL) -> Dict[str, List[Check]]:
    """Invariant checks per suite; thresholds never drop below `tol`."""
    work_tol = max(constants.MIN_TOL, 1e-2 * tol)

    def bound(target: float) -> float:
        return max(target, tol)

    suites = {
        "v": _v_checks(bound, work_tol),
        "boundary": _boundary_checks(bound, work_tol),
        "divisor": _divisor_checks(bound, work_tol),
        "resurgence": _resurgence_checks(bound, work_tol),
        "cs": _cs_checks(bound, work_tol),
        "mordell": _mordell_checks(bound, work_tol)
    }
    suites["all"] = [check for name in SUITES[1:] for check in suites[name]]
    return suites
