""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import math

import numpy as np
import pytest

from scipy import special

from components import boundary, special_fn
from components.boundary import (
    RationalAngle, SingularityKind, SingularityLaw, barnes_alternating_sum, boundary_scan, classify_boundary_point,
    combination_residual, cosine_sum_rule, dominant_sum, imag_singular_sum, real_singular_sum, reflection_residual,
    regular_sum_closed, regular_sum_series, singular_sum, singularity_fit
)
from components.errors import ConvergenceError, DomainError

FIT_GRID = np.geomspace(1e-4, 1e-1, 31)


def test_rational_angle_is_reduced():
    x = RationalAngle(4, -6)
    assert (x.num, x.den) == (-2, 3)
    assert float(RationalAngle.parse("3/8")) == 0.375
    assert RationalAngle.parse("5") == RationalAngle(5, 1)
    with pytest.raises(DomainError):
        RationalAngle(1, 0)
    with pytest.raises(DomainError):
        RationalAngle.parse("one/third")


def test_classification():
    third = classify_boundary_point(RationalAngle(1, 3))
    assert third.kind is SingularityKind.ODD_OVER_ODD
    assert third.law is SingularityLaw.INVERSE_Y_SQUARED
    assert third.predicted_coeff == pytest.approx(7.0 * special.zeta(3.0) / (54.0 * math.pi ** 2), rel=1e-14)

    three_quarters = classify_boundary_point(RationalAngle(3, 4))
    assert three_quarters.kind is SingularityKind.DYADIC_MIXED
    assert three_quarters.law is SingularityLaw.LOG_Y
    assert (three_quarters.predicted_coeff, three_quarters.dyadic_power, three_quarters.odd_denominator) == (2.0, 2, 1)

    two_thirds = classify_boundary_point(RationalAngle(2, 3))
    assert two_thirds.kind is SingularityKind.EVEN_OVER_ODD
    assert two_thirds.predicted_coeff == 1.5

    assert classify_boundary_point(math.sqrt(2.0) - 1.0).kind is SingularityKind.UNCLASSIFIED


def test_singular_sum_far_from_boundary():
    assert abs(singular_sum(0.3, 5.0)) < 1e-6
    assert real_singular_sum(0.3, 5.0) == singular_sum(0.3, 5.0).real


def test_singular_sum_symmetries():
    for x, y in ((0.3, 0.2), (0.71, 0.05)):
        assert singular_sum(x, y) == singular_sum(-x, -y)
        assert abs(singular_sum(x + 2.0, y) - singular_sum(x, y)) < 1e-9
    with pytest.raises(DomainError):
        singular_sum(0.3, 0.0)


def test_power_law_bound(rng):
    xs = rng.uniform(0.0, 2.0, 2000)
    ys = rng.uniform(1e-3, 1.0, 2000)
    for x, y in zip(xs, ys):
        assert abs(singular_sum(x, y)) <= 0.5 / (y * y)


def test_imaginary_part():
    assert imag_singular_sum(0.0, 0.3) == 0.0
    assert imag_singular_sum(-0.4, 0.2) == pytest.approx(-imag_singular_sum(0.4, 0.2), abs=1e-14)
    # Im S vanishes linearly as x leaves the real axis of q
    slope_small = imag_singular_sum(1e-4, 0.5) / 1e-4
    slope_smaller = imag_singular_sum(5e-5, 0.5) / 5e-5
    assert slope_small == pytest.approx(slope_smaller, rel=1e-3)


def test_regular_sum_forms():
    for x, y in ((0.2, 0.3), (0.7, 0.5), (-0.4, 0.1), (0.2, -0.3)):
        assert abs(regular_sum_series(x, y, 1e-14) - regular_sum_closed(x, y)) < 1e-12


def test_combination_identity():
    for x, y in ((0.2, 0.3), (0.45, 0.8)):
        assert abs(combination_residual(x, y)) < 1e-12
    with pytest.raises(DomainError):
        combination_residual(0.2, 0.0)


@pytest.mark.parametrize("y", [0.4, -0.4])
def test_reflection_identity(y):
    assert abs(reflection_residual(0.3, y, 1e-12)) < 1e-9


def test_barnes_alternating_sum():
    g_product = special_fn.barnes_constants().g_product
    assert barnes_alternating_sum(1e-13) == pytest.approx(math.log(2.0) + 2.0 * math.log(g_product), abs=1e-11)


def test_cosine_sum_rule():
    assert cosine_sum_rule(1) == pytest.approx(2.0, rel=1e-14)
    assert cosine_sum_rule(3, 2) == pytest.approx(32.0, rel=1e-12)
    with pytest.raises(DomainError):
        cosine_sum_rule(0)


def test_log_law_at_one_half():
    fit = singularity_fit(RationalAngle(1, 2), FIT_GRID)
    assert fit.law is SingularityLaw.LOG_Y
    assert fit.relative_error < 0.02


def test_inverse_square_law_at_one_third():
    fit = singularity_fit(RationalAngle(1, 3), FIT_GRID)
    assert fit.law is SingularityLaw.INVERSE_Y_SQUARED
    assert fit.relative_error < 0.02


def test_odd_denominator_scaling():
    fifth = singularity_fit(RationalAngle(1, 5), FIT_GRID).fitted_coeff
    seventh = singularity_fit(RationalAngle(1, 7), FIT_GRID).fitted_coeff
    assert fifth / seventh == pytest.approx(343.0 / 125.0, rel=0.03)


def test_fit_needs_two_decades():
    with pytest.raises(DomainError):
        singularity_fit(RationalAngle(1, 3), np.geomspace(1e-2, 1e-1, 10))


def test_dominant_sum():
    with pytest.raises(DomainError):
        dominant_sum(RationalAngle(1, 3), 1e-3)
    x = RationalAngle(3, 8)
    gaps = [abs(real_singular_sum(x, y) - dominant_sum(x, y)) for y in np.geomspace(1e-1, 1e-4, 7)]
    assert max(gaps) < 2.0 * max(gaps[0], 1.0)


def test_boundary_scan_table():
    ys = [1e-1, 3e-2, 1e-2, 1e-3]
    table = boundary_scan(RationalAngle(1, 2), ys)
    assert table.headers == ("y", "re_S", "im_S", "reflection_residual", "predicted_law_value")
    assert len(table.rows) == 4
    residuals = table.column("reflection_residual")
    assert np.all(residuals[:3] < 1e-8)
    assert math.isnan(residuals[3])
    assert table.column("predicted_law_value")[0] == pytest.approx(math.log(0.1))


def test_boundary_scan_threads_do_not_change_rows():
    ys = list(np.geomspace(1e-1, 1e-2, 6))
    single = boundary_scan(RationalAngle(1, 3), ys, threads=1)
    pooled = boundary_scan(RationalAngle(1, 3), ys, threads=4)
    assert single.rows == pooled.rows


def test_boundary_scan_leaves_unconverged_residuals_empty(monkeypatch):
    def stalled(x, y, tol):
        raise ConvergenceError("Alternating sum did not converge")

    monkeypatch.setattr(boundary, "reflection_residual", stalled)
    table = boundary_scan(RationalAngle(1, 2), [1e-1, 5e-2])
    assert np.all(np.isnan(table.column("reflection_residual")))
    assert np.all(np.isfinite(table.column("re_S")))


@pytest.mark.parametrize("sign", [1.0, -1.0])
@pytest.mark.parametrize("y", [0.05, 0.1, 0.3, 0.6, 1.0])
@pytest.mark.parametrize("x", [0.1, 0.3, 0.5, 0.7, 0.9])
def test_reflection_identity_grid(x, y, sign):
    assert abs(reflection_residual(x, sign * y, 1e-12)) < 1e-8


@pytest.mark.parametrize("den", range(2, 21))
def test_fitted_laws_for_small_denominators(den):
    for num in range(1, den):
        if math.gcd(num, den) != 1:
            continue
        x = RationalAngle(num, den)
        fit = singularity_fit(x, FIT_GRID)
        assert fit.law is classify_boundary_point(x).law, f"x={num}/{den}"
        assert fit.relative_error < 0.05, f"x={num}/{den}"
