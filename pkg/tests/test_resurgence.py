""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import cmath
import math

import mpmath
import numpy as np
import pytest

from components import resurgence
from components.errors import ConvergenceError, DomainError, PoleError
from components.resurgence import (
    borel_pole_coeffs, borel_transform, laurent_limit, lateral_difference, nearest_pole, stokes_discontinuity
)


def test_borel_transform_near_origin():
    assert borel_transform(0.0) == 0
    assert (borel_transform(1e-3) / 1e-3).real == pytest.approx(-math.pi ** 2 / 384, rel=1e-6)


@pytest.mark.parametrize("t", [0.8, 3.0 + 1.5j, -1.5 + 4.0j])
def test_borel_transform_against_direct_series(t):
    series = mpmath.nsum(lambda n: (-1) ** n * mpmath.tanh(t / (4 * n)) ** 2, [1, mpmath.inf])
    expected = complex(series / (2 * t))
    assert abs(borel_transform(t) - expected) < 1e-11 * max(1.0, abs(expected))


def test_borel_transform_reports_unsettled_tail(monkeypatch):
    monkeypatch.setattr(resurgence, "borel_sum", lambda t, depth=14: np.full(t.shape, 1.0 + 1e-6 * depth, dtype=complex))
    assert borel_transform(0.8, tol=1e-3) == pytest.approx(1.0 + 1.8e-5)
    with pytest.raises(ConvergenceError) as error:
        borel_transform(0.8, tol=1e-8)
    assert error.value.best_estimate == pytest.approx(1.0 + 1.8e-5)


def test_borel_transform_is_odd():
    for t in (-0.7 + 0.4j, 3.0 + 1.0j, 0.2 - 9.0j):
        assert abs(borel_transform(t) + borel_transform(-t)) < 1e-13


def test_borel_pole_is_rejected():
    l, distance = nearest_pole(0.1 + 6.0j)
    assert l == 1
    assert distance == pytest.approx(abs(0.1 + (6.0 - 2 * math.pi) * 1j))
    assert nearest_pole(0.5 + 0.1j)[0] == 1
    assert nearest_pole(0.5 - 0.1j)[0] == -1
    with pytest.raises(PoleError):
        borel_transform(2j * math.pi + 1e-8)


def test_pole_coefficients():
    first = borel_pole_coeffs(1)
    assert first.double_pole_coeff == pytest.approx(4j / math.pi)
    assert first.single_pole_coeff == pytest.approx(-2.0 / math.pi ** 2)
    second = borel_pole_coeffs(2)
    assert second.single_pole_coeff == pytest.approx(2.0 / math.pi ** 2)
    assert second.double_pole_coeff == pytest.approx(-8j / math.pi)
    assert borel_pole_coeffs(3).double_pole_coeff == pytest.approx(4j * 3 * (10.0 / 9.0) / math.pi)
    with pytest.raises(DomainError):
        borel_pole_coeffs(0)


@pytest.mark.parametrize("l", [1, 2, 3, -1])
def test_laurent_limit_matches_double_pole(l):
    angles = (0.0, 0.5 * math.pi, math.pi, 1.5 * math.pi)
    average = sum(laurent_limit(l, 1e-4, angle) for angle in angles) / 4.0
    assert abs(average - borel_pole_coeffs(l).double_pole_coeff) < 1e-6


def test_stokes_discontinuity_leading_term():
    N = 1.0 - 2.0j
    expected = 4j / math.pi * (1.0 + 2j * math.pi * N) * cmath.exp(-2j * math.pi * N)
    assert abs(stokes_discontinuity(N, l_max=1) - expected) < 1e-12 * abs(expected)
    assert abs(stokes_discontinuity(2 - 4j)) < abs(stokes_discontinuity(2 - 2j))
    with pytest.raises(DomainError):
        stokes_discontinuity(N, l_max=0)


def test_stokes_discontinuity_off_its_half_plane_still_returns():
    value = stokes_discontinuity(1.0 + 0.5j, l_max=3)
    assert cmath.isfinite(value)


@pytest.mark.parametrize("N", [2 - 2j, 1 - 1.5j, 3 - 1j])
def test_lateral_difference_equals_discontinuity(N):
    jump = stokes_discontinuity(N)
    assert abs(lateral_difference(N, tol=1e-12) - jump) < 1e-4 * abs(jump)
