""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import cmath
import math

import numpy as np
import pytest

from components.errors import DomainError
from components.mordell import (
    MordellRoute, auto_k_max, dual_components, fig2_scan, j_dual, j_mellin_barnes, j_quadrature,
    j_reflection_residual, oscillation_rate, psi_false_theta
)


def test_quadrature_near_zero():
    t = 1e-4
    # sinh u/sinh 3u → 1/3 under the narrowing Gaussian
    leading = math.sqrt(math.pi * t / 3.0) / 6.0
    assert j_quadrature(t, 1e-13).value.real == pytest.approx(leading, rel=1e-3)


@pytest.mark.parametrize("t", [0.3, 1.0, 2.0, 1.0 + 0.5j])
def test_quadrature_matches_mellin_barnes(t):
    quadrature = j_quadrature(t, 1e-12)
    barnes = j_mellin_barnes(t, 1e-12)
    assert quadrature.route is MordellRoute.QUADRATURE
    assert abs(quadrature.value - barnes.value) < 1e-10


def test_mellin_barnes_contour_shift():
    left = j_mellin_barnes(1.0, 1e-12, re_u=0.3).value
    right = j_mellin_barnes(1.0, 1e-12, re_u=0.7).value
    assert abs(left - right) < 1e-10


@pytest.mark.parametrize("t", [-0.1, -1.0, -math.pi])
def test_mellin_barnes_matches_dual_decomposition(t):
    assert abs(j_mellin_barnes(t, 1e-12).value - j_dual(t).value) < 1e-8


def test_false_theta_series():
    value = psi_false_theta(-50.0, 10)
    assert value.real == pytest.approx(math.exp(-50.0 / 3.0) - math.exp(-200.0 / 3.0), rel=1e-12)
    k = auto_k_max(-0.01)
    assert psi_false_theta(-0.01, k) == pytest.approx(psi_false_theta(-0.01, k + 50), abs=1e-15)


def test_dual_decomposition_under_conjugation():
    t = complex(-0.3, 0.8)
    upper = j_dual(t, sign=1)
    lower = j_dual(t.conjugate(), sign=-1)
    assert abs(lower.value - upper.value.conjugate()) < 1e-13
    parts = dual_components(t)
    assert upper.value == pytest.approx(complex(parts.a_dual - parts.b, parts.b_dual + parts.a))


def test_reflection_residual():
    assert abs(j_reflection_residual(-0.5, 0.3, 1e-12)) < 1e-8
    with pytest.raises(DomainError):
        j_reflection_residual(0.5, 0.3)


def test_fig2_scan_shape():
    table = fig2_scan(points=25)
    assert table.headers == ("y", "re_J", "im_J", "branch_sign", "branch")
    assert len(table) == 25
    assert table.rows[0][0] == pytest.approx(0.5)
    assert table.rows[-1][0] == pytest.approx(1.5)
    assert set(table.column("branch_sign")) == {1}


def test_fig2_mirror_panels():
    upper = fig2_scan(points=20, sign=1, branch=1)
    lower = fig2_scan(points=20, sign=-1, branch=-1)
    assert set(lower.column("branch_sign")) == {-1}
    assert set(lower.column("branch")) == {-1}
    assert set(fig2_scan(points=5, sign=-1).column("branch")) == {1}
    assert np.allclose(lower.column("re_J"), upper.column("re_J"), rtol=1e-12, atol=1e-14)
    assert np.allclose(lower.column("im_J"), -upper.column("im_J"), rtol=1e-12, atol=1e-14)


def test_fig2_truncation_is_stable():
    coarse = fig2_scan(points=40, k_max=800)
    fine = fig2_scan(points=40, k_max=1200)
    gap = np.abs(coarse.column("re_J") - fine.column("re_J")) + np.abs(coarse.column("im_J") - fine.column("im_J"))
    assert gap.max() < 1e-8


def test_oscillation_grows_toward_the_lower_sheet():
    span = 1.0
    calm = oscillation_rate(fig2_scan(sign=1))
    wild = oscillation_rate(fig2_scan(sign=-1))
    assert wild >= 10.0 * max(calm, 1.0 / span)


def test_domain_errors():
    with pytest.raises(DomainError):
        j_quadrature(-1.0)
    with pytest.raises(DomainError):
        j_mellin_barnes(0.0)
    with pytest.raises(DomainError):
        j_mellin_barnes(1.0, re_u=1.5)
    with pytest.raises(DomainError):
        j_mellin_barnes(cmath.exp(1.6j * math.pi), arg=1.6 * math.pi)
    with pytest.raises(DomainError):
        psi_false_theta(1.0, 10)
    with pytest.raises(DomainError):
        j_dual(-1.0, sign=2)
    with pytest.raises(DomainError):
        fig2_scan(re_t=0.1)
    with pytest.raises(DomainError):
        oscillation_rate(fig2_scan(points=10), y_lo=1.2, y_hi=1.21)
