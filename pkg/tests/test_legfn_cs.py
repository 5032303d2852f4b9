""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import cmath
import math

import numpy as np
import pytest

from components import special_fn
from components.errors import DomainError
from components.legfn_cs import (
    LegRoute, branch_sqrt, cs_identity_residual, cs_partition_log, gamma_hat, gamma_hat_barnes, gamma_hat_definition,
    leg_asymptotic, leg_asymptotic_terms, leg_p, leg_p_asymptotic, leg_p_from_gamma_hat, log_product_P_ratio,
    log_product_P_sine, one_point, product_P, root_index, sqrt_product
)


def test_branch_sqrt():
    assert abs(branch_sqrt(-4.0) - 2j) < 1e-15
    assert abs(branch_sqrt(-1j) - cmath.exp(0.75j * math.pi)) < 1e-15
    with pytest.raises(DomainError):
        branch_sqrt(2.0)
    with pytest.raises(DomainError):
        branch_sqrt(0.0)


def test_root_index():
    assert root_index(cmath.exp(1j * math.pi * 3 / 5), 5) == 3
    assert root_index(1.0, 4) == 0
    assert root_index(cmath.exp(0.3j), 5) is None
    assert root_index(0.9j, 5) is None


def test_leg_function_at_one():
    evaluation = leg_p(1.0, 1)
    assert evaluation.route is LegRoute.FINITE_PRODUCT
    assert abs(evaluation.value - (1 - 1j)) < 1e-14


@pytest.mark.parametrize("j", range(1, 10))
def test_finite_products_match_square_root_product(j):
    N = 5
    finite = leg_p(cmath.exp(1j * math.pi * j / N), N).value
    direct = sqrt_product(cmath.exp(0.5j * math.pi * j / N), N)
    assert abs(direct - finite) < 1e-12 * abs(finite)


def test_leg_function_off_the_roots():
    N, theta = 4, 0.3
    root = cmath.exp(0.5j * theta)
    q = np.exp(1j * np.pi * np.arange(N) / N)
    q_half = np.exp(1j * np.pi * (np.arange(N) + 0.5) / N)
    expected = complex(np.prod(root + q) / np.prod(root + q_half))
    evaluation = leg_p(cmath.exp(1j * theta), N)
    assert evaluation.route is LegRoute.SQRT_PRODUCT
    assert abs(evaluation.value - expected) < 1e-13


def test_gamma_hat_routes_agree():
    N, k = 6, 2
    z_value = cmath.exp(2j * math.pi * k / N)
    hat = gamma_hat(N, k, 1e-12)
    assert abs(gamma_hat_definition(z_value, N, 1e-12) - hat) < 1e-9
    assert abs(gamma_hat_barnes(z_value, N, 1e-12) - hat) < 1e-9
    assert gamma_hat(N, -k, 1e-12) == hat
    with pytest.raises(DomainError):
        gamma_hat(N, 0)
    with pytest.raises(DomainError):
        gamma_hat(N, 6)


@pytest.mark.parametrize("k", range(1, 6))
def test_leg_function_from_gamma_hat(k):
    N = 6
    z_value = cmath.exp(2j * math.pi * k / N)
    via_hat = leg_p_from_gamma_hat(z_value, N, 1e-12)
    assert via_hat.route is LegRoute.INTEGRAL_REP
    finite = leg_p(z_value, N).value
    assert abs(via_hat.value - finite) < 1e-9 * abs(finite)


def test_asymptotic_expansion():
    N, k = 40, 2
    exact = gamma_hat(N, k, 1e-13)
    omitted = abs(leg_asymptotic_terms(N, k, 4)[-1])
    third = abs(leg_asymptotic(N, k, 3) - exact)
    assert third <= omitted + 1e-12
    assert third < abs(leg_asymptotic(N, k, 1) - exact)
    assembled = leg_p_asymptotic(N, k, 3)
    assert assembled.route is LegRoute.ASYMPTOTIC
    ratio = assembled.value / leg_p(cmath.exp(2j * math.pi * k / N), N).value
    assert abs(ratio - 1.0) < 2.0 * omitted + 1e-10
    with pytest.raises(DomainError):
        leg_asymptotic_terms(N, k, 0)


def test_product_P():
    assert product_P(1) == pytest.approx(2.0, rel=1e-14)
    for N in (2, 7, 30):
        assert abs(log_product_P_ratio(N) - log_product_P_sine(N)) < 1e-9
    assert all(math.isfinite(log_product_P_sine(N)) for N in range(1, 201))


def test_chern_simons_partition_function():
    for k in (1, 2, 5):
        assert cmath.exp(cs_partition_log(1, k)) == pytest.approx(cmath.exp(0.25j * math.pi) / math.sqrt(k + 1))
    assert abs(cmath.exp(cs_partition_log(2, 2)) + math.sqrt(2.0) / 4.0) < 1e-15
    with pytest.raises(DomainError):
        cs_partition_log(2, 0)


@pytest.mark.parametrize("N", [1, 10, 50])
def test_product_equals_chern_simons_ratio(N):
    assert cs_identity_residual(N) < 1e-9


def test_one_point_function():
    first = one_point(1, 1e-12)
    assert first.via_P == pytest.approx(1.0, rel=1e-14)
    assert first.via_v == pytest.approx(1.0, rel=1e-9)
    g_product = special_fn.barnes_constants().g_product
    for N in (64, 128):
        pair = one_point(N, 1e-12)
        assert pair.via_v == pytest.approx(pair.via_P, rel=1e-8)
        assert pair.via_v / (2.0 * math.pi / N) ** 0.25 == pytest.approx(g_product, rel=1e-4)
