""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import cmath
import math

from fractions import Fraction

import pytest

from components.boundary import singular_sum
from components.divisor import (
    DivisorTable, check_bounds, check_sigma_identities, divisors, fig1_table, lambert_L, odd_part, prime_factors,
    q_derivative_identity_residual, s_generating, s_generating_derivative, s_generating_derivative_lambert,
    sigma_k, sigma_o_minus2, sigma_o_minus2_array
)
from components.errors import DomainError


def test_factorization_helpers():
    assert prime_factors(360) == {2: 3, 3: 2, 5: 1}
    assert divisors(12) == (1, 2, 3, 4, 6, 12)
    assert odd_part(48) == 3
    assert sigma_k(6, 2) == 50
    assert sigma_k(6, -1) == 2
    with pytest.raises(DomainError):
        prime_factors(0)


def test_odd_divisor_sum_examples():
    assert sigma_o_minus2(1) == 1
    assert sigma_o_minus2(3) == Fraction(10, 9)
    assert sigma_o_minus2(6) == Fraction(10, 9)
    assert sigma_o_minus2(9) == Fraction(91, 81)
    assert sigma_o_minus2(15) == Fraction(10, 9) * Fraction(26, 25)
    assert sigma_o_minus2(2 ** 20) == 1
    with pytest.raises(DomainError):
        sigma_o_minus2(-4)


def test_sigma_identities():
    assert all(check_sigma_identities(n) for n in range(1, 2001))


def test_table_matches_direct_sums():
    table = DivisorTable.build(500)
    for n in (1, 2, 45, 97, 360, 500):
        assert table.sigma_o_minus2_at(n) == sigma_o_minus2(n)
        assert table.sigma_2_at(n) == sigma_k(n, 2)
    floats = sigma_o_minus2_array(500)
    assert floats[45] == pytest.approx(float(sigma_o_minus2(45)), rel=1e-15)


def test_multiplicativity():
    table = DivisorTable.build(3000)
    for m in range(2, 40):
        for n in range(m + 1, 3000 // m + 1):
            if math.gcd(m, n) == 1:
                assert table.sigma_o_minus2_at(m * n) == table.sigma_o_minus2_at(m) * table.sigma_o_minus2_at(n)


def test_bounds_and_dyadic_rows():
    table = DivisorTable.build(20_000)
    assert check_bounds(table)
    assert all(table.sigma_o_minus2_at(2 ** k) == 1 for k in range(15))
    with pytest.raises(DomainError):
        DivisorTable.build(0)


def test_generating_function_is_the_singular_sum():
    assert s_generating(0) == 0
    z = -0.5 * cmath.exp(0.3j * math.pi)
    assert abs(s_generating(z, 1e-13) - singular_sum(0.3, math.log(2.0) / math.pi, 1e-13)) < 1e-11
    with pytest.raises(DomainError):
        s_generating(1.0)


def test_derivative_as_lambert_series():
    for z in (0.3, -0.6 + 0.2j):
        assert abs(s_generating_derivative(z, 1e-13) - s_generating_derivative_lambert(z, 1e-13)) < 1e-11


def test_q_derivative_identity():
    for q in (0.3, 0.5j, -0.4 + 0.3j):
        assert abs(q_derivative_identity_residual(q, 1e-13)) < 1e-10


def test_q_derivative_by_central_difference():
    q, h = 0.4 + 0.2j, 1e-5
    difference = q * (s_generating(-(q + h), 1e-14) - s_generating(-(q - h), 1e-14)) / (2.0 * h)
    exact = 4.0 * lambert_L(-q, 1e-13) - 4.0 * lambert_L(q * q, 1e-13)
    assert abs(difference - exact) < 1e-7


def test_lambert_series_against_direct_sum():
    q = 0.5
    direct = math.fsum(n * n * q ** n / (1.0 - q ** n) for n in range(1, 10_001))
    assert lambert_L(q, 1e-14) == pytest.approx(direct, rel=1e-13)


def test_fig1_table():
    table = fig1_table(200)
    assert len(table) == 200
    assert table.rows[0] == (1, 1.0, 1.0)
    assert table.rows[2][1] == pytest.approx(10.0 / 9.0)
    assert table.column("sigma_o_minus2").max() < math.pi ** 2 / 8
    assert table.to_csv() == fig1_table(200).to_csv()
