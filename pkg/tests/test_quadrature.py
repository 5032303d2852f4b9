""" Copyright Amazon.com, Inc. or its affiliates. All Rights Reserved. """
""" SPDX-License-Identifier: MIT-0 """

import math

import numpy as np
import pytest

from scipy import special

from components.errors import ConvergenceError, DecayStallError, DomainError
from components.quadrature import integrate_half_line, integrate_interval, integrate_vertical_line


def test_exponential_on_half_line():
    result = integrate_half_line(lambda t: np.exp(-t), 1e-13)
    assert abs(result.value - 1.0) < 1e-13
    assert result.nodes > 0


@pytest.mark.parametrize("power", [0, 1, 3, 6])
@pytest.mark.parametrize("rate", [0.5, 1.0, 7.0])
def test_error_estimate_is_honest(power, rate):
    result = integrate_half_line(lambda t: t ** power * np.exp(-rate * t), 1e-10)
    truth = math.factorial(power) / rate ** (power + 1)
    assert abs(result.value - truth) <= 10.0 * result.abs_err + 1e-15 * truth


def test_logarithmic_endpoint():
    # ∫₀^∞ ln(t) e^{−t} dt = −γ
    result = integrate_half_line(lambda t: np.log(t) * np.exp(-t), 1e-12)
    assert abs(result.value + np.euler_gamma) < 1e-11


def test_tighter_tolerance_never_hurts():
    f = lambda t: np.exp(-t) / (1.0 + t * t)
    loose = integrate_half_line(f, 1e-6).value
    tight = integrate_half_line(f, 1e-12).value
    reference = integrate_half_line(f, 1e-14).value
    assert abs(tight - reference) <= abs(loose - reference) + 1e-14


def test_non_decaying_integrand_is_rejected():
    with pytest.raises(ConvergenceError):
        integrate_half_line(lambda t: 1.0 / (1.0 + t), 1e-10)


def test_interval():
    result = integrate_interval(lambda x: np.sqrt(x), 0.0, 1.0, 1e-12)
    assert abs(result.value - 2.0 / 3.0) < 1e-12
    endpoint = integrate_interval(lambda x: 1.0 / np.sqrt(x * (1.0 - x)), 0.0, 1.0, 1e-10)
    assert abs(endpoint.value - math.pi) < 1e-8
    with pytest.raises(DomainError):
        integrate_interval(lambda x: x, 1.0, 1.0)


def test_cahen_mellin_pair():
    # (1/2πi)∫ Γ(u) x^{−u} du = e^{−x} on Re u = 1/2
    for x in (1.0, 2.5):
        result = integrate_vertical_line(lambda u: np.exp(special.loggamma(u) - u * math.log(x)), 0.5, 1e-12)
        assert abs(result.value - math.exp(-x)) < 1e-11


def test_vertical_line_tail_is_converged():
    f = lambda u: np.exp(special.loggamma(u))
    base = integrate_vertical_line(f, 0.5, 1e-12)
    taller = integrate_vertical_line(f, 0.5, 1e-12, height=128.0)
    assert abs(base.value - taller.value) < 1e-12


def test_slow_decay_stalls():
    with pytest.raises(DecayStallError) as raised:
        integrate_vertical_line(lambda u: 1.0 / (u * u - 4.0), 0.5, 1e-10)
    assert raised.value.best_estimate is not None
