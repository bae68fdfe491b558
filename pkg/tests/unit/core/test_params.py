"""Test the Grover search geometry."""

import math

import pytest

from noisygrover.core import grover_params, ideal_success_probability, optimal_iterations


@pytest.fixture
def params():
    """N = 256 items with one target."""
    return grover_params(256, 1)


def test_angles(params):
    """Test the half angle is arcsin(sqrt(m/N)) and the rotation twice that."""
    assert params.half_angle == pytest.approx(math.asin(1 / 16))
    assert params.angle == pytest.approx(0.1250815, abs=1e-7)
    assert params.ratio == 1 / 256


def test_optimal_iterations(params):
    """Test T = floor(pi/4 sqrt(N/m))."""
    assert optimal_iterations(params) == 12
    assert optimal_iterations(grover_params(4, 1)) == 1
    assert optimal_iterations(grover_params(1024, 1)) == 25


def test_ideal_probability_start(params):
    """Test no iterations leave the uniform weight m/N."""
    assert ideal_success_probability(params, 0) == pytest.approx(1 / 256, abs=1e-15)


def test_ideal_probability_peak(params):
    """Test T iterations come within 1e-4 of certainty."""
    assert ideal_success_probability(params, 12) >= 0.9999


def test_four_items_exact():
    """Test a single iteration finds the one target among four items."""
    params = grover_params(4, 1)
    assert ideal_success_probability(params, 1) == pytest.approx(1.0, abs=1e-15)


def test_negative_iterations(params):
    """Test negative iteration counts are refused."""
    with pytest.raises(ValueError, match="Negative"):
        ideal_success_probability(params, -1)


@pytest.mark.parametrize(
    "n, m, message",
    [
        (1, 1, "at least 2"),
        (16, 0, "1 <= m <= N"),
        (16, 17, "1 <= m <= N"),
        (16.0, 1, "integer"),
        (16, True, "integer"),
    ],
)
def test_invalid_instances(n, m, message):
    """Test malformed search instances are rejected."""
    with pytest.raises(ValueError, match=message):
        grover_params(n, m)
