"""Test the noise channels and their Bloch maps."""

import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from noisygrover.core import (
    Kind,
    NoiseChannel,
    NotDiagonalizable,
    channel,
    noise_bloch_map,
    reduced_noise_matrix,
)

ETA_KINDS = [Kind.BIT_FLIP, Kind.PHASE_FLIP, Kind.BIT_PHASE_FLIP, Kind.DEPOLARIZING, Kind.PHASE_DAMPING]


def test_from_eta_parameters():
    """Test eta maps to p, gamma and alpha."""
    assert NoiseChannel.from_eta(Kind.BIT_FLIP, 0.8).raw_param == pytest.approx(0.9)
    assert NoiseChannel.from_eta(Kind.PHASE_DAMPING, 0.8).raw_param == pytest.approx(0.64)
    assert NoiseChannel.from_eta(Kind.DEPOLARIZING, 0.8).raw_param == pytest.approx(0.2)


def test_eta_from_raw_parameter():
    """Test eta is derived from the physical parameter."""
    assert NoiseChannel(Kind.PHASE_FLIP, 0.9).eta == pytest.approx(0.8)
    assert NoiseChannel(Kind.PHASE_DAMPING, 0.64).eta == pytest.approx(0.8)
    assert NoiseChannel(Kind.DEPOLARIZING, 0.2).eta == pytest.approx(0.8)
    assert NoiseChannel(Kind.IDENTITY).eta == 1.0


@given(st.sampled_from(ETA_KINDS), st.floats(min_value=0.0, max_value=1.0))
def test_from_eta_keeps_eta(kind, eta):
    """Test a channel built from eta reports that eta, and its raw parameter gives it back."""
    built = NoiseChannel.from_eta(kind, eta)
    assert built.eta == eta
    assert NoiseChannel(kind, built.raw_param).eta == pytest.approx(eta, abs=1e-12)


def test_eta_must_match_raw_parameter():
    """Test an explicit eta that contradicts the physical parameter is refused."""
    with pytest.raises(ValueError, match="does not match"):
        NoiseChannel(Kind.BIT_FLIP, 0.9, 0.1)
    with pytest.raises(ValueError, match="does not match"):
        NoiseChannel(Kind.PHASE_DAMPING, 0.64, 0.64)
    assert NoiseChannel(Kind.DEPOLARIZING, 0.25, 0.75).eta == 0.75


def test_flip_probability_below_half():
    """Test flips with p < 1/2 are refused."""
    with pytest.raises(ValueError, match="p in"):
        NoiseChannel(Kind.BIT_FLIP, 0.4)


@pytest.mark.parametrize("raw", [-0.1, 1.5])
def test_raw_parameter_range(raw):
    """Test physical parameters outside [0, 1] are refused."""
    with pytest.raises(ValueError, match="must lie in"):
        NoiseChannel(Kind.DEPOLARIZING, raw)


def test_identity_takes_no_parameter():
    """Test the identity channel only exists at eta = 1."""
    with pytest.raises(ValueError):
        NoiseChannel(Kind.IDENTITY, 0.5)
    with pytest.raises(ValueError):
        NoiseChannel.from_eta(Kind.IDENTITY, 0.5)


def test_amplitude_damping_has_no_eta():
    """Test eta-based views of amplitude damping raise NotDiagonalizable."""
    damping = NoiseChannel(Kind.AMPLITUDE_DAMPING, 0.5)
    with pytest.raises(NotDiagonalizable):
        damping.eta
    with pytest.raises(NotDiagonalizable):
        reduced_noise_matrix(damping)
    with pytest.raises(NotDiagonalizable):
        NoiseChannel.from_eta(Kind.AMPLITUDE_DAMPING, 0.5)
    assert damping.level == 0.5


@pytest.mark.parametrize(
    "kind, diagonal",
    [
        (Kind.BIT_FLIP, (1.0, 0.6, 0.6)),
        (Kind.PHASE_FLIP, (0.6, 0.6, 1.0)),
        (Kind.BIT_PHASE_FLIP, (0.6, 1.0, 0.6)),
        (Kind.DEPOLARIZING, (0.6, 0.6, 0.6)),
        (Kind.PHASE_DAMPING, (0.6, 0.6, 1.0)),
    ],
)
def test_bloch_map_diagonal(kind, diagonal):
    """Test each diagonalizable channel scales the Bloch axes independently."""
    bloch_map = noise_bloch_map(NoiseChannel.from_eta(kind, 0.6))
    np.testing.assert_allclose(bloch_map.linear, np.diag(diagonal))
    np.testing.assert_allclose(bloch_map.offset, np.zeros(3))


def test_amplitude_damping_bloch_map():
    """Test amplitude damping is affine and pulls towards |chi0>."""
    bloch_map = noise_bloch_map(NoiseChannel(Kind.AMPLITUDE_DAMPING, 0.25))
    np.testing.assert_allclose(bloch_map.linear, np.diag([0.5, 0.5, 0.25]))
    np.testing.assert_allclose(bloch_map.offset, [0.0, 0.0, 0.75])
    np.testing.assert_allclose(bloch_map([0.0, 0.0, -1.0]), [0.0, 0.0, 0.5])


def test_amplitude_damping_full_decay():
    """Test gamma = 0 sends every state to |chi0>."""
    bloch_map = noise_bloch_map(NoiseChannel(Kind.AMPLITUDE_DAMPING, 0.0))
    np.testing.assert_allclose(bloch_map([0.3, 0.0, -0.9]), [0.0, 0.0, 1.0])


@pytest.mark.parametrize("kind", list(Kind))
def test_bloch_maps_contract(kind):
    """Test every channel keeps the unit sphere inside the ball."""
    if kind is Kind.AMPLITUDE_DAMPING:
        noise = NoiseChannel(kind, 0.3)
    elif kind is Kind.IDENTITY:
        noise = NoiseChannel(kind)
    else:
        noise = NoiseChannel.from_eta(kind, 0.3)
    assert noise_bloch_map(noise).is_contractive()


def test_reduced_matrices():
    """Test the (r_x, r_z) restriction of the flips."""
    np.testing.assert_array_equal(reduced_noise_matrix(NoiseChannel.from_eta(Kind.PHASE_FLIP, 0.7)), np.diag([0.7, 1.0]))
    np.testing.assert_array_equal(reduced_noise_matrix(NoiseChannel.from_eta(Kind.BIT_FLIP, 0.7)), np.diag([1.0, 0.7]))
    np.testing.assert_array_equal(
        reduced_noise_matrix(NoiseChannel.from_eta(Kind.BIT_PHASE_FLIP, 0.7)), np.diag([0.7, 0.7])
    )


def test_channel_factory():
    """Test channels are built from their command-line codes."""
    assert channel("pf", eta=0.8) == NoiseChannel.from_eta(Kind.PHASE_FLIP, 0.8)
    assert channel("bf", raw=0.9).eta == pytest.approx(0.8)
    assert channel("dp").eta == 1.0
    assert channel("ad").raw_param == 1.0
    assert channel("id").kind is Kind.IDENTITY


def test_channel_factory_errors():
    """Test the factory rejects unknown codes and doubled parameters."""
    with pytest.raises(ValueError, match="Unknown channel"):
        channel("xx")
    with pytest.raises(ValueError, match="not both"):
        channel("pf", eta=0.8, raw=0.9)


def test_phase_damping_matches_sqrt_gamma():
    """Test phase damping contracts by sqrt(gamma)."""
    assert NoiseChannel(Kind.PHASE_DAMPING, 0.49).eta == pytest.approx(math.sqrt(0.49))
