"""Test noise thresholds and the query comparison."""

import pytest

from noisygrover.core import Kind, NoiseChannel, NotDiagonalizable, Placement, grover_params
from noisygrover.oracle import simulate_trace
from noisygrover.threshold import (
    AUDIT_GRID,
    HORIZON_MARGIN,
    NoThresholdExists,
    ThresholdResult,
    TrivialRequest,
    Unreachable,
    _check_horizon,
    eta_threshold,
    monotonicity_audit,
    scan_maximum,
    speedup_report,
)


@pytest.fixture
def params():
    """N = 256 items with one target."""
    return grover_params(256, 1)


def test_half_is_trivial(params):
    """Test p = 1/2 is reached under any bit-phase flip noise."""
    with pytest.raises(TrivialRequest):
        eta_threshold(params, Kind.BIT_PHASE_FLIP, 0.5)


def test_certainty_has_no_threshold(params):
    """Test p = 1 is out of reach even without noise at N = 256."""
    with pytest.raises(NoThresholdExists):
        eta_threshold(params, Kind.BIT_PHASE_FLIP, 1.0)


def test_bit_phase_flip_threshold(params):
    """Test the threshold for p = 0.9 sits right where the scan maximum crosses 0.9."""
    result = eta_threshold(params, Kind.BIT_PHASE_FLIP, 0.9)
    assert 0.0 < result.eta_star < 1.0
    assert 0.9 <= scan_maximum(params, Kind.BIT_PHASE_FLIP, result.eta_star)[1] <= 0.9 + 1e-5
    assert scan_maximum(params, Kind.BIT_PHASE_FLIP, result.eta_star - 1e-4)[1] < 0.9
    assert result.p_achieved >= 0.9 - 1e-6
    assert result.quantum_queries == result.t_at_threshold
    assert result.classical_queries == 128
    assert result.advantage


def test_bisection_bracket(params):
    """Test the maximum is below the request just under the threshold and above it just over."""
    result = eta_threshold(params, Kind.PHASE_FLIP, 0.9)
    assert scan_maximum(params, Kind.PHASE_FLIP, result.eta_star - 1e-6)[1] < 0.9
    assert scan_maximum(params, Kind.PHASE_FLIP, min(1.0, result.eta_star + 1e-6))[1] >= 0.9


def test_four_items_threshold():
    """Test N = 4 has a threshold below 1 for a request just under certainty."""
    result = eta_threshold(grover_params(4, 1), Kind.BIT_PHASE_FLIP, 0.999999)
    assert result.eta_star < 1.0
    assert result.eta_star == pytest.approx(0.999998, abs=1e-6)
    assert result.t_at_threshold == 1


def test_amplitude_damping_has_no_eta_threshold(params):
    """Test amplitude damping can't be bisected over eta."""
    with pytest.raises(NotDiagonalizable):
        eta_threshold(params, Kind.AMPLITUDE_DAMPING, 0.9)


def test_audit_is_monotone(params):
    """Test the bit-phase flip scan maximum grows with eta across the grid."""
    maxima = monotonicity_audit(params, Kind.BIT_PHASE_FLIP)
    assert len(maxima) == len(AUDIT_GRID) == 20
    assert all(b >= a for a, b in zip(maxima, maxima[1:]))


def test_speedup_half_way(params):
    """Test reaching 1/2 under bit-phase flip noise takes fewer queries than classical search."""
    result = speedup_report(params, NoiseChannel.from_eta(Kind.BIT_PHASE_FLIP, 0.7), 0.5)
    assert result.quantum_queries == 6
    assert result.quantum_queries <= 12
    assert result.advantage
    assert result.eta_star == 0.7


def test_speedup_noiseless(params):
    """Test 0.99 takes T = 12 iterations without noise."""
    result = speedup_report(params, NoiseChannel(Kind.IDENTITY), 0.99)
    assert result.quantum_queries == 12
    assert result.p_achieved >= 0.99


def test_speedup_unreachable(params):
    """Test heavy phase flip noise never reaches 0.9."""
    with pytest.raises(Unreachable) as info:
        speedup_report(params, NoiseChannel.from_eta(Kind.PHASE_FLIP, 0.1), 0.9)
    assert info.value.achieved < 0.9


def test_speedup_amplitude_damping(params):
    """Test amplitude damping reports no eta."""
    result = speedup_report(params, NoiseChannel(Kind.AMPLITUDE_DAMPING, 1.0), 0.99)
    assert result.eta_star is None
    assert result.quantum_queries == 12


def test_speedup_bad_probability(params):
    """Test requests outside [0, 1] are refused."""
    with pytest.raises(ValueError, match="probability"):
        speedup_report(params, NoiseChannel(Kind.IDENTITY), 1.5)


def test_no_advantage():
    """Test the advantage flag against the N/2 baseline."""
    result = ThresholdResult(0.9, 3, 0.6, 0.61, Kind.PHASE_FLIP, 2.0, 3)
    assert not result.advantage


def test_reflection_placement_threshold(params):
    """Test noise on both reflections needs the square root of the per-iteration eta."""
    once = eta_threshold(params, Kind.BIT_PHASE_FLIP, 0.9)
    twice = eta_threshold(params, Kind.BIT_PHASE_FLIP, 0.9, Placement.PER_REFLECTION)
    assert twice.eta_star == pytest.approx(once.eta_star**0.5, abs=1e-7)
    assert twice.t_at_threshold == once.t_at_threshold


def test_reflection_placement_speedup(params):
    """Test the speedup report simulates the requested placement."""
    once = speedup_report(params, NoiseChannel.from_eta(Kind.BIT_PHASE_FLIP, 0.49), 0.5)
    twice = speedup_report(params, NoiseChannel.from_eta(Kind.BIT_PHASE_FLIP, 0.7), 0.5, Placement.PER_REFLECTION)
    assert twice.quantum_queries == once.quantum_queries
    assert twice.p_achieved == pytest.approx(once.p_achieved, abs=1e-12)


def test_horizon_close_call_warns(params, caplog):
    """Test a later peak just under the window maximum is logged, not raised."""
    trace = simulate_trace(params, NoiseChannel.from_eta(Kind.BIT_PHASE_FLIP, 1.0), 96)
    later = max(p for t, p in trace.points if t > 24)
    with caplog.at_level("WARNING", logger="noisygrover.threshold"):
        _check_horizon(params, Kind.BIT_PHASE_FLIP, 1.0, later + HORIZON_MARGIN / 2, Placement.PER_ITERATION)
    assert "within" in caplog.text
