"""
Noise thresholds: the weakest channel that still reaches a requested success
probability, and how many oracle queries that costs against classical search.

All maxima come from density-matrix scans, so every diagonalizable channel is
handled the same way and nothing relies on the closed forms.
"""

import logging
from dataclasses import dataclass

from .core import GroverParams, Kind, NoiseChannel, NotDiagonalizable, Placement, optimal_iterations
from .oracle import argmax_scan, simulate_trace

log = logging.getLogger(__name__)

# Bisection stops once the bracket is this narrow
ETA_TOLERANCE = 1e-9
# Lowest eta tried; eta = 0 erases the state after one step
ETA_FLOOR = 1e-9
AUDIT_GRID = tuple(round(0.05 * k, 2) for k in range(1, 21))
# Rounding allowed when comparing scan maxima
SLACK = 1e-12
# A later peak this close to the window maximum is reported
HORIZON_MARGIN = 1e-6


class ThresholdError(ValueError):
    """The request has no meaningful threshold."""


class NoThresholdExists(ThresholdError):
    """Not even the noiseless search reaches the requested probability."""


class TrivialRequest(ThresholdError):
    """Any noise level reaches the requested probability."""


class Unreachable(ThresholdError):
    """The channel never reaches the requested probability."""

    def __init__(self, message: str, achieved: float):
        super().__init__(message)
        self.achieved = achieved


class BracketError(RuntimeError):
    """The scan maximum was not monotone in eta, so bisection cannot be trusted."""


@dataclass(frozen=True)
class ThresholdResult:
    eta_star: float | None  # None for amplitude damping
    t_at_threshold: int
    p_requested: float
    p_achieved: float
    channel_kind: Kind
    classical_queries: float
    quantum_queries: int

    @property
    def advantage(self) -> bool:
        """Fewer oracle queries than the N/2 a classical search needs on average."""
        return self.quantum_queries < self.classical_queries


def scan_horizon(params: GroverParams) -> int:
    """2T: the first oscillation holds the global maximum."""
    return max(2 * optimal_iterations(params), 1)


def scan_maximum(
    params: GroverParams,
    kind: Kind,
    eta: float,
    t_end: int | None = None,
    placement: Placement = Placement.PER_ITERATION,
) -> tuple[int, float]:
    """(t, P) at the highest success probability of the density-matrix scan over [0, t_end]."""
    horizon = scan_horizon(params) if t_end is None else t_end
    return argmax_scan(simulate_trace(params, NoiseChannel.from_eta(kind, eta), horizon, placement))


def monotonicity_audit(
    params: GroverParams,
    kind: Kind,
    grid=AUDIT_GRID,
    placement: Placement = Placement.PER_ITERATION,
) -> list[float]:
    """
    Scan maxima on an eta grid, failing loudly if they ever decrease.

    Bisection on eta is only sound when the maximum grows with eta.
    """
    maxima = [scan_maximum(params, kind, eta, placement=placement)[1] for eta in grid]
    for (eta_a, p_a), (eta_b, p_b) in zip(zip(grid, maxima), zip(grid[1:], maxima[1:])):
        if p_b < p_a - SLACK:
            raise BracketError(f"{kind.value}: scan maximum drops from {p_a:.12g} at eta={eta_a} to {p_b:.12g} at {eta_b}")
    return maxima


def eta_threshold(
    params: GroverParams,
    kind: Kind,
    p_requested: float,
    placement: Placement = Placement.PER_ITERATION,
) -> ThresholdResult:
    """
    Smallest eta whose scan maximum over [0, 2T] reaches p_requested.

    With PER_REFLECTION the channel sits on both reflections, so the threshold
    is the square root of the per-iteration one.

    Raises TrivialRequest when every eta works, NoThresholdExists when none does,
    and BracketError if the audit or any bisection step finds a non-monotone maximum.
    """
    if kind is Kind.AMPLITUDE_DAMPING:
        raise NotDiagonalizable("amplitude damping has no eta to bisect over")
    if p_requested <= 0.5:
        raise TrivialRequest(f"p_requested={p_requested} <= 1/2 is reached at any eta")

    ideal_t, ideal_p = scan_maximum(params, Kind.IDENTITY, 1.0)
    if p_requested >= ideal_p:
        raise NoThresholdExists(f"p_requested={p_requested} is not below the noiseless maximum {ideal_p:.12g}")

    if kind is Kind.IDENTITY:
        return _result(params, kind, 1.0, ideal_t, ideal_p, p_requested)

    lo, hi = ETA_FLOOR, 1.0
    _, p_lo = scan_maximum(params, kind, lo, placement=placement)
    t_hi, p_hi = scan_maximum(params, kind, hi, placement=placement)
    if p_lo >= p_requested:
        raise TrivialRequest(f"p_requested={p_requested} is reached even at eta={lo}")

    monotonicity_audit(params, kind, placement=placement)

    steps = 0
    while hi - lo > ETA_TOLERANCE:
        mid = (lo + hi) / 2
        t_mid, p_mid = scan_maximum(params, kind, mid, placement=placement)
        if not p_lo - SLACK <= p_mid <= p_hi + SLACK:
            raise BracketError(f"P_max({mid}) = {p_mid:.12g} outside bracket [{p_lo:.12g}, {p_hi:.12g}]")
        if p_mid >= p_requested:
            hi, t_hi, p_hi = mid, t_mid, p_mid
        else:
            lo, p_lo = mid, p_mid
        steps += 1
        log.debug("bisection step %d: eta in [%.12g, %.12g]", steps, lo, hi)

    _check_horizon(params, kind, hi, p_hi, placement)
    log.info("%s threshold for p=%g at N=%d: eta*=%.9f (t=%d)", kind.value, p_requested, params.n_items, hi, t_hi)
    return _result(params, kind, hi, t_hi, p_hi, p_requested)


def speedup_report(
    params: GroverParams,
    channel: NoiseChannel,
    p_requested: float,
    placement: Placement = Placement.PER_ITERATION,
) -> ThresholdResult:
    """First iteration reaching p_requested under the channel, against N/2 classical queries."""
    if not 0.0 <= p_requested <= 1.0:
        raise ValueError(f"p_requested must be a probability, got {p_requested}")

    horizon = max(8 * optimal_iterations(params), 8)
    trace = simulate_trace(params, channel, horizon, placement)
    for t, p in trace.points:
        if p >= p_requested:
            eta = None if channel.kind is Kind.AMPLITUDE_DAMPING else channel.eta
            return _result(params, channel.kind, eta, t, p, p_requested)

    _, best = argmax_scan(trace)
    raise Unreachable(f"{channel} never reaches p={p_requested} within {horizon} iterations (max {best:.12g})", best)


def _check_horizon(params: GroverParams, kind: Kind, eta: float, p_max: float, placement: Placement) -> None:
    """Later iterations must not beat the maximum found in [0, 2T]."""
    start = scan_horizon(params)
    trace = simulate_trace(params, NoiseChannel.from_eta(kind, eta), max(4 * start, 8), placement)
    for t, p in trace.points[start + 1 :]:
        if p > p_max + SLACK:
            raise BracketError(f"P({t}) = {p:.12g} beats the [0, {start}] maximum {p_max:.12g} at eta={eta}")
        if p > p_max - HORIZON_MARGIN:
            log.warning(
                "P(%d) = %.12g is within %g of the [0, %d] maximum at eta=%g", t, p, HORIZON_MARGIN, start, eta
            )


def _result(
    params: GroverParams, kind: Kind, eta: float | None, t: int, p: float, p_requested: float
) -> ThresholdResult:
    return ThresholdResult(
        eta_star=eta,
        t_at_threshold=t,
        p_requested=p_requested,
        p_achieved=p,
        channel_kind=kind,
        classical_queries=params.n_items / 2,
        quantum_queries=t,
    )
