"""
Parameter sweeps: closed form against density-matrix simulation for each
(channel, t), plus the per-channel maximum used for figure star markers.
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .analytic import closed_form_probability, p_max, t_max
from .core import GroverParams, Kind, NoiseChannel, Placement, channel, grover_params, optimal_iterations
from .oracle import argmax_scan, simulate_trace

log = logging.getLogger(__name__)

SOURCE_ANALYTIC = "analytic"
SOURCE_SCAN = "scan"
SOURCES = {SOURCE_ANALYTIC, SOURCE_SCAN}

# Fixed configuration of the figure set: N = 2^8, one target
FIGURE_N = 256
FIGURE_M = 1
FIGURE_ETAS = (1.0, 0.9, 0.8, 0.7)
FIGURE_KINDS = (Kind.PHASE_FLIP, Kind.BIT_FLIP, Kind.BIT_PHASE_FLIP)


@dataclass(frozen=True)
class Row:
    """One (channel, t) point. p_analytic and abs_diff are None for amplitude damping."""

    channel: str
    eta: float  # gamma for amplitude damping
    t: int
    p_analytic: float | None
    p_oracle: float
    abs_diff: float | None


@dataclass(frozen=True)
class Summary:
    channel: str
    eta: float
    t_m: int
    p_max: float
    source: str


def sweep_point(
    params: GroverParams,
    noise: NoiseChannel,
    t_end: int,
    placement: Placement = Placement.PER_ITERATION,
) -> tuple[list[Row], Summary]:
    """Rows for t = 0..t_end and the maximum of one channel."""
    trace = simulate_trace(params, noise, t_end, placement)
    code, level = noise.kind.value, noise.level

    rows = []
    for t, p_oracle in trace.points:
        if noise.kind is Kind.AMPLITUDE_DAMPING:
            rows.append(Row(code, level, t, None, p_oracle, None))
            continue
        p_analytic = closed_form_probability(params, noise, t, placement)
        rows.append(Row(code, level, t, p_analytic, p_oracle, abs(p_analytic - p_oracle)))

    return rows, _summarise(params, noise, trace, placement)


def _summarise(params, noise, trace, placement) -> Summary:
    code, level = noise.kind.value, noise.level
    if noise.kind in (Kind.BIT_PHASE_FLIP, Kind.DEPOLARIZING) and noise.eta > 0:
        eta = noise.eta**2 if placement is Placement.PER_REFLECTION else noise.eta
        return Summary(code, level, t_max(params, eta), p_max(params, eta), SOURCE_ANALYTIC)
    t_m, best = argmax_scan(trace)
    return Summary(code, level, t_m, best, SOURCE_SCAN)


def sweep(
    params: GroverParams,
    channels,
    t_end: int,
    placement: Placement = Placement.PER_ITERATION,
    workers: int = 1,
) -> tuple[list[Row], list[Summary]]:
    """
    Sweep every channel, ordered by (eta desc, t asc) whatever order points finish in.
    """
    channels = list(channels)
    log.info("sweeping %d channel(s) over t = 0..%d with %d worker(s)", len(channels), t_end, workers)

    def run(noise):
        return sweep_point(params, noise, t_end, placement)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, channels))
    else:
        results = [run(noise) for noise in channels]

    rows = sorted((row for point_rows, _ in results for row in point_rows), key=lambda r: (-r.eta, r.t))
    summaries = sorted((summary for _, summary in results), key=lambda s: -s.eta)
    return rows, summaries


def figure_sweeps(workers: int = 1) -> dict[Kind, tuple[list[Row], list[Summary]]]:
    """Phase flip, bit flip and bit-phase flip sweeps at N=256, m=1 over 4T iterations."""
    params = grover_params(FIGURE_N, FIGURE_M)
    t_end = 4 * optimal_iterations(params)
    return {
        kind: sweep(params, [channel(kind.value, eta=eta) for eta in FIGURE_ETAS], t_end, workers=workers)
        for kind in FIGURE_KINDS
    }
