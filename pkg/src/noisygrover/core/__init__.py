"""
Grover geometry, noise channels and the Bloch-vector iteration.

Provides the core types plus a channel() factory that builds a NoiseChannel
from its short command-line code and either eta or the raw physical parameter.
"""

from .bloch import (
    BlochBallError,
    BlochState,
    Placement,
    bloch_trace,
    clamp_probability,
    grover_matrix,
    noisy_grover_step,
    oracle_matrix,
    reflection_matrix,
    step_matrix,
    success_from_state,
)
from .channel import (
    DIAGONALIZABLE,
    FLIPS,
    AffineBlochMap,
    Kind,
    NoiseChannel,
    NotDiagonalizable,
    effective_eta,
    noise_bloch_map,
    reduced_noise_matrix,
)
from .params import GroverParams, grover_params, ideal_success_probability, optimal_iterations


def channel(code: str, eta: float | None = None, raw: float | None = None) -> NoiseChannel:
    """
    Build a channel from its code ("bf", "pf", "bpf", "dp", "pd", "ad", "id").

    Exactly one of eta / raw may be given; with neither the channel is noiseless.
    """
    try:
        kind = Kind(code)
    except ValueError:
        raise ValueError(f"Unknown channel {code!r}, expected one of {[k.value for k in Kind]}") from None

    if eta is not None and raw is not None:
        raise ValueError("Give either eta or the raw parameter, not both")
    if raw is not None:
        return NoiseChannel(kind, raw)
    if eta is not None:
        return NoiseChannel.from_eta(kind, eta)
    if kind is Kind.AMPLITUDE_DAMPING:
        return NoiseChannel(kind, 1.0)  # gamma = 1 keeps |chi1> intact
    return NoiseChannel.from_eta(kind, 1.0)


__all__ = [
    "AffineBlochMap",
    "BlochBallError",
    "BlochState",
    "DIAGONALIZABLE",
    "FLIPS",
    "GroverParams",
    "Kind",
    "NoiseChannel",
    "NotDiagonalizable",
    "Placement",
    "bloch_trace",
    "channel",
    "clamp_probability",
    "effective_eta",
    "grover_matrix",
    "grover_params",
    "ideal_success_probability",
    "noise_bloch_map",
    "noisy_grover_step",
    "oracle_matrix",
    "optimal_iterations",
    "reduced_noise_matrix",
    "reflection_matrix",
    "step_matrix",
    "success_from_state",
]
