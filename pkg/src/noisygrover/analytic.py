"""
Closed-form success probabilities for Grover search under diagonalizable noise.

Phase flip (and phase damping) and bit flip share the eigenvalues
sqrt(eta) * exp(+-i phi) of the noisy iteration; bit-phase flip (and
depolarizing) is eta times the ideal rotation. The closed forms divide by B,
the imaginary part of those eigenvalues, so outside the oscillatory regime
they hand over to an explicit matrix power.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .core import (
    BlochState,
    GroverParams,
    Kind,
    NoiseChannel,
    NotDiagonalizable,
    Placement,
    clamp_probability,
    ideal_success_probability,
    step_matrix,
    success_from_state,
)

log = logging.getLogger(__name__)

# |eta - A+^2| below this is the critical (double eigenvalue) case
CRITICAL_TOLERANCE = 1e-14
# B below this * sqrt(eta) is too small to divide by
SMALL_B = 1e-7
# eigenvector basis condition number above which V D^t V^-1 is not trusted
COND_LIMIT = 1e4
# the small-angle envelope needs m << N
ENVELOPE_MAX_RATIO = 1 / 64
# m/N above this share of the limit is logged as a warning
ENVELOPE_WARN_SHARE = 0.5


class ApproximationInvalid(ValueError):
    """The small-angle envelope was asked for outside the range where it holds."""


class Regime(Enum):
    OSCILLATORY = "oscillatory"
    CRITICAL = "critical"
    OVERDAMPED = "overdamped"


class Ordering(Enum):
    NOISY_HIGHER = "noisy-higher"
    EQUAL = "equal"
    NOISY_LOWER = "noisy-lower"


@dataclass(frozen=True)
class SpectralParams:
    """
    Eigen-structure of the phase/bit flip iteration.

    a_plus = (1 + eta)/2 cos 2theta is the real part of the eigenvalues and b
    the magnitude of their imaginary part (oscillatory) or of the real split
    (overdamped). phi is only defined in the oscillatory regime.
    """

    a_plus: float
    a_minus: float
    b: float
    phi: float
    eta: float
    regime: Regime


@dataclass(frozen=True)
class EnvelopeParams:
    r_amp: float
    delta: float


def spectral_params(params: GroverParams, eta: float) -> SpectralParams:
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must lie in (0, 1], got {eta}")
    if not 0.0 < params.angle < math.pi:
        raise ValueError(f"Spectral form needs 0 < theta < pi, got {params.angle} (m = N?)")

    cos2 = math.cos(2 * params.angle)
    a_plus = (1 + eta) / 2 * cos2
    a_minus = (1 - eta) / 2 * cos2
    gap = eta - a_plus * a_plus

    if abs(gap) <= CRITICAL_TOLERANCE:
        return SpectralParams(a_plus, a_minus, 0.0, math.nan, eta, Regime.CRITICAL)
    if gap > 0:
        b = math.sqrt(gap)
        return SpectralParams(a_plus, a_minus, b, math.atan2(b, a_plus), eta, Regime.OSCILLATORY)
    return SpectralParams(a_plus, a_minus, math.sqrt(-gap), math.nan, eta, Regime.OVERDAMPED)


def envelope_params(spectral: SpectralParams) -> EnvelopeParams:
    """r = sqrt(A-^2 + B^2) and delta = atan2(B, A-)."""
    return EnvelopeParams(math.hypot(spectral.a_minus, spectral.b), math.atan2(spectral.b, spectral.a_minus))


def _rotates(params: GroverParams) -> bool:
    """False for m = N, where theta = pi and the spectral form has nothing to rotate."""
    return 0.0 < params.angle < math.pi


def _closed_form_usable(spectral: SpectralParams) -> bool:
    return spectral.regime is Regime.OSCILLATORY and spectral.b >= SMALL_B * math.sqrt(spectral.eta)


def phase_flip_probability(params: GroverParams, eta: float, t: int) -> float:
    """Success probability after t iterations with phase flip noise of strength eta."""
    _check_t(t)
    if not _rotates(params):
        return matrix_power_probability(params, NoiseChannel.from_eta(Kind.PHASE_FLIP, eta), t)
    spectral = spectral_params(params, eta)
    if not _closed_form_usable(spectral):
        log.debug("phase flip at eta=%g is %s, using matrix power", eta, spectral.regime.value)
        return matrix_power_probability(params, NoiseChannel.from_eta(Kind.PHASE_FLIP, eta), t)

    theta = params.angle
    b, a_minus, phi = spectral.b, spectral.a_minus, spectral.phi
    bracket = eta * math.sin(phi * t) * math.sin(2 * theta) * math.sin(theta) - (
        b * math.cos(phi * t) + a_minus * math.sin(phi * t)
    ) * math.cos(theta)
    return clamp_probability(0.5 + eta ** (t / 2) / (2 * b) * bracket)


def bit_flip_probability(params: GroverParams, eta: float, t: int) -> float:
    """Success probability after t iterations with bit flip noise of strength eta."""
    _check_t(t)
    if not _rotates(params):
        return matrix_power_probability(params, NoiseChannel.from_eta(Kind.BIT_FLIP, eta), t)
    spectral = spectral_params(params, eta)
    if not _closed_form_usable(spectral):
        log.debug("bit flip at eta=%g is %s, using matrix power", eta, spectral.regime.value)
        return matrix_power_probability(params, NoiseChannel.from_eta(Kind.BIT_FLIP, eta), t)

    theta = params.angle
    b, a_minus, phi = spectral.b, spectral.a_minus, spectral.phi
    bracket = math.sin(phi * t) * math.sin(2 * theta) * math.sin(theta) - (
        b * math.cos(phi * t) - a_minus * math.sin(phi * t)
    ) * math.cos(theta)
    return clamp_probability(0.5 + eta ** (t / 2) / (2 * b) * bracket)


def bit_phase_flip_probability(params: GroverParams, eta: float, t: int) -> float:
    """1/2 - eta^t cos((2t+1) theta) / 2; exact for any eta."""
    _check_t(t)
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must lie in (0, 1], got {eta}")
    return clamp_probability(0.5 - eta**t * math.cos((2 * t + 1) * params.angle) / 2)


def _envelope_spectral(params: GroverParams, eta: float) -> SpectralParams:
    if params.ratio > ENVELOPE_MAX_RATIO:
        raise ApproximationInvalid(f"Envelope needs m/N <= 1/64, got {params.n_targets}/{params.n_items}")
    if params.ratio > ENVELOPE_WARN_SHARE * ENVELOPE_MAX_RATIO:
        log.warning("envelope at m/N = %d/%d is close to its 1/64 limit", params.n_targets, params.n_items)
    spectral = spectral_params(params, eta)
    if not _closed_form_usable(spectral):
        raise ApproximationInvalid(f"Envelope needs the oscillatory regime, eta={eta} is {spectral.regime.value}")
    return spectral


def phase_flip_envelope(params: GroverParams, eta: float, t: int) -> float:
    """Small-angle form 1/2 - eta^(t/2) r sin(phi t + delta) / (2B); unclamped."""
    _check_t(t)
    spectral = _envelope_spectral(params, eta)
    envelope = envelope_params(spectral)
    return 0.5 - eta ** (t / 2) / (2 * spectral.b) * envelope.r_amp * math.sin(spectral.phi * t + envelope.delta)


def bit_flip_envelope(params: GroverParams, eta: float, t: int) -> float:
    """Small-angle form 1/2 + eta^(t/2) r sin(phi t - delta) / (2B); unclamped."""
    _check_t(t)
    spectral = _envelope_spectral(params, eta)
    envelope = envelope_params(spectral)
    return 0.5 + eta ** (t / 2) / (2 * spectral.b) * envelope.r_amp * math.sin(spectral.phi * t - envelope.delta)


def matrix_power_probability(
    params: GroverParams,
    channel: NoiseChannel,
    t: int,
    placement: Placement = Placement.PER_ITERATION,
) -> float:
    """
    Success probability from the t-th power of the 2x2 noisy iteration.

    Uses the eigendecomposition when its basis is well conditioned and
    repeated squaring otherwise (critical and near-critical points).
    """
    _check_t(t)
    matrix = step_matrix(params, channel, placement)
    start = BlochState.initial(params).as_array()

    eigenvalues, basis = np.linalg.eig(matrix)
    if np.linalg.cond(basis) < COND_LIMIT:
        power = ((basis * eigenvalues**t) @ np.linalg.inv(basis)).real
    else:
        log.debug("ill-conditioned eigenbasis for %s, squaring instead", channel)
        power = np.linalg.matrix_power(matrix, t)

    r_x, r_z = power @ start
    return success_from_state(BlochState(float(r_x), float(r_z)))


def iteration_eigenvalues(
    params: GroverParams,
    channel: NoiseChannel,
    placement: Placement = Placement.PER_ITERATION,
) -> tuple[complex, complex]:
    """
    Eigenvalues of the noisy iteration from the closed forms.

    sqrt(eta) e^(+-i phi) for phase/bit flip style noise in the oscillatory
    regime, A+ +- B on the real line otherwise, and eta e^(+-2i theta) when the
    noise is a multiple of the identity.
    """
    eta = _effective_eta(channel, placement)
    if channel.kind in (Kind.BIT_PHASE_FLIP, Kind.DEPOLARIZING, Kind.IDENTITY):
        rotation = complex(math.cos(2 * params.angle), math.sin(2 * params.angle))
        return eta * rotation, eta * rotation.conjugate()

    spectral = spectral_params(params, eta)
    if spectral.regime is Regime.OSCILLATORY:
        return complex(spectral.a_plus, spectral.b), complex(spectral.a_plus, -spectral.b)
    return complex(spectral.a_plus + spectral.b), complex(spectral.a_plus - spectral.b)


def closed_form_probability(
    params: GroverParams,
    channel: NoiseChannel,
    t: int,
    placement: Placement = Placement.PER_ITERATION,
) -> float:
    """
    Dispatch to the formula for the channel's family.

    Phase damping shares the phase flip formula and depolarizing the bit-phase
    flip one. Noise on both reflections acts like noise of strength eta^2 once
    per iteration.
    """
    kind = channel.kind
    if kind is Kind.AMPLITUDE_DAMPING:
        raise NotDiagonalizable("no closed form exists for amplitude damping")
    if kind is Kind.IDENTITY:
        return ideal_success_probability(params, t)

    eta = _effective_eta(channel, placement)
    if eta == 0.0:
        # fully contracted after the first noisy step
        return matrix_power_probability(params, channel, t, placement)
    if kind in (Kind.PHASE_FLIP, Kind.PHASE_DAMPING):
        return phase_flip_probability(params, eta, t)
    if kind is Kind.BIT_FLIP:
        return bit_flip_probability(params, eta, t)
    return bit_phase_flip_probability(params, eta, t)


def decay_amplitude(
    params: GroverParams,
    channel: NoiseChannel,
    placement: Placement = Placement.PER_ITERATION,
) -> tuple[float, float]:
    """
    (rate, C) with |P(t) - 1/2| <= C * rate^t for every t.

    C is the exact amplitude of the oscillating bracket in the closed form, so
    phase/bit flip noise must be in the oscillatory regime.
    """
    kind = channel.kind
    if kind is Kind.AMPLITUDE_DAMPING:
        raise NotDiagonalizable("no closed form exists for amplitude damping")
    eta = _effective_eta(channel, placement)
    if kind in (Kind.BIT_PHASE_FLIP, Kind.DEPOLARIZING, Kind.IDENTITY):
        return eta, 0.5

    spectral = spectral_params(params, eta)
    if not _closed_form_usable(spectral):
        raise ValueError(f"No oscillating closed form at eta={eta}: regime is {spectral.regime.value}")

    theta = params.angle
    leak = math.sin(2 * theta) * math.sin(theta)
    if kind is Kind.BIT_FLIP:
        sine = leak + spectral.a_minus * math.cos(theta)
    else:
        sine = eta * leak - spectral.a_minus * math.cos(theta)
    cosine = spectral.b * math.cos(theta)
    return math.sqrt(eta), math.hypot(sine, cosine) / (2 * spectral.b)


def t_max(params: GroverParams, eta: float) -> int:
    """Iteration of the bit-phase flip maximum: floor((atan(ln eta / 2theta) + pi) / 2theta)."""
    if not 0.0 < eta <= 1.0:
        raise ValueError(f"eta must lie in (0, 1], got {eta}")
    theta = params.angle
    return math.floor((math.atan(math.log(eta) / (2 * theta)) + math.pi) / (2 * theta))


def p_max(params: GroverParams, eta: float) -> float:
    """Bit-phase flip maximum, taken from a +-2 scan around t_max."""
    centre = t_max(params, eta)
    window = range(max(0, centre - 2), centre + 3)
    best = max(bit_phase_flip_probability(params, eta, t) for t in window)
    at_centre = bit_phase_flip_probability(params, eta, centre)
    if best > at_centre:
        log.debug("t_max=%d is not the discrete argmax at eta=%g (%.12g > %.12g)", centre, eta, best, at_centre)
    return best


def bpf_vs_ideal_ordering(params: GroverParams, eta: float, t: int) -> Ordering:
    """Whether bit-phase flip noise lifts or lowers P(t) against the noiseless run."""
    _check_t(t)
    if not 0.0 < eta < 1.0:
        raise ValueError(f"eta must lie in (0, 1), got {eta}")
    cosine = math.cos((2 * t + 1) * params.angle)
    if t == 0 or abs(cosine) <= 1e-12:
        return Ordering.EQUAL
    return Ordering.NOISY_HIGHER if cosine > 0 else Ordering.NOISY_LOWER


def _effective_eta(channel: NoiseChannel, placement: Placement) -> float:
    eta = channel.eta
    return eta * eta if placement is Placement.PER_REFLECTION else eta


def _check_t(t: int) -> None:
    if t < 0:
        raise ValueError(f"Negative iteration count: {t}")
