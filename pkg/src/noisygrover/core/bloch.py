"""
Grover iteration acting on the reduced Bloch vector (r_x, r_z).

The initial state is r(0) = (sin theta, cos theta); r_y starts at zero and no
channel here moves it, so it is dropped. The success probability is the
weight on |chi1>, (1 - r_z) / 2.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .channel import NoiseChannel, reduced_noise_matrix
from .params import GroverParams

log = logging.getLogger(__name__)

# How far outside the Bloch ball rounding is allowed to push a state
BALL_SLACK = 1e-9


class BlochBallError(ValueError):
    """A state or probability left the physical range; something upstream is broken."""


class Placement(Enum):
    PER_ITERATION = "iteration"  # R.O.E
    PER_REFLECTION = "reflection"  # R.E.O.E


@dataclass(frozen=True)
class BlochState:
    r_x: float
    r_z: float

    @classmethod
    def initial(cls, params: GroverParams) -> "BlochState":
        return cls(math.sin(params.angle), math.cos(params.angle))

    def as_array(self) -> np.ndarray:
        return np.array([self.r_x, self.r_z])


def clamp_probability(p: float, slack: float = BALL_SLACK) -> float:
    """Clamp rounding noise into [0, 1]; anything further out is an error."""
    if not -slack <= p <= 1.0 + slack:
        raise BlochBallError(f"Probability {p!r} outside [0, 1] beyond rounding slack {slack}")
    return min(1.0, max(0.0, p))


def oracle_matrix() -> np.ndarray:
    """O flips the sign of r_x: reflection about |chi0>."""
    return np.array([[-1.0, 0.0], [0.0, 1.0]])


def reflection_matrix(params: GroverParams) -> np.ndarray:
    """R reflects about the initial state's Bloch direction (sin theta, cos theta)."""
    c, s = math.cos(2 * params.angle), math.sin(2 * params.angle)
    return np.array([[-c, s], [s, c]])


def grover_matrix(params: GroverParams) -> np.ndarray:
    """G = R.O, a rotation by 2 theta towards |chi1>."""
    c, s = math.cos(2 * params.angle), math.sin(2 * params.angle)
    return np.array([[c, s], [-s, c]])


def step_matrix(params: GroverParams, channel: NoiseChannel, placement: Placement) -> np.ndarray:
    """The noisy iteration on (r_x, r_z): G.E per iteration, R.E.O.E per reflection."""
    noise = reduced_noise_matrix(channel)
    if placement is Placement.PER_ITERATION:
        return grover_matrix(params) @ noise
    return reflection_matrix(params) @ noise @ oracle_matrix() @ noise


def noisy_grover_step(
    state: BlochState,
    params: GroverParams,
    channel: NoiseChannel,
    placement: Placement = Placement.PER_ITERATION,
) -> BlochState:
    """Apply one noisy Grover iteration."""
    r_x, r_z = step_matrix(params, channel, placement) @ state.as_array()
    return BlochState(float(r_x), float(r_z))


def success_from_state(state: BlochState) -> float:
    """(1 - r_z) / 2, refusing states that left the Bloch ball."""
    if abs(state.r_z) > 1.0 + BALL_SLACK:
        raise BlochBallError(f"r_z={state.r_z!r} is outside the Bloch ball")
    return clamp_probability((1.0 - state.r_z) / 2.0)


def bloch_trace(
    params: GroverParams,
    channel: NoiseChannel,
    t_end: int,
    placement: Placement = Placement.PER_ITERATION,
) -> list[float]:
    """Success probabilities for t = 0..t_end by iterating the step matrix."""
    if t_end < 0:
        raise ValueError(f"Negative t_end: {t_end}")
    matrix = step_matrix(params, channel, placement)
    r = BlochState.initial(params).as_array()
    probabilities = [success_from_state(BlochState(*r))]
    for _ in range(t_end):
        r = matrix @ r
        probabilities.append(success_from_state(BlochState(float(r[0]), float(r[1]))))
    return probabilities
