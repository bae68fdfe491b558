"""
Single-qubit noise channels and their action on Bloch vectors.

Every channel except amplitude damping scales the Bloch axes independently, so
on the (r_x, r_z) plane it is a diagonal matrix with one contraction factor eta.
"""

import logging
import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

log = logging.getLogger(__name__)


class Kind(Enum):
    BIT_FLIP = "bf"
    PHASE_FLIP = "pf"
    BIT_PHASE_FLIP = "bpf"
    DEPOLARIZING = "dp"
    PHASE_DAMPING = "pd"
    AMPLITUDE_DAMPING = "ad"
    IDENTITY = "id"


# Parameterised by p, the probability of leaving the state alone
FLIPS = {Kind.BIT_FLIP, Kind.PHASE_FLIP, Kind.BIT_PHASE_FLIP}
DAMPINGS = {Kind.PHASE_DAMPING, Kind.AMPLITUDE_DAMPING}
DIAGONALIZABLE = set(Kind) - {Kind.AMPLITUDE_DAMPING}

# How far an explicit eta may sit from the one implied by raw_param
ETA_MATCH = 1e-9


class NotDiagonalizable(ValueError):
    """Raised when an eta-based view is requested for amplitude damping."""


@dataclass(frozen=True)
class NoiseChannel:
    """
    A channel kind plus its physical parameter.

    raw_param is p for the flips, gamma for the dampings and alpha for
    depolarizing. Use from_eta() to build a channel from its contraction
    factor; the exact eta is then kept rather than re-derived from raw_param.
    """

    kind: Kind
    raw_param: float = 1.0
    _eta: float | None = field(default=None, repr=False)

    def __post_init__(self):
        raw = self.raw_param
        if not 0.0 <= raw <= 1.0:
            raise ValueError(f"{self.kind.value} parameter must lie in [0, 1], got {raw}")
        if self.kind in FLIPS and raw < 0.5:
            raise ValueError(f"{self.kind.value} needs p in [1/2, 1] (eta = 2p - 1 >= 0), got p={raw}")
        if self.kind is Kind.IDENTITY and raw != 1.0:
            raise ValueError(f"identity channel takes no parameter, got {raw}")
        if self._eta is not None and self.kind is Kind.AMPLITUDE_DAMPING:
            raise NotDiagonalizable("amplitude damping has no contraction factor")
        if self._eta is not None and not math.isclose(self._eta, _eta_from_raw(self.kind, raw), abs_tol=ETA_MATCH):
            raise ValueError(f"eta={self._eta} does not match {self.kind.value} parameter {raw}")

    @classmethod
    def from_eta(cls, kind: Kind, eta: float) -> "NoiseChannel":
        """Channel of the given kind whose (r_x, r_z) contraction is eta."""
        if not 0.0 <= eta <= 1.0:
            raise ValueError(f"eta must lie in [0, 1], got {eta}")
        if kind in FLIPS:
            raw = (1.0 + eta) / 2.0
        elif kind is Kind.PHASE_DAMPING:
            raw = eta * eta
        elif kind is Kind.DEPOLARIZING:
            raw = 1.0 - eta
        elif kind is Kind.IDENTITY:
            if eta != 1.0:
                raise ValueError(f"identity channel has eta = 1, got {eta}")
            raw = 1.0
        else:
            raise NotDiagonalizable(f"{kind.value} cannot be built from eta")
        return cls(kind, raw, eta)

    @property
    def eta(self) -> float:
        return effective_eta(self)

    @property
    def level(self) -> float:
        """eta where it exists, gamma for amplitude damping."""
        if self.kind is Kind.AMPLITUDE_DAMPING:
            return self.raw_param
        return self.eta


@dataclass(frozen=True, eq=False)
class AffineBlochMap:
    """r -> linear @ r + offset on the full (r_x, r_y, r_z) vector."""

    linear: np.ndarray
    offset: np.ndarray

    def __call__(self, r) -> np.ndarray:
        return self.linear @ np.asarray(r, dtype=float) + self.offset

    def is_contractive(self, samples: int = 1000, seed: int = 0) -> bool:
        """Sample the unit sphere and check every image stays inside the ball."""
        rng = np.random.default_rng(seed)
        points = rng.normal(size=(samples, 3))
        points /= np.linalg.norm(points, axis=1, keepdims=True)
        images = points @ self.linear.T + self.offset
        return bool(np.all(np.linalg.norm(images, axis=1) <= 1.0 + 1e-12))


def effective_eta(channel: NoiseChannel) -> float:
    """The contraction factor: 2p - 1 for flips, sqrt(gamma) for phase damping, 1 - alpha for depolarizing."""
    kind = channel.kind
    if kind is Kind.AMPLITUDE_DAMPING:
        raise NotDiagonalizable("amplitude damping is affine, it has no single contraction factor")
    if channel._eta is not None:
        return channel._eta
    return _eta_from_raw(kind, channel.raw_param)


def _eta_from_raw(kind: Kind, raw: float) -> float:
    if kind in FLIPS:
        return 2.0 * raw - 1.0
    if kind is Kind.PHASE_DAMPING:
        return math.sqrt(raw)
    if kind is Kind.DEPOLARIZING:
        return 1.0 - raw
    return 1.0


def noise_bloch_map(channel: NoiseChannel) -> AffineBlochMap:
    """The channel's action on Bloch vectors."""
    kind = channel.kind
    offset = np.zeros(3)

    if kind is Kind.AMPLITUDE_DAMPING:
        gamma = channel.raw_param
        root = math.sqrt(gamma)
        return AffineBlochMap(np.diag([root, root, gamma]), np.array([0.0, 0.0, 1.0 - gamma]))

    eta = channel.eta
    diagonal = {
        Kind.BIT_FLIP: (1.0, eta, eta),
        Kind.PHASE_FLIP: (eta, eta, 1.0),
        Kind.BIT_PHASE_FLIP: (eta, 1.0, eta),
        Kind.DEPOLARIZING: (eta, eta, eta),
        Kind.PHASE_DAMPING: (eta, eta, 1.0),
        Kind.IDENTITY: (1.0, 1.0, 1.0),
    }[kind]
    return AffineBlochMap(np.diag(diagonal), offset)


def reduced_noise_matrix(channel: NoiseChannel) -> np.ndarray:
    """Restriction of the Bloch map to the (r_x, r_z) plane, a diagonal 2x2 matrix."""
    if channel.kind is Kind.AMPLITUDE_DAMPING:
        raise NotDiagonalizable("amplitude damping is not diagonal on (r_x, r_z)")
    linear = noise_bloch_map(channel).linear
    return np.diag([linear[0, 0], linear[2, 2]])
