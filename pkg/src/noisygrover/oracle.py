"""
Density-matrix reference simulator.

Evolves the 2x2 density matrix over {|chi0>, |chi1>} with the exact Grover
unitaries and the channels' Kraus operators. It shares nothing with the Bloch
or closed-form paths except the channel parameters, so it is the ground truth
they are checked against.
"""

import logging
import math
from dataclasses import dataclass, field

import numpy as np

from .core import (
    FLIPS,
    GroverParams,
    Kind,
    NoiseChannel,
    NotDiagonalizable,
    Placement,
    bloch_trace,
    clamp_probability,
)

log = logging.getLogger(__name__)

I2 = np.eye(2, dtype=complex)
X = np.array([[0, 1], [1, 0]], dtype=complex)
Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
Z = np.array([[1, 0], [0, -1]], dtype=complex)

# Tolerance used when validating states and Kraus sets
TOLERANCE = 1e-10


class KrausError(ValueError):
    """The operators do not sum to the identity, so the map is not trace preserving."""


@dataclass(frozen=True, eq=False)
class DensityMatrix2:
    """Hermitian, unit-trace, positive 2x2 matrix over {|chi0>, |chi1>}."""

    matrix: np.ndarray

    def __post_init__(self):
        rho = np.asarray(self.matrix, dtype=complex)
        if rho.shape != (2, 2):
            raise ValueError(f"Density matrix must be 2x2, got shape {rho.shape}")
        object.__setattr__(self, "matrix", rho)
        if abs(rho[1, 0] - np.conj(rho[0, 1])) > TOLERANCE or abs(rho[0, 0].imag) + abs(rho[1, 1].imag) > TOLERANCE:
            raise ValueError("Density matrix is not Hermitian")
        if abs(self.trace - 1.0) > TOLERANCE:
            raise ValueError(f"Density matrix trace is {self.trace}, not 1")
        if self.min_eigenvalue < -TOLERANCE:
            raise ValueError(f"Density matrix has negative eigenvalue {self.min_eigenvalue}")

    @classmethod
    def pure(cls, amplitudes) -> "DensityMatrix2":
        psi = np.asarray(amplitudes, dtype=complex)
        return cls(np.outer(psi, psi.conj()))

    @property
    def trace(self) -> float:
        return float(np.trace(self.matrix).real)

    @property
    def min_eigenvalue(self) -> float:
        return float(np.linalg.eigvalsh(self.matrix)[0])

    @property
    def p_success(self) -> float:
        """Weight on |chi1>."""
        return float(self.matrix[1, 1].real)


@dataclass(frozen=True, eq=False)
class KrausSet:
    operators: tuple

    def __post_init__(self):
        ops = tuple(np.asarray(op, dtype=complex) for op in self.operators)
        if not ops:
            raise KrausError("Empty Kraus set")
        object.__setattr__(self, "operators", ops)
        completeness = sum(op.conj().T @ op for op in ops)
        if not np.allclose(completeness, I2, rtol=0.0, atol=1e-12):
            raise KrausError(f"sum E_k^dagger E_k != I:\n{completeness}")


@dataclass(frozen=True)
class SimulationTrace:
    """Per-iteration success probabilities of one simulated run."""

    params: GroverParams
    channel: NoiseChannel
    placement: Placement
    points: tuple  # (t, p_success) pairs
    purity: tuple = field(default=(), repr=False)

    @property
    def probabilities(self) -> list[float]:
        return [p for _, p in self.points]

    @property
    def argmax_t(self) -> int:
        return argmax_scan(self)[0]

    @property
    def p_max(self) -> float:
        return argmax_scan(self)[1]


def kraus_ops(channel: NoiseChannel) -> KrausSet:
    """
    Kraus operators for the channel.

    Flips are sqrt(p) I + sqrt(1-p) P for the flipping Pauli P; depolarizing
    is sqrt(1 - 3a/4) I plus sqrt(a/4) on each Pauli. Zero-weight terms are left out.
    """
    kind, raw = channel.kind, channel.raw_param

    if kind is Kind.IDENTITY:
        ops = [I2]
    elif kind in FLIPS:
        pauli = {Kind.BIT_FLIP: X, Kind.PHASE_FLIP: Z, Kind.BIT_PHASE_FLIP: Y}[kind]
        ops = [math.sqrt(raw) * I2, math.sqrt(1.0 - raw) * pauli]
    elif kind is Kind.DEPOLARIZING:
        ops = [math.sqrt(1.0 - 0.75 * raw) * I2] + [math.sqrt(raw / 4) * pauli for pauli in (X, Y, Z)]
    elif kind is Kind.PHASE_DAMPING:
        ops = [np.diag([1.0, math.sqrt(raw)]), np.diag([0.0, math.sqrt(1.0 - raw)])]
    else:
        ops = [np.diag([1.0, math.sqrt(raw)]), np.array([[0.0, math.sqrt(1.0 - raw)], [0.0, 0.0]])]

    return KrausSet(tuple(op for op in ops if op.any()))


def apply_channel(rho: DensityMatrix2, kraus: KrausSet) -> DensityMatrix2:
    """Operator sum: rho -> sum_k E_k rho E_k^dagger."""
    if not isinstance(kraus, KrausSet):
        kraus = KrausSet(tuple(kraus))
    out = sum(op @ rho.matrix @ op.conj().T for op in kraus.operators)
    return DensityMatrix2(out)


def apply_unitary(rho: DensityMatrix2, unitary: np.ndarray) -> DensityMatrix2:
    return DensityMatrix2(unitary @ rho.matrix @ unitary.conj().T)


def grover_unitary(params: GroverParams) -> np.ndarray:
    """One Grover iteration: rotation by theta from |chi0> towards |chi1>."""
    c, s = math.cos(params.angle), math.sin(params.angle)
    return np.array([[c, -s], [s, c]], dtype=complex)


def oracle_and_reflection_unitaries(params: GroverParams) -> tuple[np.ndarray, np.ndarray]:
    """O = diag(1, -1) marks the targets, R = 2|psi0><psi0| - I; R.O is the Grover iteration."""
    psi0 = initial_amplitudes(params)
    oracle = np.diag([1.0, -1.0]).astype(complex)
    reflection = 2 * np.outer(psi0, psi0.conj()) - I2
    return oracle, reflection


def initial_amplitudes(params: GroverParams) -> np.ndarray:
    return np.array([math.cos(params.half_angle), math.sin(params.half_angle)], dtype=complex)


def to_bloch(rho: DensityMatrix2) -> np.ndarray:
    """(r_x, r_y, r_z) with rho = (I + r_x X + r_y Y + r_z Z) / 2."""
    m = rho.matrix
    return np.array([2 * m[0, 1].real, -2 * m[0, 1].imag, (m[0, 0] - m[1, 1]).real])


def from_bloch(r) -> DensityMatrix2:
    r_x, r_y, r_z = r
    return DensityMatrix2((I2 + r_x * X + r_y * Y + r_z * Z) / 2)


def purity(rho: DensityMatrix2) -> float:
    """Tr(rho^2): 1 for pure states, 1/2 for the maximally mixed one."""
    return float(np.trace(rho.matrix @ rho.matrix).real)


def simulate_trace(
    params: GroverParams,
    channel: NoiseChannel,
    t_end: int,
    placement: Placement = Placement.PER_ITERATION,
) -> SimulationTrace:
    """
    Run t_end noisy iterations from |psi0><psi0|, recording rho_11 after each.

    Per iteration: channel, O, R. Per reflection: channel, O, channel, R.
    Amplitude damping is supported here and only here.
    """
    if t_end < 0:
        raise ValueError(f"Negative t_end: {t_end}")

    kraus = kraus_ops(channel)
    oracle, reflection = oracle_and_reflection_unitaries(params)
    rho = DensityMatrix2.pure(initial_amplitudes(params))

    points = [(0, clamp_probability(rho.p_success))]
    purities = [purity(rho)]
    for t in range(1, t_end + 1):
        rho = apply_channel(rho, kraus)
        rho = apply_unitary(rho, oracle)
        if placement is Placement.PER_REFLECTION:
            rho = apply_channel(rho, kraus)
        rho = apply_unitary(rho, reflection)
        points.append((t, clamp_probability(rho.p_success)))
        purities.append(purity(rho))

    log.debug("simulated %s over %d iterations (N=%d, m=%d)", channel, t_end, params.n_items, params.n_targets)
    return SimulationTrace(params, channel, placement, tuple(points), tuple(purities))


def argmax_scan(trace: SimulationTrace) -> tuple[int, float]:
    """First t reaching the highest success probability."""
    if not trace.points:
        raise ValueError("Cannot scan an empty trace")
    best_t, best_p = trace.points[0]
    for t, p in trace.points[1:]:
        if p > best_p:
            best_t, best_p = t, p
    return best_t, best_p


def bloch_oracle_crosscheck(
    params: GroverParams,
    channel: NoiseChannel,
    t_end: int,
    placement: Placement = Placement.PER_ITERATION,
) -> float:
    """Largest |p_density(t) - p_bloch(t)| over the run."""
    if channel.kind is Kind.AMPLITUDE_DAMPING:
        raise NotDiagonalizable("the Bloch iteration has no amplitude damping path")
    dense = simulate_trace(params, channel, t_end, placement).probabilities
    reduced = bloch_trace(params, channel, t_end, placement)
    return max(abs(a - b) for a, b in zip(dense, reduced))

