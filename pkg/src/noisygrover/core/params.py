"""
Grover geometry in the two-dimensional {|chi0>, |chi1>} subspace.

|chi0> is the uniform superposition of non-targets, |chi1> that of the targets.
The initial state sits at half_angle from |chi0> and every iteration rotates it
by angle = 2 * half_angle.
"""

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class GroverParams:
    """A search instance: N items, m of them marked."""

    n_items: int
    n_targets: int
    half_angle: float  # arcsin(sqrt(m/N))
    angle: float  # rotation per iteration

    @property
    def ratio(self) -> float:
        return self.n_targets / self.n_items


def grover_params(n_items: int, n_targets: int) -> GroverParams:
    """Build the search instance, rejecting anything that isn't 1 <= m <= N, N >= 2."""
    for name, value in (("n_items", n_items), ("n_targets", n_targets)):
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValueError(f"{name} must be an integer, got {value!r}")
    if n_items < 2:
        raise ValueError(f"Database needs at least 2 items, got N={n_items}")
    if not 1 <= n_targets <= n_items:
        raise ValueError(f"Need 1 <= m <= N, got m={n_targets}, N={n_items}")

    half_angle = math.asin(math.sqrt(n_targets / n_items))
    return GroverParams(n_items, n_targets, half_angle, 2 * half_angle)


def ideal_success_probability(params: GroverParams, t: int) -> float:
    """sin^2((2t+1) * theta/2), the noiseless success probability after t iterations."""
    if t < 0:
        raise ValueError(f"Negative iteration count: {t}")
    return math.sin((2 * t + 1) * params.half_angle) ** 2


def optimal_iterations(params: GroverParams) -> int:
    """T = floor(pi/4 * sqrt(N/m))."""
    return math.floor(math.pi / 4 * math.sqrt(params.n_items / params.n_targets))
