"""Discrete temporal operators on a uniform grid, split into implicit/explicit parts.

Every operator evaluated at ``t_{j+1}`` is linear in the layers ``y^0..y^{j+1}``.
A :class:`TimeStencil` stores that linear form as one coefficient for the
unknown layer ``y^{j+1}`` and a vector of coefficients for the known layers
``y^0..y^j``; applying it to a history gives an :class:`OperatorSplit`.
Stencils of different operators can be added, which is how the solver
assembles one right-hand side per step.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gamma

import numpy as np

from .kernels import L2Weights, RLWeights, UnsupportedStepError

__all__ = [
    "TemporalGrid",
    "OperatorSplit",
    "TimeStencil",
    "omega",
    "rl_integral_stencil",
    "caputo_stencil",
    "bdf2_stencil",
    "rl_integral_split",
    "caputo_split",
    "bdf2_split",
]


@dataclass(frozen=True)
class TemporalGrid:
    """Uniform grid t_j = j * tau, j = 0..N on [0, T]."""

    T: float
    N: int

    def __post_init__(self):
        if not (self.T > 0):
            raise ValueError(f"T must be positive, got {self.T}")
        if int(self.N) != self.N or self.N < 2:
            raise ValueError(f"N must be an integer >= 2, got {self.N}")

    @property
    def tau(self) -> float:
        return self.T / self.N

    @property
    def times(self) -> np.ndarray:
        return np.arange(self.N + 1) * self.tau

    def t(self, j: int) -> float:
        return j * self.tau


@dataclass(frozen=True)
class OperatorSplit:
    implicit_coeff: float
    explicit_part: np.ndarray

    def value(self, y_next) -> np.ndarray:
        """Full operator value once the unknown layer is known."""
        return self.implicit_coeff * np.asarray(y_next) + self.explicit_part


@dataclass(frozen=True)
class TimeStencil:
    """Linear form ``implicit * y^{j+1} + sum_k history[k] * y^k``."""

    implicit: float
    history: np.ndarray

    @property
    def j(self) -> int:
        return len(self.history) - 1

    def __add__(self, other: "TimeStencil") -> "TimeStencil":
        if len(other.history) != len(self.history):
            raise ValueError("stencils refer to different steps")
        return TimeStencil(self.implicit + other.implicit, self.history + other.history)

    def __mul__(self, s: float) -> "TimeStencil":
        return TimeStencil(s * self.implicit, s * self.history)

    __rmul__ = __mul__

    def explicit(self, layers) -> np.ndarray:
        layers = np.asarray(layers)
        if layers.shape[0] != len(self.history):
            raise ValueError(
                f"history has {layers.shape[0]} layers, stencil expects {len(self.history)} (layers 0..j)"
            )
        return np.tensordot(self.history, layers, axes=(0, 0))

    def apply(self, layers) -> OperatorSplit:
        return OperatorSplit(self.implicit, self.explicit(layers))


def omega(nu: float, t):
    """Kernel t**(nu - 1) / Gamma(nu)."""
    return np.power(t, nu - 1.0) / gamma(nu)


def rl_integral_stencil(weights: RLWeights, j: int, tau: float) -> TimeStencil:
    """Trapezoidal RL integral of order ``weights.nu`` at ``t_{j+1}``."""
    if j < 0:
        raise ValueError(f"j must be >= 0, got {j}")
    if len(weights.c) < j + 1 or len(weights.cbar) < j + 2:
        raise ValueError(f"RL weights (j={weights.j}) too short for step j={j}")
    nu = weights.nu
    scale = tau ** nu / gamma(nu + 2.0)
    hist = np.empty(j + 1)
    # exact product-integration weight of the initial layer is cbar_j
    hist[0] = weights.cbar[j]
    # layer k (1..j) carries c_{j+1-k}
    hist[1:] = weights.c[j:0:-1]
    return TimeStencil(scale * weights.c[0], scale * hist)


def caputo_stencil(weights: L2Weights, tau: float) -> TimeStencil:
    """L2 Caputo derivative of order ``weights.nu`` at ``t_{weights.j+1}``."""
    j = weights.j
    if j < 1:
        raise UnsupportedStepError("L2 Caputo stencil needs j >= 1")
    nu = weights.nu
    a = weights.a
    scale = tau ** (-nu) / gamma(2.0 - nu)
    hist = np.empty(j + 1)
    # sum_r a_{j-r} (u^{r+1} - u^r): layer k gets a_{j+1-k} - a_{j-k}
    hist[0] = -a[j]
    hist[1:] = a[j:0:-1] - a[j - 1::-1]
    return TimeStencil(scale * a[0], scale * hist)


def bdf2_stencil(j: int, tau: float) -> TimeStencil:
    """Three-point backward difference (3y^{j+1} - 4y^j + y^{j-1}) / (2 tau)."""
    if j < 1:
        raise UnsupportedStepError("three-point backward difference needs j >= 1")
    hist = np.zeros(j + 1)
    hist[j] = -4.0 / (2.0 * tau)
    hist[j - 1] = 1.0 / (2.0 * tau)
    return TimeStencil(3.0 / (2.0 * tau), hist)


def _j_of(layers) -> int:
    return np.asarray(layers).shape[0] - 1


def rl_integral_split(nu: float, weights: RLWeights, history, tau: float) -> OperatorSplit:
    """Split of the discrete RL integral; ``history`` holds layers 0..j."""
    if weights.nu != nu:
        raise ValueError(f"weights are for order {weights.nu}, not {nu}")
    return rl_integral_stencil(weights, _j_of(history), tau).apply(history)


def caputo_split(nu: float, weights: L2Weights, history, tau: float) -> OperatorSplit:
    """Split of the L2 Caputo derivative; ``history`` holds layers 0..j."""
    if weights.nu != nu:
        raise ValueError(f"weights are for order {weights.nu}, not {nu}")
    j = _j_of(history)
    if j < 1:
        raise UnsupportedStepError("L2 Caputo split needs j >= 1")
    if weights.j != j:
        raise ValueError(f"weights built for j={weights.j}, history has j={j}")
    return caputo_stencil(weights, tau).apply(history)


def bdf2_split(history, tau: float) -> OperatorSplit:
    return bdf2_stencil(_j_of(history), tau).apply(history)
