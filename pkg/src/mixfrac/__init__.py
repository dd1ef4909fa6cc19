"""Second-order difference scheme for time-fractional mixed sub-diffusion/diffusion-wave equations.

Modules
-------
kernels
    Trapezoidal RL-integral and L2 Caputo weight sequences.
temporal
    Discrete time operators split into implicit and history parts.
spatial
    Grids, the variable-coefficient elliptic operator, shifted solves, norms.
transform
    Reduction of the second-order-in-time model, forcings, manufactured solutions.
solver
    Time marching, error reports, stability probe.
harness
    Presets, convergence sweeps, table regression, command line.
"""
from .kernels import DomainError, HypothesisViolation, UnsupportedStepError, l2_weights, rl_weights
from .solver import RunResult, initialize, run, stability_probe, step
from .spatial import EllipticOperator, SpatialGrid, build_elliptic, grid_norms, solve_shifted
from .temporal import TemporalGrid
from .transform import (GeneralProblem, ManufacturedSolution, OriginalProblem, PowerSeriesTimeFn,
                        assemble_multiterm, classify_and_transform, manufactured_forcing)

__version__ = "0.1.0"

__all__ = [
    "DomainError", "HypothesisViolation", "UnsupportedStepError", "l2_weights", "rl_weights",
    "RunResult", "initialize", "run", "stability_probe", "step",
    "EllipticOperator", "SpatialGrid", "build_elliptic", "grid_norms", "solve_shifted",
    "TemporalGrid",
    "GeneralProblem", "ManufacturedSolution", "OriginalProblem", "PowerSeriesTimeFn",
    "assemble_multiterm", "classify_and_transform", "manufactured_forcing",
]
