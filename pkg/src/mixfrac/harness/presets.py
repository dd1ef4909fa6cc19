"""Problem presets for the three numerical examples.

A preset bundles default grids, default sweep values, named parameter
blocks (one per table block) and a builder that turns merged parameters into
a problem plus its manufactured solution.

``ex3`` is the two-dimensional example with the solution depending on x only,
exactly as stated; it does not vanish on y = 0, 1, so its errors are dominated
by the boundary mismatch.  ``ex3b`` uses sin(pi x) sin(pi y) and is the one the
2D tables are compared against.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..functions import lookup
from ..spatial import EllipticOperator, SpatialGrid, build_elliptic
from ..temporal import TemporalGrid
from ..transform import GeneralProblem, ManufacturedSolution, PowerSeriesTimeFn, manufactured_forcing
from .config import ConfigError, RunConfig

__all__ = ["Preset", "Case", "PRESETS", "build_case", "custom_case", "merged_params"]


@dataclass(frozen=True)
class Case:
    problem: GeneralProblem
    solution: ManufacturedSolution
    sgrid: SpatialGrid
    tgrid: TemporalGrid
    elliptic: EllipticOperator


@dataclass(frozen=True)
class Preset:
    name: str
    dim: int
    M: int
    N: int
    values: tuple[int, ...]
    defaults: dict
    blocks: tuple[dict, ...]
    builder: Callable[[dict], tuple[GeneralProblem, ManufacturedSolution]]
    description: str = ""


def _kappa(prm) -> tuple[float, float, float]:
    k = prm["kappa"]
    if len(k) != 3:
        raise ConfigError(f"kappa needs three entries, got {k}")
    return tuple(float(v) for v in k)


def _ex1(prm):
    g, d, a = prm["gamma"], prm["delta"], prm["alpha"]
    k1, k2, k3 = _kappa(prm)
    sol = ManufacturedSolution(PowerSeriesTimeFn.of((1.0, 1.0), (1.0, 2.0 + g), (1.0, 3.0 + d)),
                               lookup(prm["mode"]))
    pb = GeneralProblem.single(g, d, a, k1, k2, k3, p=lookup(prm["p"]), q=lookup(prm["q"]))
    return pb, sol


def _ex2(prm):
    k1, k2, k3 = _kappa(prm)
    sol = ManufacturedSolution(PowerSeriesTimeFn.of((1.0, 1.0), (1.0, 2.0), (1.0, 3.0)), lookup(prm["mode"]))
    pb = GeneralProblem.multi(prm["gamma"], prm["delta"], prm["alpha"], prm["lambdas"], prm["omegas"],
                              k1, k2, k3, p=lookup(prm["p"]), q=lookup(prm["q"]))
    return pb, sol


def _ex3(prm):
    g, d, a = prm["gamma"], prm["delta"], prm["alpha"]
    k1, k2, k3 = _kappa(prm)
    sol = ManufacturedSolution(PowerSeriesTimeFn.of((1.0, 2.0 + a)), lookup(prm["mode"]))
    pb = GeneralProblem.single(g, d, a, k1, k2, k3, p=lookup(prm["p"]), q=lookup(prm["q"]))
    return pb, sol


def _single_blocks():
    return ({"gamma": 0.9, "delta": 0.5, "alpha": 0.1},
            {"gamma": 0.1, "delta": 0.9, "alpha": 0.5},
            {"gamma": 0.5, "delta": 0.1, "alpha": 0.9})


PRESETS: dict[str, Preset] = {
    "ex1": Preset(
        "ex1", 1, 4000, 320, (20, 40, 80, 160, 320),
        {"kappa": [2, 4, 6], "p": "ex1_p", "q": "ex1_q", "mode": "sin2pix"},
        _single_blocks(), _ex1,
        "1D single-term, u = (t + t^(2+gamma) + t^(3+delta)) sin(2 pi x)",
    ),
    "ex2": Preset(
        "ex2", 1, 7000, 320, (20, 40, 80, 160, 320),
        {"kappa": [6, 2, 4], "lambdas": [3, 5, 7], "omegas": [2, 4, 8],
         "p": "ex2_p", "q": "ex2_q", "mode": "sin4pix"},
        ({"gamma": [0.5, 0.3, 0.1], "delta": [0.9, 0.5, 0.1], "alpha": 0.6},
         {"gamma": [0.4, 0.3, 0.2], "delta": [0.9, 0.8, 0.7], "alpha": 0.5},
         {"gamma": [0.8, 0.7, 0.6], "delta": [0.3, 0.2, 0.1], "alpha": 0.9}),
        _ex2,
        "1D multi-term, u = (t + t^2 + t^3) sin(4 pi x)",
    ),
    "ex3": Preset(
        "ex3", 2, 100, 160, (10, 20, 40, 80, 160),
        {"kappa": [1, 3, 5], "p": "unit", "q": "zero", "mode": "sinpix_2d"},
        _single_blocks(), _ex3,
        "2D single-term, u = t^(2+alpha) sin(pi x) (no y dependence)",
    ),
    "ex3b": Preset(
        "ex3b", 2, 100, 160, (10, 20, 40, 80, 160),
        {"kappa": [1, 3, 5], "p": "unit", "q": "zero", "mode": "sinpix_sinpiy"},
        _single_blocks(), _ex3,
        "2D single-term, u = t^(2+alpha) sin(pi x) sin(pi y)",
    ),
}


def merged_params(cfg: RunConfig) -> dict:
    pre = PRESETS[cfg.preset]
    prm = dict(pre.defaults)
    prm.update(pre.blocks[cfg.block - 1])
    unknown = set(cfg.params) - set(prm)
    if unknown:
        raise ConfigError(f"unknown parameters for {cfg.preset}: {', '.join(sorted(unknown))}")
    prm.update(cfg.params)
    return prm


def custom_case(desc: dict) -> tuple[int, GeneralProblem, ManufacturedSolution]:
    """Explicit problem from a config dictionary.

    Keys: ``dim``, ``alpha``, ``caputo_terms`` and ``integral_terms`` (lists of
    ``[weight, order]``), ``kappa2``, ``p``, ``q``, ``mode`` (catalog names)
    and ``time_terms`` (list of ``[coefficient, exponent]``).
    """
    try:
        sol = ManufacturedSolution(PowerSeriesTimeFn(tuple(map(tuple, desc["time_terms"]))),
                                   lookup(desc["mode"]))
        pb = GeneralProblem(alpha=desc["alpha"],
                            caputo_terms=tuple(map(tuple, desc.get("caputo_terms", []))),
                            integral_terms=tuple(map(tuple, desc.get("integral_terms", []))),
                            kappa2=desc.get("kappa2", 0.0),
                            p=lookup(desc.get("p", "unit")), q=lookup(desc.get("q", "zero")))
    except KeyError as exc:
        raise ConfigError(f"problem definition: {exc}") from None
    return int(desc.get("dim", 1)), pb, sol


def build_case(cfg: RunConfig, N: int | None = None, M: int | None = None) -> Case:
    """Problem, exact solution, grids and A_h for one run of ``cfg``."""
    if cfg.problem is not None:
        dim, pb, sol = custom_case(cfg.problem)
        M = M or cfg.M
        N = N or cfg.N
        if M is None or N is None:
            raise ConfigError("an explicit problem needs M and N")
    else:
        pre = PRESETS[cfg.preset]
        dim = cfg.dim or pre.dim
        pb, sol = pre.builder(merged_params(cfg))
        M = M or cfg.M or pre.M
        N = N or cfg.N or pre.N
    sgrid = SpatialGrid.uniform(dim, M)
    tgrid = TemporalGrid(cfg.T, N)
    op = build_elliptic(pb.p, pb.q, sgrid)
    pb = GeneralProblem(alpha=pb.alpha, caputo_terms=pb.caputo_terms, integral_terms=pb.integral_terms,
                        kappa2=pb.kappa2, p=pb.p, q=pb.q, phi=sol.phi, psi=sol.psi)
    f = manufactured_forcing(pb, sol, op if cfg.forcing == "discrete" else None)
    return Case(pb.with_forcing(f), sol, sgrid, tgrid, op)
