"""Implicit second-order time marching for the transformed problem.

Each step j = 1..N-1 solves

    (sigma_I I + sigma_A A_h) y^{j+1} = phi^{j+1} - explicit history terms

where the left side collects the implicit coefficients of the three-point
backward difference, every L2 Caputo term, the reaction term and every
trapezoidal RL-integral term (sigma_I), and of the RL integral of A_h y
(sigma_A).  A_h y^r is cached per layer so the elliptic history costs one
operator application per step.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import gamma as Gamma
from typing import NamedTuple

import numpy as np

from .kernels import l2_base_coefficients, l2_weights, rl_weights
from .spatial import EllipticOperator, Norms, SpatialGrid, build_elliptic, grid_norms, solve_shifted
from .temporal import TemporalGrid, TimeStencil, bdf2_stencil, caputo_stencil, rl_integral_stencil
from .transform import Forcing, GeneralProblem, ManufacturedSolution

__all__ = [
    "START_MODES",
    "SolutionHistory",
    "SchemeCoefficients",
    "ErrorReport",
    "RunResult",
    "initialize",
    "step",
    "run",
    "StabilityReport",
    "stability_probe",
]

START_MODES = ("taylor", "taylor2", "exact")


class SolutionHistory:
    """Layers y^0..y^j (interior nodes) plus the cached products A_h y^r.

    Storage for all ``N + 1`` layers is allocated up front.
    """

    def __init__(self, tgrid: TemporalGrid, n: int, elliptic: EllipticOperator | None = None):
        self.grid = tgrid
        self.elliptic = elliptic
        self._y = np.zeros((tgrid.N + 1, n))
        self._ay = np.zeros((tgrid.N + 1, n)) if elliptic is not None else None
        self.count = 0

    @property
    def j(self) -> int:
        return self.count - 1

    @property
    def layers(self) -> np.ndarray:
        return self._y[: self.count]

    @property
    def a_layers(self) -> np.ndarray:
        if self._ay is None:
            raise ValueError("history was created without an elliptic operator")
        return self._ay[: self.count]

    def append(self, y) -> None:
        if self.count > self.grid.N:
            raise IndexError(f"history already holds all {self.grid.N + 1} layers")
        y = np.asarray(y, dtype=float)
        if y.shape != self._y.shape[1:]:
            raise ValueError(f"layer has shape {y.shape}, expected {self._y.shape[1:]}")
        self._y[self.count] = y
        if self._ay is not None:
            self._ay[self.count] = self.elliptic.apply(y)
        self.count += 1

    def __len__(self) -> int:
        return self.count


@dataclass
class SchemeCoefficients:
    """Kernel caches and prefactors for one (problem, temporal grid) pair."""

    problem: GeneralProblem
    tgrid: TemporalGrid
    _l2_base: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        N = self.tgrid.N
        # j runs to N - 1, so the largest index needed is N - 1 (c) and N (cbar)
        for _, g in self.problem.caputo_terms:
            if g not in self._l2_base:
                self._l2_base[g] = l2_base_coefficients(g, N)
        self.rl_alpha = rl_weights(self.problem.alpha, N - 1)
        self.rl_delta = {d: rl_weights(d, N - 1) for _, d in self.problem.integral_terms}

    @property
    def tau(self) -> float:
        return self.tgrid.tau

    def caputo_prefactor(self, nu: float) -> float:
        return self.tau ** (-nu) / Gamma(2.0 - nu)

    def rl_prefactor(self, nu: float) -> float:
        return self.tau ** nu / Gamma(nu + 2.0)

    def y_stencil(self, j: int) -> TimeStencil:
        """All terms acting on y itself (everything except the elliptic integral)."""
        tau = self.tau
        st = bdf2_stencil(j, tau)
        for w, g in self.problem.caputo_terms:
            st = st + w * caputo_stencil(l2_weights(g, j, self._l2_base[g]), tau)
        for w, d in self.problem.integral_terms:
            st = st + w * rl_integral_stencil(self.rl_delta[d], j, tau)
        if self.problem.kappa2:
            st = st + TimeStencil(self.problem.kappa2, np.zeros(j + 1))
        return st

    def a_stencil(self, j: int) -> TimeStencil:
        """RL integral of order alpha, applied to the cached A_h y layers."""
        return rl_integral_stencil(self.rl_alpha, j, self.tau)

    @property
    def sigma_a(self) -> float:
        return self.rl_prefactor(self.problem.alpha) * float(self.rl_alpha.c[0])


def initialize(problem: GeneralProblem, phi, psi, tgrid: TemporalGrid,
               elliptic: EllipticOperator | None = None, *,
               start: str = "taylor", utt0=None, y1=None) -> SolutionHistory:
    """First two layers.

    ``start="taylor"`` sets y^1 = phi + tau psi.  ``"taylor2"`` adds
    ``tau**2 / 2 * utt0``; ``"exact"`` takes ``y1`` as given (for instance
    the exact solution at t_1).
    """
    phi = np.asarray(phi, dtype=float)
    psi = np.asarray(psi, dtype=float)
    if phi.shape != psi.shape or phi.ndim != 1:
        raise ValueError(f"phi and psi must be matching vectors, got {phi.shape} and {psi.shape}")
    tau = tgrid.tau
    if start == "taylor":
        first = phi + tau * psi
    elif start == "taylor2":
        if utt0 is None:
            raise ValueError("start='taylor2' needs utt0")
        first = phi + tau * psi + 0.5 * tau * tau * np.asarray(utt0, dtype=float)
    elif start == "exact":
        if y1 is None:
            raise ValueError("start='exact' needs y1")
        first = np.asarray(y1, dtype=float)
    else:
        raise ValueError(f"unknown start mode {start!r}; choose from {START_MODES}")
    hist = SolutionHistory(tgrid, phi.size, elliptic)
    hist.append(phi)
    hist.append(first)
    return hist


def step(history: SolutionHistory, coeffs: SchemeCoefficients, elliptic: EllipticOperator,
         forcing_value) -> np.ndarray:
    """Advance from y^j to y^{j+1} and append the result."""
    j = history.j
    if j < 1:
        raise ValueError("step needs the two starting layers")
    if j + 1 > history.grid.N:
        raise IndexError(f"step {j + 1} beyond N={history.grid.N}")
    ys = coeffs.y_stencil(j)
    ast = coeffs.a_stencil(j)
    sigma_i = ys.implicit
    if not sigma_i > 0:
        raise ValueError(f"implicit coefficient {sigma_i} is not positive")
    rhs = np.asarray(forcing_value, dtype=float) - ys.explicit(history.layers) - ast.explicit(history.a_layers)
    layers = history.layers
    guess = 2.0 * layers[j] - layers[j - 1]
    y = solve_shifted(elliptic, sigma_i, ast.implicit, rhs, x0=guess)
    history.append(y)
    return y


class ErrorReport(NamedTuple):
    """Global errors (max over layers) and their per-layer series."""

    E: float
    E_c: float
    E_energy: float
    per_layer: np.ndarray  # (N + 1, 3): l2, max, energy

    @classmethod
    def from_per_layer(cls, per: np.ndarray) -> "ErrorReport":
        g = per.max(axis=0)
        return cls(float(g[0]), float(g[1]), float(g[2]), per)

    @classmethod
    def from_errors(cls, err: np.ndarray, op: EllipticOperator) -> "ErrorReport":
        return cls.from_per_layer(np.array([tuple(grid_norms(e, op)) for e in err]))

    @property
    def norms(self) -> Norms:
        return Norms(self.E, self.E_c, self.E_energy)


@dataclass
class RunResult:
    history: SolutionHistory
    errors: ErrorReport | None
    elliptic: EllipticOperator

    @property
    def final(self) -> np.ndarray:
        return self.history.layers[-1]

    def dump_csv(self, path) -> None:
        """Write the per-layer error series (needs an error report)."""
        if self.errors is None:
            raise ValueError("no exact solution was supplied, so there is no error series")
        times = self.history.grid.times
        data = np.column_stack([np.arange(times.size), times, self.errors.per_layer])
        np.savetxt(path, data, delimiter=",", header="j,t,l2,max,energy", comments="", fmt="%.10g")


def run(problem: GeneralProblem, sgrid: SpatialGrid, tgrid: TemporalGrid,
        forcing: Forcing | None = None, exact: ManufacturedSolution | None = None, *,
        start: str = "taylor", elliptic: EllipticOperator | None = None,
        forcing_values: np.ndarray | None = None, y1=None) -> RunResult:
    """March the scheme over the whole temporal grid.

    Parameters
    ----------
    problem : GeneralProblem
        Orders, weights, coefficients, initial data.  ``problem.forcing`` is
        used when ``forcing`` is not given.
    sgrid, tgrid : SpatialGrid, TemporalGrid
    forcing : Forcing, optional
    exact : ManufacturedSolution, optional
        If given, errors against it are reported, and ``start="exact"`` or
        ``"taylor2"`` may draw the first layer from it.
    start : {"taylor", "taylor2", "exact"}
    elliptic : EllipticOperator, optional
        Prebuilt A_h (otherwise built from ``problem.p``, ``problem.q``).
    forcing_values : ndarray, optional
        Tabulated forcing, shape ``(N + 1, n)``; overrides ``forcing``.
    y1 : ndarray, optional
        Explicit first layer for ``start="exact"``.
    """
    op = elliptic if elliptic is not None else build_elliptic(problem.p, problem.q, sgrid)
    if forcing_values is None:
        f = forcing if forcing is not None else problem.forcing
        if f is None:
            raise ValueError("no forcing supplied")
        fval = f.evaluator(sgrid, tgrid.times)
    else:
        forcing_values = np.asarray(forcing_values, dtype=float)
        if forcing_values.shape != (tgrid.N + 1, sgrid.size):
            raise ValueError(f"forcing has shape {forcing_values.shape}, need {(tgrid.N + 1, sgrid.size)}")
        fval = forcing_values.__getitem__

    phi = sgrid.sample(problem.phi)
    psi = sgrid.sample(problem.psi)
    utt0 = None
    if start == "exact" and y1 is None:
        if exact is None:
            raise ValueError("start='exact' needs an exact solution or y1")
        y1 = exact.at(sgrid, tgrid.tau)
    if start == "taylor2":
        if exact is None:
            raise ValueError("start='taylor2' needs an exact solution for u_tt(0)")
        utt0 = sgrid.sample(exact.utt0)
    hist = initialize(problem, phi, psi, tgrid, op, start=start, utt0=utt0, y1=y1)

    coeffs = SchemeCoefficients(problem, tgrid)
    for j in range(1, tgrid.N):
        step(hist, coeffs, op, fval(j + 1))

    report = None
    if exact is not None:
        mode = sgrid.sample(exact.space)
        err = np.empty(sgrid.size)
        per = np.empty((tgrid.N + 1, 3))
        for k, t in enumerate(tgrid.times):
            np.subtract(hist.layers[k], float(exact.time(t)) * mode, out=err)
            per[k] = tuple(grid_norms(err, op))
        report = ErrorReport.from_per_layer(per)
    return RunResult(hist, report, op)


class StabilityReport(NamedTuple):
    ratio: float
    max_diff_sq: float
    denominator: float
    diff_norms: np.ndarray  # squared L2 norm of the difference per layer


def stability_probe(problem: GeneralProblem, sgrid: SpatialGrid, tgrid: TemporalGrid, mu,
                    forcing: Forcing | None = None, elliptic: EllipticOperator | None = None) -> StabilityReport:
    """Growth of a perturbation ``mu`` of the first layer.

    Two runs share the forcing and differ only in y^1; the ratio
    ``max_j ||y^j - z^j||^2 / (||mu||^2 + tau^(alpha+1) ||mu||_A^2)`` should
    stay bounded as tau shrinks.
    """
    op = elliptic if elliptic is not None else build_elliptic(problem.p, problem.q, sgrid)
    mu = np.asarray(mu, dtype=float)
    f = forcing if forcing is not None else problem.forcing
    if f is None:
        fv = np.zeros((tgrid.N + 1, sgrid.size))
    else:
        fv = f.sample(sgrid, tgrid.times)
    phi = sgrid.sample(problem.phi)
    base_y1 = phi + tgrid.tau * sgrid.sample(problem.psi)
    a = run(problem, sgrid, tgrid, start="exact", y1=base_y1, elliptic=op, forcing_values=fv)
    b = run(problem, sgrid, tgrid, start="exact", y1=base_y1 + mu, elliptic=op, forcing_values=fv)
    diff = b.history.layers - a.history.layers
    vol = sgrid.cell_volume
    sq = vol * np.einsum("ij,ij->i", diff, diff)
    n = grid_norms(mu, op)
    denom = n.l2 ** 2 + tgrid.tau ** (problem.alpha + 1.0) * n.energy ** 2
    mx = float(sq.max())
    if denom == 0.0:
        return StabilityReport(0.0, mx, 0.0, sq)
    return StabilityReport(mx / denom, mx, denom, sq)
