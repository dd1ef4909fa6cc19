"""Uniform grids on the unit interval/square and the discrete elliptic operator.

The operator is the conservative three-point (1D) or five-point (2D) stencil

    A_h u_i = -[p(x_{i+1/2})(u_{i+1} - u_i) - p(x_{i-1/2})(u_i - u_{i-1})] / h^2 + q(x_i) u_i

with homogeneous Dirichlet closure.  Vectors live on interior nodes only; 2D
vectors are flattened in C order with ``x`` as the slow index.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import sqrt
from typing import Callable, NamedTuple

import numpy as np
from scipy.linalg import solve_banded

__all__ = [
    "CoefficientError",
    "SolverError",
    "InternalConsistencyError",
    "SpatialGrid",
    "EllipticOperator",
    "build_elliptic_1d",
    "build_elliptic_2d",
    "build_elliptic",
    "solve_shifted",
    "conjugate_gradient",
    "Norms",
    "grid_norms",
]

CG_RTOL = 1e-12


class CoefficientError(ValueError):
    """Diffusivity not strictly positive (or reaction negative) at a sample point."""


class SolverError(RuntimeError):
    def __init__(self, message: str, residual: float):
        super().__init__(f"{message} (relative residual {residual:.3e})")
        self.residual = residual


class InternalConsistencyError(RuntimeError):
    pass


@dataclass(frozen=True)
class SpatialGrid:
    """Uniform grid on [0, 1]^dim with ``M`` intervals per direction.

    ``M`` is an int for 1D and an ``(M1, M2)`` tuple for 2D.
    """

    dim: int
    M: int | tuple[int, int]

    def __post_init__(self):
        if self.dim == 1:
            if isinstance(self.M, tuple) or int(self.M) != self.M or self.M < 2:
                raise ValueError(f"1D grid needs an integer M >= 2, got {self.M!r}")
        elif self.dim == 2:
            M = (self.M, self.M) if np.isscalar(self.M) else tuple(self.M)
            if len(M) != 2 or any(int(m) != m or m < 2 for m in M):
                raise ValueError(f"2D grid needs M >= 2 per direction, got {self.M!r}")
            object.__setattr__(self, "M", (int(M[0]), int(M[1])))
        else:
            raise ValueError(f"dim must be 1 or 2, got {self.dim}")

    @classmethod
    def uniform(cls, dim: int, M: int) -> "SpatialGrid":
        return cls(dim, M if dim == 1 else (M, M))

    @property
    def h(self):
        if self.dim == 1:
            return 1.0 / self.M
        return (1.0 / self.M[0], 1.0 / self.M[1])

    @property
    def shape(self) -> tuple[int, ...]:
        """Interior array shape."""
        if self.dim == 1:
            return (self.M - 1,)
        return (self.M[0] - 1, self.M[1] - 1)

    @property
    def size(self) -> int:
        return int(np.prod(self.shape))

    @property
    def cell_volume(self) -> float:
        return self.h if self.dim == 1 else self.h[0] * self.h[1]

    def axis(self, k: int = 0) -> np.ndarray:
        """Interior node coordinates along axis ``k``."""
        M = self.M if self.dim == 1 else self.M[k]
        return np.arange(1, M) / M

    def points(self) -> tuple[np.ndarray, ...]:
        """Interior node coordinates, one flat array per dimension."""
        if self.dim == 1:
            return (self.axis(0),)
        X, Y = np.meshgrid(self.axis(0), self.axis(1), indexing="ij")
        return (X.ravel(), Y.ravel())

    def sample(self, fn: Callable) -> np.ndarray:
        """Evaluate ``fn(*coords)`` on the interior nodes as a flat vector."""
        return np.broadcast_to(np.asarray(fn(*self.points()), dtype=float), (self.size,)).copy()


@dataclass(frozen=True, eq=False)
class EllipticOperator:
    """Matrix-free A_h on a :class:`SpatialGrid`.

    ``px``/``py`` are diffusivities at the half nodes along each axis (shape
    ``(M1, M2-1)`` and ``(M1-1, M2)`` in 2D, ``(M,)`` in 1D) and ``q`` the
    reaction coefficient at interior nodes.
    """

    grid: SpatialGrid
    px: np.ndarray
    q: np.ndarray
    py: np.ndarray | None = None

    def apply(self, u) -> np.ndarray:
        g = self.grid
        u = np.asarray(u, dtype=float)
        if u.shape != (g.size,):
            raise ValueError(f"vector of shape {u.shape} does not match grid with {g.size} unknowns")
        if g.dim == 1:
            h2 = g.h ** 2
            up = np.zeros(g.M + 1)
            up[1:-1] = u
            flux = self.px * np.diff(up)  # p_{i+1/2} (u_{i+1} - u_i), i = 0..M-1
            return -np.diff(flux) / h2 + self.q * u
        hx, hy = g.h
        U = np.zeros((g.M[0] + 1, g.M[1] + 1))
        U[1:-1, 1:-1] = u.reshape(g.shape)
        fx = self.px * np.diff(U[:, 1:-1], axis=0)
        fy = self.py * np.diff(U[1:-1, :], axis=1)
        out = -np.diff(fx, axis=0) / hx ** 2 - np.diff(fy, axis=1) / hy ** 2
        return out.ravel() + self.q * u

    __call__ = apply

    def diagonal(self) -> np.ndarray:
        g = self.grid
        if g.dim == 1:
            return (self.px[:-1] + self.px[1:]) / g.h ** 2 + self.q
        hx, hy = g.h
        d = (self.px[:-1, :] + self.px[1:, :]) / hx ** 2 + (self.py[:, :-1] + self.py[:, 1:]) / hy ** 2
        return d.ravel() + self.q

    def tridiagonal(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(lower, main, upper) diagonals of the 1D operator."""
        if self.grid.dim != 1:
            raise ValueError("tridiagonal form exists only in 1D")
        h2 = self.grid.h ** 2
        off = -self.px[1:-1] / h2
        return off, self.diagonal(), off

    def inner(self, u, v) -> float:
        """Weighted grid inner product (u, v)."""
        return float(self.grid.cell_volume * np.dot(u, v))


def _check_coefficients(p_vals: list[np.ndarray], q_vals: np.ndarray) -> None:
    for pv in p_vals:
        if not np.all(np.isfinite(pv)) or np.any(pv <= 0):
            raise CoefficientError(f"diffusivity must be positive at all half nodes (min {np.min(pv):.3g})")
    if not np.all(np.isfinite(q_vals)) or np.any(q_vals < 0):
        raise CoefficientError(f"reaction coefficient must be nonnegative (min {np.min(q_vals):.3g})")


def _as_values(fn, *coords) -> np.ndarray:
    shape = np.broadcast_shapes(*(np.shape(c) for c in coords))
    return np.broadcast_to(np.asarray(fn(*coords), dtype=float), shape).copy()


def build_elliptic_1d(p: Callable, q: Callable, grid: SpatialGrid) -> EllipticOperator:
    """A_h in 1D with ``p`` sampled exactly at the half nodes x_{i+1/2}."""
    if grid.dim != 1:
        raise ValueError("build_elliptic_1d needs a 1D grid")
    h = grid.h
    xh = (np.arange(grid.M) + 0.5) * h
    px = _as_values(p, xh)
    qv = _as_values(q, grid.axis(0))
    _check_coefficients([px], qv)
    return EllipticOperator(grid, px, qv)


def build_elliptic_2d(p: Callable, q: Callable, grid: SpatialGrid) -> EllipticOperator:
    """Five-point A_h on the unit square; ``p`` and ``q`` take ``(x, y)``."""
    if grid.dim != 2:
        raise ValueError("build_elliptic_2d needs a 2D grid")
    hx, hy = grid.h
    xi, yi = grid.axis(0), grid.axis(1)
    xh = (np.arange(grid.M[0]) + 0.5) * hx
    yh = (np.arange(grid.M[1]) + 0.5) * hy
    px = _as_values(p, *np.meshgrid(xh, yi, indexing="ij"))
    py = _as_values(p, *np.meshgrid(xi, yh, indexing="ij"))
    qv = _as_values(q, *np.meshgrid(xi, yi, indexing="ij")).ravel()
    _check_coefficients([px, py], qv)
    return EllipticOperator(grid, px, qv, py)


def build_elliptic(p: Callable, q: Callable, grid: SpatialGrid) -> EllipticOperator:
    return build_elliptic_1d(p, q, grid) if grid.dim == 1 else build_elliptic_2d(p, q, grid)


def conjugate_gradient(matvec: Callable, rhs: np.ndarray, precond_diag: np.ndarray, x0=None,
                       rtol: float = CG_RTOL, maxiter: int | None = None) -> tuple[np.ndarray, int, float]:
    """Jacobi-preconditioned CG; returns ``(x, iterations, relative residual)``."""
    n = rhs.size
    if maxiter is None:
        maxiter = max(10, int(10 * sqrt(n)))
    bnorm = np.linalg.norm(rhs)
    if bnorm == 0.0:
        return np.zeros_like(rhs), 0, 0.0
    x = np.zeros_like(rhs) if x0 is None else np.array(x0, dtype=float)
    r = rhs - matvec(x) if x0 is not None else rhs.copy()
    inv_d = 1.0 / precond_diag
    z = inv_d * r
    p = z.copy()
    rz = r @ z
    res = np.linalg.norm(r) / bnorm
    it = 0
    while res > rtol and it < maxiter:
        Ap = matvec(p)
        alpha = rz / (p @ Ap)
        x += alpha * p
        r -= alpha * Ap
        res = np.linalg.norm(r) / bnorm
        it += 1
        if res <= rtol:
            break
        z = inv_d * r
        rz_new = r @ z
        p = z + (rz_new / rz) * p
        rz = rz_new
    return x, it, res


def solve_shifted(op: EllipticOperator, sigma_i: float, sigma_a: float, rhs, x0=None) -> np.ndarray:
    """Solve (sigma_i I + sigma_a A_h) y = rhs.

    1D systems are solved directly (banded LU); 2D systems with
    Jacobi-preconditioned conjugate gradients to relative residual 1e-12.

    Raises
    ------
    SolverError
        If CG does not converge within ``10 * sqrt(n)`` iterations.
    """
    if not sigma_i > 0:
        raise ValueError(f"sigma_i must be positive, got {sigma_i}")
    if sigma_a < 0:
        raise ValueError(f"sigma_a must be nonnegative, got {sigma_a}")
    rhs = np.asarray(rhs, dtype=float)
    if sigma_a == 0.0:
        return rhs / sigma_i
    if op.grid.dim == 1:
        lower, main, upper = op.tridiagonal()
        ab = np.zeros((3, main.size))
        ab[0, 1:] = sigma_a * upper
        ab[1] = sigma_i + sigma_a * main
        ab[2, :-1] = sigma_a * lower
        return solve_banded((1, 1), ab, rhs, check_finite=False)

    def matvec(v):
        return sigma_i * v + sigma_a * op.apply(v)

    diag = sigma_i + sigma_a * op.diagonal()
    x, _, res = conjugate_gradient(matvec, rhs, diag, x0=x0)
    if res > CG_RTOL:
        raise SolverError("conjugate gradient did not converge", res)
    return x


class Norms(NamedTuple):
    l2: float
    max: float
    energy: float


def _energy_sq(op: EllipticOperator, e: np.ndarray) -> float:
    val = op.inner(e, op.apply(e))
    if val < 0:
        scale = op.inner(np.abs(e), np.abs(op.apply(e))) + np.finfo(float).tiny
        if val < -1e-12 * scale:
            raise InternalConsistencyError(f"negative energy form (e, A_h e) = {val:.3e}")
        val = 0.0
    return val


def grid_norms(e, op: EllipticOperator) -> Norms:
    """Discrete L2, max and energy norms.

    ``e`` is a single interior vector, or a stack of layers (first axis time),
    in which case each norm is maximised over the layers.
    """
    e = np.asarray(e, dtype=float)
    vol = op.grid.cell_volume
    if e.ndim == 1:
        return Norms(sqrt(vol * float(e @ e)), float(np.max(np.abs(e), initial=0.0)), sqrt(_energy_sq(op, e)))
    per = [grid_norms(layer, op) for layer in e]
    return Norms(*(max(vals) for vals in zip(*per)))
