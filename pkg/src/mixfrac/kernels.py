"""Coefficient sequences for the discrete fractional integral and derivative.

Two families are provided:

* the generalized trapezoidal weights ``c_r`` and ``cbar_r`` of the
  Riemann-Liouville integral of order ``nu`` (product integration against a
  piecewise-linear interpolant), and
* the L2 Caputo weights ``a_r`` built from ``b_r`` and ``d_r`` (product
  integration against a piecewise-quadratic interpolant).

All closed forms are differences of powers and lose accuracy for large ``r``;
beyond ``_SERIES_FROM`` they are evaluated from binomial expansions in ``1/r``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "DomainError",
    "UnsupportedStepError",
    "HypothesisViolation",
    "RLWeights",
    "L2Weights",
    "rl_coefficients",
    "l2_base_coefficients",
    "rl_weights",
    "l2_weights",
    "check_thomee_conditions",
    "check_quadratic_inequality",
    "quadratic_energy",
]

# Direct evaluation loses roughly r**3 * eps relative accuracy (d_r is the
# worst); from r = 3 on the truncated series in 1/r is exact to rounding.
_SERIES_FROM = 3
_SERIES_TERMS = 64

THOMEE_ATOL = 1e-13


class DomainError(ValueError):
    """A fractional order (or other parameter) lies outside its admissible range."""


class UnsupportedStepError(ValueError):
    """The requested time step index is not covered by the formula."""


class HypothesisViolation(ValueError):
    """The hypothesis of an inequality check does not hold, so no verdict is given."""


def _binomials(p: float, kmax: int) -> np.ndarray:
    """Generalized binomial coefficients C(p, k) for k = 0..kmax."""
    out = np.empty(kmax + 1)
    out[0] = 1.0
    for k in range(1, kmax + 1):
        out[k] = out[k - 1] * (p - k + 1) / k
    return out


def _check_order(nu: float, lo_closed: bool, hi_closed: bool, what: str) -> float:
    nu = float(nu)
    lo_ok = nu >= 0.0 if lo_closed else nu > 0.0
    hi_ok = nu <= 1.0 if hi_closed else nu < 1.0
    if not (lo_ok and hi_ok) or not np.isfinite(nu):
        lo = "[" if lo_closed else "("
        hi = "]" if hi_closed else ")"
        raise DomainError(f"{what} order nu={nu!r} outside {lo}0, 1{hi}")
    return nu


def _c_sequence(nu: float, n: int) -> np.ndarray:
    """c_0..c_n for the trapezoidal RL weights."""
    c = np.empty(n + 1)
    c[0] = 1.0
    if n == 0:
        return c
    p = nu + 1.0
    r = np.arange(1, n + 1, dtype=float)
    direct = r < _SERIES_FROM
    rd = r[direct]
    c[1:][direct] = (rd + 1) ** p - 2 * rd ** p + (rd - 1) ** p
    rs = r[~direct]
    if rs.size:
        # (1+x)^p + (1-x)^p - 2 = 2 * sum_{k>=1} C(p, 2k) x^{2k}
        binom = _binomials(p, 2 * _SERIES_TERMS)
        x2 = (1.0 / rs) ** 2
        acc = np.zeros_like(rs)
        for k in range(_SERIES_TERMS, 0, -1):
            acc = (acc + binom[2 * k]) * x2
        c[1:][~direct] = 2.0 * rs ** p * acc
    return c


def _cbar_sequence(nu: float, n: int) -> np.ndarray:
    """cbar_0..cbar_n for the trapezoidal RL weights."""
    p = nu + 1.0
    r = np.arange(0, n + 1, dtype=float)
    s = r + 1.0
    out = np.empty(n + 1)
    direct = s < _SERIES_FROM
    sd, rd = s[direct], r[direct]
    out[direct] = p * sd ** nu - (sd ** p - rd ** p)
    ss = s[~direct]
    if ss.size:
        # s^p [p/s - 1 + (1 - 1/s)^p] = s^p * sum_{k>=2} C(p, k) (-1/s)^k
        binom = _binomials(p, _SERIES_TERMS + 1)
        x = -1.0 / ss
        acc = np.zeros_like(ss)
        for k in range(_SERIES_TERMS + 1, 1, -1):
            acc = (acc + binom[k]) * x
        out[~direct] = ss ** p * acc * x
    return out


def _b_sequence(nu: float, n: int) -> np.ndarray:
    p = 1.0 - nu
    r = np.arange(0, n + 1, dtype=float)
    out = np.empty(n + 1)
    direct = r < _SERIES_FROM
    rd = r[direct]
    out[direct] = (rd + 1) ** p - rd ** p
    rs = r[~direct]
    if rs.size:
        binom = _binomials(p, _SERIES_TERMS)
        x = 1.0 / rs
        acc = np.zeros_like(rs)
        for k in range(_SERIES_TERMS, 0, -1):
            acc = (acc + binom[k]) * x
        out[~direct] = rs ** p * acc
    return out


def _d_sequence(nu: float, n: int) -> np.ndarray:
    p = 1.0 - nu
    r = np.arange(0, n + 1, dtype=float)
    out = np.empty(n + 1)
    direct = r < _SERIES_FROM
    rd = r[direct]
    out[direct] = ((rd + 1) ** (p + 1) - rd ** (p + 1)) / (p + 1) - ((rd + 1) ** p + rd ** p) / 2
    rs = r[~direct]
    if rs.size:
        # trapezoid defect of int_r^{r+1} t^p dt:
        # r^p * sum_{m>=2} C(p, m) x^m (1 - m) / (2 (m + 1))
        binom = _binomials(p, _SERIES_TERMS + 1)
        x = 1.0 / rs
        acc = np.zeros_like(rs)
        for m in range(_SERIES_TERMS + 1, 1, -1):
            acc = (acc + binom[m] * (1 - m) / (2 * (m + 1))) * x
        out[~direct] = rs ** p * acc * x
    return out


def _frozen(a: np.ndarray) -> np.ndarray:
    a.flags.writeable = False
    return a


@lru_cache(maxsize=64)
def rl_coefficients(nu: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Cached ``(c[0..n], cbar[0..n+1])`` for order ``nu``; arrays are read-only."""
    nu = _check_order(nu, lo_closed=False, hi_closed=True, what="RL integral")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _frozen(_c_sequence(nu, n)), _frozen(_cbar_sequence(nu, n + 1))


@lru_cache(maxsize=64)
def l2_base_coefficients(nu: float, n: int) -> tuple[np.ndarray, np.ndarray]:
    """Cached ``(b[0..n], d[0..n])`` for order ``nu``; arrays are read-only."""
    nu = _check_order(nu, lo_closed=True, hi_closed=False, what="Caputo")
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    return _frozen(_b_sequence(nu, n)), _frozen(_d_sequence(nu, n))


@dataclass(frozen=True)
class RLWeights:
    """Trapezoidal RL-integral weights for the step to ``t_{j+1}``.

    ``c`` holds c_0..c_j and ``cbar`` holds cbar_0..cbar_{j+1} (index ``r`` is
    the subscript).  The initial layer's weight is ``cbar[j]``, which makes
    the rule exact on linear functions.
    """

    nu: float
    c: np.ndarray
    cbar: np.ndarray

    @property
    def j(self) -> int:
        return len(self.c) - 1


@dataclass(frozen=True)
class L2Weights:
    """L2 Caputo weights a_0..a_j for the step to ``t_{j+1}``."""

    nu: float
    j: int
    a: np.ndarray


def rl_weights(nu: float, j: int) -> RLWeights:
    """Weights of the generalized trapezoidal RL integral at ``t_{j+1}``.

    ``nu = 1`` is accepted and gives the ordinary trapezoid rule.
    """
    if j < 0:
        raise ValueError(f"step index j must be >= 0, got {j}")
    c, cbar = rl_coefficients(float(nu), int(j))
    return RLWeights(nu=float(nu), c=c, cbar=cbar)


def l2_weights(nu: float, j: int, base: tuple[np.ndarray, np.ndarray] | None = None) -> L2Weights:
    """L2 weights a_0..a_j for the Caputo derivative at ``t_{j+1}``.

    Parameters
    ----------
    nu : float
        Order in [0, 1); ``nu = 0`` is only meaningful as a degenerate check.
    j : int
        Step index, ``j >= 1``.
    base : tuple of ndarray, optional
        Precomputed ``(b, d)`` of length at least ``j + 1`` (see
        :func:`l2_base_coefficients`); avoids rebuilding them every step.
    """
    if j < 1:
        raise UnsupportedStepError(f"L2 formula needs j >= 1 (got j={j}); t_1 is set by the starting value")
    if base is None:
        base = l2_base_coefficients(float(nu), int(j))
    else:
        _check_order(nu, lo_closed=True, hi_closed=False, what="Caputo")
    b, d = base
    if len(b) < j + 1 or len(d) < j + 1:
        raise ValueError(f"base coefficients too short for j={j}")
    a = np.empty(j + 1)
    if j == 1:
        a[0] = b[0] + d[0] + d[1]
        a[1] = b[1] - d[0] - d[1]
    elif j == 2:
        a[0] = b[0] + d[0]
        a[1] = b[1] - d[0] + d[1] + d[2]
        a[2] = b[2] - d[1] - d[2]
    else:
        a[0] = b[0] + d[0]
        a[1:j - 1] = b[1:j - 1] - d[0:j - 2] + d[1:j - 1]
        a[j - 1] = b[j - 1] - d[j - 2] + d[j - 1] + d[j]
        a[j] = b[j] - d[j - 1] - d[j]
    return L2Weights(nu=float(nu), j=int(j), a=a)


def check_thomee_conditions(seq, atol: float = THOMEE_ATOL) -> bool:
    """True iff ``seq`` is nonnegative, nonincreasing and convex (up to ``atol``)."""
    a = np.asarray(seq, dtype=float)
    if a.ndim != 1 or a.size < 3:
        raise ValueError("sequence must be one-dimensional with at least 3 entries")
    return bool(
        np.all(a >= -atol)
        and np.all(a[:-1] - a[1:] >= -atol)
        and np.all(a[:-2] - 2 * a[1:-1] + a[2:] >= -atol)
    )


def _quadratic_constants(kappa0: float, kappa1: float) -> tuple[float, float]:
    if kappa0 < max(kappa1, -3.0 * kappa1):
        raise HypothesisViolation(
            f"kappa0={kappa0} < max(kappa1, -3*kappa1)={max(kappa1, -3.0 * kappa1)}"
        )
    s1 = np.sqrt((kappa0 - kappa1) / 2.0)
    s2 = np.sqrt((kappa0 + 3.0 * kappa1) / 2.0)
    return s1, 0.5 * s1 + 0.5 * s2


def quadratic_energy(kappa0: float, kappa1: float, v) -> np.ndarray:
    """Energy terms E_1..E_{n-1} of the two-level quadratic inequality.

    ``out[k]`` is E_{k+1}, built from ``v[k+1]`` and ``v[k]``.
    """
    s1, m = _quadratic_constants(kappa0, kappa1)
    v = np.asarray(v, dtype=float)
    return m * m * v[1:] ** 2 + (s1 * v[1:] - m * v[:-1]) ** 2


def check_quadratic_inequality(kappa0: float, kappa1: float, v, rtol: float = 1e-12) -> bool:
    """Check v_{j+1}(k0 v_{j+1} - (k0-k1) v_j - k1 v_{j-1}) >= E_{j+1} - E_j.

    The inequality is tested for every admissible ``j`` of the sequence.

    Raises
    ------
    HypothesisViolation
        If ``kappa0 < max(kappa1, -3 kappa1)``.
    """
    v = np.asarray(v, dtype=float)
    if v.ndim != 1 or v.size < 3:
        raise ValueError("sequence must be one-dimensional with at least 3 entries")
    energy = quadratic_energy(kappa0, kappa1, v)  # energy[k] = E_{k+1}
    lhs = v[2:] * (kappa0 * v[2:] - (kappa0 - kappa1) * v[1:-1] - kappa1 * v[:-2])
    rhs = energy[1:] - energy[:-1]
    scale = np.maximum.reduce([np.abs(lhs), np.abs(energy[1:]), np.abs(energy[:-1])])
    scale = np.maximum(scale, np.finfo(float).tiny)
    return bool(np.all(lhs - rhs >= -rtol * scale))
