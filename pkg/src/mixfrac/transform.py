"""Reduction of the mixed sub-diffusion/diffusion-wave equation to first order in time.

The original model

    d^{alpha+1} u + kappa d^beta u + A u = g,   u(0) = phi,  u_t(0) = psi

(Caputo derivatives, 0 < alpha, beta < 1) becomes, after applying the
Riemann-Liouville integral of order alpha,

    u_t + k1 d^gamma u + k2 u + k3 D^{-delta} u + D^{-alpha} A u = f

with the Caputo/identity/integral term chosen by the sign of beta - alpha.
The multi-term variant collects several such terms.

Forcings are objects with ``sample(grid, times) -> (len(times), grid.size)``.
Closed-form fractional calculus is available for power series in time times
fixed spatial functions (:class:`SeparableForcing`); anything else is
integrated numerically with the trapezoidal RL rule.
"""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from math import gamma as Gamma
from typing import Callable, Iterable, Sequence

import numpy as np

from .functions import CATALOG, SpaceFunction, apply_elliptic_exact
from .kernels import DomainError, rl_weights
from .spatial import EllipticOperator, SpatialGrid
from .temporal import rl_integral_stencil

__all__ = [
    "GAMMA_TIE_TOL",
    "PowerSeriesTimeFn",
    "caputo_of_power",
    "rl_integral_of_power",
    "Forcing",
    "SeparableForcing",
    "FunctionForcing",
    "NumericRLForcing",
    "SumForcing",
    "ScaledForcing",
    "ManufacturedSolution",
    "OriginalProblem",
    "GeneralProblem",
    "classify_and_transform",
    "assemble_multiterm",
    "manufactured_forcing",
]

GAMMA_TIE_TOL = 1e-12


def caputo_of_power(nu: float, mu: float, t):
    """Caputo derivative of order ``nu`` of t**mu: Gamma(mu+1)/Gamma(mu+1-nu) t**(mu-nu).

    Constants (``mu = 0``) map to 0.  Only ``mu = 0`` or ``mu >= 1`` are accepted.
    """
    if not 0.0 <= nu < 1.0:
        raise DomainError(f"Caputo order {nu} outside [0, 1)")
    if mu == 0:
        return np.zeros_like(np.asarray(t, dtype=float))
    if mu < 1:
        raise DomainError(f"exponent {mu} not supported (need mu = 0 or mu >= 1)")
    return Gamma(mu + 1) / Gamma(mu + 1 - nu) * np.power(t, mu - nu)


def rl_integral_of_power(nu: float, mu: float, t):
    """RL integral of order ``nu`` of t**mu: Gamma(mu+1)/Gamma(mu+1+nu) t**(mu+nu)."""
    if not 0.0 <= nu <= 1.0:
        raise DomainError(f"RL integral order {nu} outside [0, 1]")
    if mu <= -1:
        raise DomainError(f"exponent {mu} must exceed -1")
    return Gamma(mu + 1) / Gamma(mu + 1 + nu) * np.power(t, mu + nu)


@dataclass(frozen=True)
class PowerSeriesTimeFn:
    """Finite sum of ``coef * t**mu`` with every ``mu > -1``."""

    terms: tuple[tuple[float, float], ...]

    def __post_init__(self):
        terms = tuple((float(c), float(m)) for c, m in self.terms)
        for _, mu in terms:
            if mu <= -1:
                raise DomainError(f"exponent {mu} must exceed -1")
        object.__setattr__(self, "terms", terms)

    @classmethod
    def of(cls, *terms) -> "PowerSeriesTimeFn":
        return cls(tuple(terms))

    def __call__(self, t):
        t = np.asarray(t, dtype=float)
        out = np.zeros_like(t)
        for c, mu in self.terms:
            out = out + c * np.power(t, mu)
        return out

    def __add__(self, other: "PowerSeriesTimeFn") -> "PowerSeriesTimeFn":
        return PowerSeriesTimeFn(self.terms + other.terms)

    def __mul__(self, s: float) -> "PowerSeriesTimeFn":
        return PowerSeriesTimeFn(tuple((s * c, mu) for c, mu in self.terms))

    __rmul__ = __mul__

    def derivative(self) -> "PowerSeriesTimeFn":
        return PowerSeriesTimeFn(tuple((c * mu, mu - 1) for c, mu in self.terms if mu != 0))

    def caputo(self, nu: float) -> "PowerSeriesTimeFn":
        out = []
        for c, mu in self.terms:
            if mu == 0:
                continue
            if mu < 1:
                raise DomainError(f"Caputo derivative of t^{mu} not supported")
            out.append((c * Gamma(mu + 1) / Gamma(mu + 1 - nu), mu - nu))
        return PowerSeriesTimeFn(tuple(out))

    def rl_integral(self, nu: float) -> "PowerSeriesTimeFn":
        return PowerSeriesTimeFn(tuple((c * Gamma(mu + 1) / Gamma(mu + 1 + nu), mu + nu)
                                       for c, mu in self.terms))

    def derivative_at_zero(self, order: int) -> float:
        """Classical derivative of the given order at t = 0 (must be finite)."""
        total = 0.0
        for c, mu in self.terms:
            if mu == order:
                total += c * Gamma(mu + 1)
            elif mu < order and not (mu >= 0 and float(mu).is_integer()):
                raise ValueError(f"derivative of order {order} of t^{mu} is unbounded at 0")
        return total


class Forcing:
    """Base class; subclasses implement :meth:`sample`."""

    def sample(self, grid: SpatialGrid, times) -> np.ndarray:
        raise NotImplementedError

    def evaluator(self, grid: SpatialGrid, times) -> Callable[[int], np.ndarray]:
        """``k -> f(., times[k])``; the default tabulates every time up front."""
        table = self.sample(grid, times)
        return table.__getitem__

    def __add__(self, other: "Forcing") -> "Forcing":
        return SumForcing((self, other))

    def __mul__(self, s: float) -> "Forcing":
        return ScaledForcing(self, float(s))

    __rmul__ = __mul__


def _spatial_values(part, grid: SpatialGrid) -> np.ndarray:
    if isinstance(part, np.ndarray):
        if part.shape != (grid.size,):
            raise ValueError(f"tabulated spatial factor has shape {part.shape}, grid needs ({grid.size},)")
        return part
    return grid.sample(part)


@dataclass(frozen=True)
class SeparableForcing(Forcing):
    """Sum of ``time_k(t) * space_k(x)``.

    ``space_k`` is a :class:`SpaceFunction` (closed form) or a vector already
    tabulated on the interior nodes of a grid.
    """

    terms: tuple[tuple[PowerSeriesTimeFn, object], ...] = ()

    def sample(self, grid, times):
        times = np.atleast_1d(np.asarray(times, dtype=float))
        out = np.zeros((times.size, grid.size))
        for tf, sf in self.terms:
            out += np.outer(tf(times), _spatial_values(sf, grid))
        return out

    def __add__(self, other):
        if isinstance(other, SeparableForcing):
            return SeparableForcing(self.terms + other.terms)
        return super().__add__(other)

    def __mul__(self, s):
        return SeparableForcing(tuple((tf * float(s), sf) for tf, sf in self.terms))

    __rmul__ = __mul__

    def evaluator(self, grid, times):
        times = np.atleast_1d(np.asarray(times, dtype=float))
        parts = [(tf, _spatial_values(sf, grid)) for tf, sf in self.terms]

        def at(k):
            out = np.zeros(grid.size)
            for tf, vals in parts:
                out += float(tf(times[k])) * vals
            return out
        return at

    def rl_integral(self, nu: float) -> "SeparableForcing":
        return SeparableForcing(tuple((tf.rl_integral(nu), sf) for tf, sf in self.terms))

    def evaluate_mp(self, coords, t):
        """High-precision pointwise value (closed-form spatial factors only)."""
        import mpmath

        total = mpmath.mpf(0)
        for tf, sf in self.terms:
            if isinstance(sf, np.ndarray):
                raise TypeError("tabulated spatial factor has no pointwise value")
            tt = sum(mpmath.mpf(c) * mpmath.power(t, mu) for c, mu in tf.terms)
            total += tt * sf.mp(*coords)
        return total


@dataclass(frozen=True)
class FunctionForcing(Forcing):
    """Wraps ``fn(*coords, t)`` evaluated pointwise on the interior nodes."""

    fn: Callable

    def sample(self, grid, times):
        pts = grid.points()
        return np.array([np.broadcast_to(self.fn(*pts, t), (grid.size,)) for t in np.atleast_1d(times)],
                        dtype=float)


@dataclass(frozen=True)
class NumericRLForcing(Forcing):
    """Trapezoidal RL integral of order ``nu`` of another forcing, on uniform times from 0."""

    inner: Forcing
    nu: float

    def sample(self, grid, times):
        times = np.atleast_1d(np.asarray(times, dtype=float))
        n = times.size - 1
        if times[0] != 0.0 or n < 1:
            raise ValueError("numeric RL integration needs a uniform time grid starting at 0")
        tau = times[1] - times[0]
        if not np.allclose(np.diff(times), tau, rtol=1e-12, atol=0.0):
            raise ValueError("numeric RL integration needs a uniform time grid")
        G = self.inner.sample(grid, times)
        out = np.zeros_like(G)
        w = rl_weights(self.nu, n - 1)
        for k in range(1, n + 1):
            stencil = rl_integral_stencil(w, k - 1, tau)
            out[k] = stencil.implicit * G[k] + stencil.explicit(G[:k])
        return out


@dataclass(frozen=True)
class SumForcing(Forcing):
    parts: tuple[Forcing, ...]

    def sample(self, grid, times):
        return sum(p.sample(grid, times) for p in self.parts)

    def evaluator(self, grid, times):
        evs = [p.evaluator(grid, times) for p in self.parts]
        return lambda k: sum(ev(k) for ev in evs)


@dataclass(frozen=True)
class ScaledForcing(Forcing):
    inner: Forcing
    factor: float

    def sample(self, grid, times):
        return self.factor * self.inner.sample(grid, times)

    def evaluator(self, grid, times):
        ev = self.inner.evaluator(grid, times)
        return lambda k: self.factor * ev(k)


@dataclass(frozen=True)
class ManufacturedSolution:
    """Separable exact solution ``u(x, t) = time(t) * space(x)``.

    Exponents of ``time`` must be 0 or at least 1 so that every Caputo
    derivative of order below one has a closed form.
    """

    time: PowerSeriesTimeFn
    space: SpaceFunction

    def __post_init__(self):
        for _, mu in self.time.terms:
            if mu != 0 and mu < 1:
                raise ValueError(f"exponent {mu} not allowed in a manufactured solution")

    def values(self, grid: SpatialGrid, times) -> np.ndarray:
        return np.outer(self.time(np.atleast_1d(times)), grid.sample(self.space))

    def at(self, grid: SpatialGrid, t: float) -> np.ndarray:
        return float(self.time(t)) * grid.sample(self.space)

    @property
    def phi(self) -> SpaceFunction:
        return self.space * float(self.time(0.0))

    @property
    def psi(self) -> SpaceFunction:
        return self.space * self.time.derivative_at_zero(1)

    @property
    def utt0(self) -> SpaceFunction:
        return self.space * self.time.derivative_at_zero(2)


def _as_terms(terms) -> tuple[tuple[float, float], ...]:
    return tuple((float(w), float(o)) for w, o in terms)


@dataclass(frozen=True)
class GeneralProblem:
    """u_t + sum_r l_r d^{g_r} u + k2 u + sum_r w_r D^{-d_r} u + D^{-alpha} A u = f.

    ``caputo_terms`` and ``integral_terms`` are ``(weight, order)`` pairs with
    the coefficients already folded into the weights.  ``p``/``q`` define
    ``A = -div(p grad) + q``; ``phi``/``psi`` are u(x, 0) and u_t(x, 0).
    """

    alpha: float
    caputo_terms: tuple[tuple[float, float], ...] = ()
    integral_terms: tuple[tuple[float, float], ...] = ()
    kappa2: float = 0.0
    p: SpaceFunction = field(default_factory=lambda: CATALOG["unit"])
    q: SpaceFunction = field(default_factory=lambda: CATALOG["zero"])
    phi: SpaceFunction = field(default_factory=lambda: CATALOG["zero"])
    psi: SpaceFunction = field(default_factory=lambda: CATALOG["zero"])
    forcing: Forcing | None = None

    def __post_init__(self):
        object.__setattr__(self, "caputo_terms", _as_terms(self.caputo_terms))
        object.__setattr__(self, "integral_terms", _as_terms(self.integral_terms))
        if not 0.0 < self.alpha < 1.0:
            raise DomainError(f"alpha={self.alpha} outside (0, 1)")
        for w, o in self.caputo_terms + self.integral_terms:
            if not 0.0 < o < 1.0:
                raise DomainError(f"order {o} outside (0, 1)")
            if w < 0:
                raise DomainError(f"term weight {w} is negative")
        if self.kappa2 < 0:
            raise DomainError(f"kappa2={self.kappa2} is negative")

    @classmethod
    def single(cls, gamma: float | None, delta: float | None, alpha: float,
               kappa1: float = 0.0, kappa2: float = 0.0, kappa3: float = 0.0, **kw) -> "GeneralProblem":
        """Single-term model with coefficients kappa1..kappa3."""
        caputo = ((kappa1, gamma),) if gamma is not None else ()
        integral = ((kappa3, delta),) if delta is not None else ()
        return cls(alpha=alpha, caputo_terms=caputo, integral_terms=integral, kappa2=kappa2, **kw)

    @classmethod
    def multi(cls, gammas: Sequence[float], deltas: Sequence[float], alpha: float,
              lambdas: Sequence[float], omegas: Sequence[float],
              kappa1: float = 1.0, kappa2: float = 0.0, kappa3: float = 1.0, **kw) -> "GeneralProblem":
        """Multi-term model: weights ``kappa1*lambda_r`` and ``kappa3*omega_r``."""
        if len(gammas) != len(lambdas) or len(deltas) != len(omegas):
            raise ValueError("orders and weights must have matching lengths")
        return cls(alpha=alpha,
                   caputo_terms=tuple((kappa1 * lam, g) for lam, g in zip(lambdas, gammas)),
                   integral_terms=tuple((kappa3 * om, d) for om, d in zip(omegas, deltas)),
                   kappa2=kappa2, **kw)

    def _single(self, terms, what):
        if len(terms) > 1:
            raise AttributeError(f"{what} is undefined for a multi-term problem")
        return terms[0] if terms else (0.0, None)

    @property
    def gamma(self):
        return self._single(self.caputo_terms, "gamma")[1]

    @property
    def delta(self):
        return self._single(self.integral_terms, "delta")[1]

    @property
    def kappa1(self) -> float:
        return self._single(self.caputo_terms, "kappa1")[0]

    @property
    def kappa3(self) -> float:
        return self._single(self.integral_terms, "kappa3")[0]

    def with_forcing(self, forcing: Forcing) -> "GeneralProblem":
        return replace(self, forcing=forcing)


@dataclass(frozen=True)
class OriginalProblem:
    """d^{alpha+1} u + kappa d^beta u + A u = g with u(0) = phi, u_t(0) = psi."""

    alpha: float
    beta: float
    kappa: float
    g: Forcing
    phi: SpaceFunction = field(default_factory=lambda: CATALOG["zero"])
    psi: SpaceFunction = field(default_factory=lambda: CATALOG["zero"])
    p: SpaceFunction = field(default_factory=lambda: CATALOG["unit"])
    q: SpaceFunction = field(default_factory=lambda: CATALOG["zero"])

    def __post_init__(self):
        for name in ("alpha", "beta"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise DomainError(f"{name}={v} outside (0, 1)")
        if self.kappa < 0:
            raise DomainError(f"kappa={self.kappa} is negative")


def _integrated(g: Forcing, nu: float) -> Forcing:
    if isinstance(g, SeparableForcing):
        return g.rl_integral(nu)
    return NumericRLForcing(g, nu)


def _split_term(weight: float, beta: float, alpha: float, phi: SpaceFunction):
    """D^{-alpha} d^beta term -> (caputo, identity weight, integral, extra forcing)."""
    gam = beta - alpha
    if abs(gam) < GAMMA_TIE_TOL:
        extra = SeparableForcing(((PowerSeriesTimeFn.of((weight, 0.0)), phi),))
        return None, weight, None, extra
    if gam > 0:
        return (weight, gam), 0.0, None, SeparableForcing()
    # D^{-alpha} d^beta u = D^{-(alpha-beta)} u - phi t^{-gam} / Gamma(1 - gam)
    extra = SeparableForcing(((PowerSeriesTimeFn.of((weight / Gamma(1.0 - gam), -gam)), phi),))
    return None, 0.0, (weight, -gam), extra


def classify_and_transform(p: OriginalProblem) -> GeneralProblem:
    """Map the original model onto :class:`GeneralProblem` by the sign of beta - alpha."""
    caputo, k2, integral, extra = _split_term(p.kappa, p.beta, p.alpha, p.phi)
    f = _integrated(p.g, p.alpha) + extra + SeparableForcing(((PowerSeriesTimeFn.of((1.0, 0.0)), p.psi),))
    return GeneralProblem(
        alpha=p.alpha,
        caputo_terms=(caputo,) if caputo else (),
        integral_terms=(integral,) if integral else (),
        kappa2=k2, p=p.p, q=p.q, phi=p.phi, psi=p.psi, forcing=f,
    )


def _strictly_decreasing(orders: Iterable[float]) -> bool:
    orders = list(orders)
    return all(a > b for a, b in zip(orders, orders[1:]))


def assemble_multiterm(lambda0: float, alpha0: float,
                       wave_terms: Sequence[tuple[float, float]],
                       diffusion_terms: Sequence[tuple[float, float]],
                       g: Forcing,
                       phi: SpaceFunction | None = None, psi: SpaceFunction | None = None,
                       p: SpaceFunction | None = None, q: SpaceFunction | None = None) -> GeneralProblem:
    """Reduce the multi-term model.

    Parameters
    ----------
    lambda0, alpha0 : float
        Leading term ``lambda0 * d^{alpha0+1} u`` (``lambda0 > 0``).
    wave_terms : sequence of (lambda_r, alpha_r)
        Further terms ``lambda_r d^{alpha_r+1} u`` for r = 1..m, with
        ``alpha0 > alpha_1 > ... > alpha_m > 0``.
    diffusion_terms : sequence of (omega_r, beta_r)
        Terms ``omega_r d^{beta_r} u`` for r = 0..m, ``beta_r`` strictly decreasing.
    g : Forcing
        Right-hand side of the original equation.

    Returns
    -------
    GeneralProblem
        Everything divided by ``lambda0``; the elliptic coefficients are scaled
        by ``1/lambda0`` as well.
    """
    phi = phi if phi is not None else CATALOG["zero"]
    psi = psi if psi is not None else CATALOG["zero"]
    p = p if p is not None else CATALOG["unit"]
    q = q if q is not None else CATALOG["zero"]
    if not lambda0 > 0:
        raise DomainError(f"lambda0={lambda0} must be positive")
    if not 0 < alpha0 < 1:
        raise DomainError(f"alpha0={alpha0} outside (0, 1)")
    alphas = [a for _, a in wave_terms]
    betas = [b for _, b in diffusion_terms]
    if not _strictly_decreasing([alpha0] + alphas) or any(not 0 < a < 1 for a in alphas):
        raise DomainError(f"need 1 > alpha0 > alpha_1 > ... > 0, got {[alpha0] + alphas}")
    if not _strictly_decreasing(betas) or any(not 0 < b < 1 for b in betas):
        raise DomainError(f"need 1 > beta_0 > beta_1 > ... > 0, got {betas}")
    if any(w < 0 for w, _ in list(wave_terms) + list(diffusion_terms)):
        raise DomainError("term weights must be nonnegative")

    caputo: list[tuple[float, float]] = []
    integral: list[tuple[float, float]] = []
    k2 = 0.0
    f: Forcing = _integrated(g, alpha0) * (1.0 / lambda0)
    f = f + SeparableForcing(((PowerSeriesTimeFn.of((1.0, 0.0)), psi),))
    for lam, a in wave_terms:
        w = lam / lambda0
        # D^{-alpha0} d^{a+1} u = d^{1-alpha0+a} u - psi t^{alpha0-a} / Gamma(1+alpha0-a)
        caputo.append((w, 1.0 - alpha0 + a))
        f = f + SeparableForcing(((PowerSeriesTimeFn.of((w / Gamma(1.0 + alpha0 - a), alpha0 - a)), psi),))
    for om, b in diffusion_terms:
        c_term, k2_add, i_term, extra = _split_term(om / lambda0, b, alpha0, phi)
        if c_term:
            caputo.append(c_term)
        if i_term:
            integral.append(i_term)
        k2 += k2_add
        f = f + extra
    return GeneralProblem(alpha=alpha0, caputo_terms=tuple(caputo), integral_terms=tuple(integral),
                          kappa2=k2, p=p * (1.0 / lambda0), q=q * (1.0 / lambda0),
                          phi=phi, psi=psi, forcing=f)


def manufactured_forcing(problem: GeneralProblem, solution: ManufacturedSolution,
                         elliptic: EllipticOperator | None = None) -> SeparableForcing:
    """Right-hand side f that makes ``solution`` exact for ``problem``.

    With ``elliptic=None`` the elliptic term uses the analytic A u; passing the
    discrete operator uses A_h applied to the sampled mode instead, which
    removes the spatial discretization error from the measured error.
    """
    if not isinstance(solution, ManufacturedSolution):
        raise TypeError("manufactured forcing needs a separable ManufacturedSolution")
    T = solution.time
    lhs = T.derivative() + problem.kappa2 * T
    for w, g in problem.caputo_terms:
        lhs = lhs + w * T.caputo(g)
    for w, d in problem.integral_terms:
        lhs = lhs + w * T.rl_integral(d)
    if elliptic is None:
        a_space = apply_elliptic_exact(problem.p, problem.q, solution.space)
    else:
        a_space = elliptic.apply(elliptic.grid.sample(solution.space))
    return SeparableForcing(((lhs, solution.space), (T.rl_integral(problem.alpha), a_space)))
