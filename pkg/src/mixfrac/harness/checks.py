"""Property suites behind the ``check-kernels`` and ``stability`` subcommands."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from ..kernels import (HypothesisViolation, check_quadratic_inequality, check_thomee_conditions,
                       l2_weights, rl_weights)
from ..solver import stability_probe
from ..temporal import caputo_stencil, rl_integral_stencil
from .config import RunConfig
from .presets import build_case

__all__ = ["CheckResult", "parse_nu_range", "kernel_property_suite", "StabilityRow", "stability_ladder",
           "stability_verdict"]


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name}" + (f"  ({self.detail})" if self.detail else "")


def parse_nu_range(text: str) -> list[float]:
    """``"0.05:0.95:0.05"`` -> [0.05, 0.10, ..., 0.95]; a single number or comma list also works."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"expected start:stop:step, got {text!r}")
        lo, hi, st = map(float, parts)
        if st <= 0 or hi < lo:
            raise ValueError(f"bad range {text!r}")
        n = int(math.floor((hi - lo) / st + 1e-9)) + 1
        return [round(lo + k * st, 12) for k in range(n)]
    return [float(s) for s in text.split(",") if s]


def kernel_property_suite(nus, j: int = 200, samples: int = 10_000, seed: int = 0) -> list[CheckResult]:
    """Structural properties of the weight sequences.

    * c-weights: c_0 = 1, positive, nonincreasing and convex up to index ``j``
      (the full sequence from c_0 fails for nu above about 0.42, since
      c_1 = 2**(nu+1) - 2 is too large; the tail from c_1 is reported too)
    * L2 weights: the Caputo stencil annihilates constants for several j
    * RL weights: the discrete integral of 1 is t^nu / Gamma(nu + 1)
    * two-level quadratic inequality on random admissible samples
    """
    out = []
    for nu in nus:
        if not 0 < nu < 1:
            out.append(CheckResult(f"nu={nu}", False, "order outside (0, 1)"))
            continue
        w = rl_weights(nu, j)
        ok = w.c[0] == 1.0 and check_thomee_conditions(w.c) and bool(np.all(w.c > 0))
        out.append(CheckResult(f"thomee c nu={nu:g} j={j}", ok))
        out.append(CheckResult(f"thomee c_1.. nu={nu:g} j={j}", check_thomee_conditions(w.c[1:])))

        worst = 0.0
        for jj in (1, 2, 3, 4, 10, j):
            st = caputo_stencil(l2_weights(nu, jj), 1.0)
            worst = max(worst, abs(st.implicit + st.history.sum()) / abs(st.implicit))
        out.append(CheckResult(f"L2 telescoping nu={nu:g}", worst <= 1e-13, f"max rel {worst:.1e}"))

        tau = 1.0 / j
        worst = 0.0
        for jj in (0, 1, j // 2, j - 1):
            st = rl_integral_stencil(rl_weights(nu, jj), jj, tau)
            got = st.implicit + st.history.sum()
            exact = ((jj + 1) * tau) ** nu / math.gamma(nu + 1.0)
            worst = max(worst, abs(got - exact) / exact)
        out.append(CheckResult(f"RL constants nu={nu:g}", worst <= 1e-12, f"max rel {worst:.1e}"))

    rng = np.random.default_rng(seed)
    bad = 0
    for _ in range(samples):
        k1 = rng.uniform(-5, 5)
        k0 = max(k1, -3 * k1) + rng.exponential(1.0)
        v = rng.normal(size=rng.integers(3, 40)) * 10 ** rng.uniform(-3, 3)
        try:
            if not check_quadratic_inequality(k0, k1, v):
                bad += 1
        except HypothesisViolation:
            bad += 1
    out.append(CheckResult(f"quadratic inequality {samples} samples", bad == 0, f"{bad} violations"))
    return out


@dataclass(frozen=True)
class StabilityRow:
    N: int
    ratio: float
    max_diff: float
    mu_norm: float


def stability_ladder(cfg: RunConfig, values=(4, 20, 40, 80, 160), amplitude: float = 1e-3) -> list[StabilityRow]:
    """Perturbation-growth ratio for each N (perturbation ``amplitude`` times the solution mode)."""
    rows = []
    for N in values:
        case = build_case(cfg, N=N)
        mu = amplitude * case.sgrid.sample(case.solution.space)
        rep = stability_probe(case.problem, case.sgrid, case.tgrid, mu, elliptic=case.elliptic)
        mu_norm = math.sqrt(case.sgrid.cell_volume * float(mu @ mu))
        rows.append(StabilityRow(N, rep.ratio, math.sqrt(rep.max_diff_sq), mu_norm))
    return rows


def stability_verdict(rows: list[StabilityRow], reference_N: int = 20, growth: float = 10.0,
                      blowup: float = 100.0) -> CheckResult:
    """Boundedness of a stability ladder.

    Every ratio at N >= ``reference_N`` must stay within ``growth`` times the
    ratio at ``reference_N`` (the smallest N at or above it), and no run may
    let the difference exceed ``blowup * ||mu||``.  Coarser rungs only enter
    the blow-up test: there the tau^(alpha+1) energy term dominates the
    denominator and the ratio is artificially small.
    """
    ref = next((r for r in sorted(rows, key=lambda r: r.N) if r.N >= reference_N), None)
    if ref is None:
        return CheckResult("stability", False, f"no rung with N >= {reference_N}")
    tail = [r for r in rows if r.N >= ref.N]
    worst = max(r.ratio for r in tail) / ref.ratio if ref.ratio > 0 else 0.0
    finite = all(math.isfinite(r.max_diff) and r.max_diff <= blowup * r.mu_norm for r in rows)
    ok = worst <= growth and finite
    return CheckResult("stability", ok, f"max ratio / ratio(N={ref.N}) = {worst:.3g}, "
                                        f"max |diff|/|mu| = {max(r.max_diff / r.mu_norm for r in rows):.3g}")
