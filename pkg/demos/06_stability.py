"""
Perturbing the first layer
==========================

Two runs that differ only in y^1 by a small mode.  The squared size of
their difference, relative to the size of the perturbation, stays of
order one however small the time step.
"""
from mixfrac.harness import RunConfig
from mixfrac.harness.checks import stability_ladder, stability_verdict

rows = stability_ladder(RunConfig(preset="ex1", block=1, M=1000), (4, 20, 40, 80, 160, 320))
for r in rows:
    print(f"N={r.N:4d}  ratio={r.ratio:.4f}  max|diff|/|mu|={r.max_diff / r.mu_norm:.3f}")
print(stability_verdict(rows).line())
