"""
Single-term problem in one dimension
====================================

A manufactured solution u = (t + t^(2+gamma) + t^(3+delta)) sin(2 pi x)
with variable diffusivity.  We solve once, then halve the time step a few
times and watch the error fall by a factor of four.
"""
from mixfrac.harness import RunConfig, build_case, convergence_study, emit
from mixfrac.solver import run

cfg = RunConfig(preset="ex1", block=2, M=4000)
case = build_case(cfg, N=40)
res = run(case.problem, case.sgrid, case.tgrid, exact=case.solution, start="exact", elliptic=case.elliptic)
print(f"N=40: E={res.errors.E:.4e}  E_c={res.errors.E_c:.4e}  E_energy={res.errors.E_energy:.4e}")

# The error is largest at the final time.
per_layer = res.errors.per_layer[:, 0]
print("error at t=0.25, 0.5, 1:", [f"{per_layer[k]:.2e}" for k in (10, 20, 40)])

report = convergence_study(cfg.updated(values=(20, 40, 80, 160)))
print()
print(emit(report, "markdown"))
