"""
Multi-term problem
==================

Three Caputo terms and three integral terms of different orders, each
with its own weight.  The solver sums their stencils into a single
implicit system per step.
"""
from mixfrac.harness import RunConfig, build_case, convergence_study, emit

cfg = RunConfig(preset="ex2", block=3, M=7000)
case = build_case(cfg, N=20)
print("Caputo terms (weight, order):", case.problem.caputo_terms)
print("integral terms (weight, order):", case.problem.integral_terms)
print("alpha:", case.problem.alpha)

report = convergence_study(cfg.updated(values=(20, 40, 80, 160)))
print()
print(emit(report, "markdown"))
