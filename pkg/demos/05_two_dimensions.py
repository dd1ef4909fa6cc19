"""
Two space dimensions
====================

On the unit square the implicit system is solved with preconditioned
conjugate gradients.  Feeding the discrete operator into the manufactured
forcing removes the spatial error, so a coarse grid shows the temporal
order cleanly; a fine time step shows the spatial order.
"""
from mixfrac.harness import RunConfig, convergence_study, emit

temporal = RunConfig(preset="ex3b", block=2, M=40, forcing="discrete", values=(10, 20, 40, 80))
print("temporal sweep, h = 1/40, discrete forcing")
print(emit(convergence_study(temporal), "markdown"))

spatial = RunConfig(preset="ex3b", block=2, N=200, sweep="spatial", values=(8, 16, 32))
print("spatial sweep, tau = 1/200")
print(emit(convergence_study(spatial), "markdown"))
