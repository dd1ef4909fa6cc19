"""
Reducing the mixed equation to first order in time
==================================================

Applying a Riemann-Liouville integral of order alpha to the equation with
a Caputo derivative of order alpha + 1 gives a first-order problem.  Which
lower-order term appears depends on the sign of beta - alpha.
"""
import numpy as np

from mixfrac.functions import lookup
from mixfrac.spatial import SpatialGrid
from mixfrac.transform import (OriginalProblem, PowerSeriesTimeFn, SeparableForcing, assemble_multiterm,
                               classify_and_transform)

g = SeparableForcing(((PowerSeriesTimeFn.of((1.0, 1.0)), lookup("sinpix")),))
phi, psi = lookup("sin2pix"), lookup("sin4pix")

for alpha, beta in ((0.9, 0.1), (0.5, 0.5), (0.1, 0.9)):
    gp = classify_and_transform(OriginalProblem(alpha, beta, 2.0, g, phi=phi, psi=psi))
    print(f"alpha={alpha} beta={beta}: caputo={gp.caputo_terms} reaction={gp.kappa2} integral={gp.integral_terms}")

# The forcing of the transformed problem is evaluated on any grid.
gp = classify_and_transform(OriginalProblem(0.9, 0.1, 2.0, g, phi=phi, psi=psi))
grid = SpatialGrid(1, 8)
print("f(x, t=0.5):", np.round(gp.forcing.sample(grid, [0.5])[0], 4))

# The multi-term model collects one term per order.
gp = assemble_multiterm(2.0, 0.6, [(3.0, 0.4)], [(1.0, 0.9), (2.0, 0.6), (4.0, 0.3)], g, phi=phi, psi=psi)
print("\nmulti-term: caputo", gp.caputo_terms, "reaction", gp.kappa2, "integral", gp.integral_terms)
