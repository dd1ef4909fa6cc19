"""
Weights and discrete time operators
===================================

The scheme is built from three temporal rules: the L2 Caputo formula, the
trapezoidal Riemann-Liouville integral and the three-point backward
difference.  This script looks at the weight sequences and measures the
order of each rule on simple functions.
"""
import math

import numpy as np

from mixfrac.kernels import check_thomee_conditions, l2_weights, rl_weights
from mixfrac.temporal import bdf2_stencil, caputo_stencil, rl_integral_stencil

# The trapezoidal RL weights c_r start at 1 and decay like r^(nu-1).
w = rl_weights(0.5, 8)
print("c_r (nu=0.5):", np.round(w.c, 6))
print("cbar_r      :", np.round(w.cbar, 6))

# Convexity holds on the tail c_1, c_2, ...; for larger orders the first
# weight breaks it, since c_1 = 2^(nu+1) - 2 grows with nu.
for nu in (0.3, 0.5, 0.8):
    c = rl_weights(nu, 200).c
    print(f"nu={nu}: convex from c_0: {check_thomee_conditions(c)}, from c_1: {check_thomee_conditions(c[1:])}")

# L2 weights for a few steps; the first two steps use their own branches.
for j in (1, 2, 5):
    print(f"a (j={j}):", np.round(l2_weights(0.4, j).a, 6))


def at_end(stencil, u):
    return stencil.implicit * u[-1] + stencil.explicit(u[:-1])


# Order of the L2 rule on t^3 at t = 1.
nu = 0.5
exact = 6 / math.gamma(4 - nu)
prev = None
print("\nL2 Caputo on t^3, nu=0.5")
for N in (20, 40, 80, 160, 320):
    t = np.linspace(0, 1, N + 1)
    err = abs(at_end(caputo_stencil(l2_weights(nu, N - 1), 1 / N), t ** 3) - exact)
    print(f"  N={N:4d} err={err:.3e}" + (f" order={math.log2(prev / err):.3f}" if prev else ""))
    prev = err

# The RL rule reproduces linear functions exactly.
N = 10
t = np.linspace(0, 1, N + 1)
got = at_end(rl_integral_stencil(rl_weights(nu, N - 1), N - 1, 1 / N), 2 + 3 * t)
print("\nRL integral of 2 + 3t at t=1:", got, "exact:", 2 / math.gamma(1.5) + 3 / math.gamma(2.5))

# The backward difference is exact on quadratics.
u = 1 - t + 4 * t ** 2
print("BDF2 of 1 - t + 4t^2 at t=1:", at_end(bdf2_stencil(N - 1, 1 / N), u), "exact:", 7.0)
