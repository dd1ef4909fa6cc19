import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

import oracles
from mixfrac.functions import CATALOG, SpaceFunction, apply_elliptic_exact, lookup
from mixfrac.spatial import (CoefficientError, SpatialGrid, build_elliptic, build_elliptic_1d, build_elliptic_2d,
                             conjugate_gradient, grid_norms, solve_shifted)

P2 = SpaceFunction("p2", lambda m, x, y: 2 + m.sin(x) * m.cos(y),
                   grad=(lambda m, x, y: m.cos(x) * m.cos(y), lambda m, x, y: -m.sin(x) * m.sin(y)))
Q2 = SpaceFunction("q2", lambda m, x, y: 1 + x * y)
U2 = SpaceFunction("u2", lambda m, x, y: m.sin(m.pi * x) * m.sin(2 * m.pi * y) * m.exp(x))


def _dense(op):
    n = op.grid.size
    return np.column_stack([op.apply(e) for e in np.eye(n)])


def test_grid_shapes():
    g = SpatialGrid.uniform(2, 5)
    assert g.M == (5, 5) and g.shape == (4, 4) and g.size == 16
    assert g.cell_volume == pytest.approx(1 / 25)
    g1 = SpatialGrid(1, 8)
    np.testing.assert_allclose(g1.axis(), np.arange(1, 8) / 8)
    g2 = SpatialGrid(2, (4, 6))
    x, y = g2.points()
    assert x.size == 15
    # x is the slow index
    assert x[0] == x[4] and y[0] != y[1]
    for bad in [(1, 1), (1, (4, 4)), (2, (4, 1)), (3, 4), (1, 2.5)]:
        with pytest.raises(ValueError):
            SpatialGrid(*bad)


@pytest.mark.parametrize("dim", [1, 2])
def test_operator_symmetric_positive_definite(dim):
    if dim == 1:
        op = build_elliptic(lookup("ex1_p"), lookup("ex1_q"), SpatialGrid(1, 12))
    else:
        op = build_elliptic(P2, Q2, SpatialGrid(2, (5, 7)))
    A = _dense(op)
    np.testing.assert_allclose(A, A.T, rtol=1e-13, atol=1e-10)
    assert np.linalg.eigvalsh(A).min() > 0
    np.testing.assert_allclose(np.diag(A), op.diagonal(), rtol=1e-14)


def test_tridiagonal_form_matches_apply():
    op = build_elliptic(lookup("ex2_p"), lookup("ex2_q"), SpatialGrid(1, 9))
    lo, d, up = op.tridiagonal()
    A = np.diag(d) + np.diag(lo, -1) + np.diag(up, 1)
    np.testing.assert_allclose(A, _dense(op), rtol=1e-14)
    with pytest.raises(ValueError):
        build_elliptic(P2, Q2, SpatialGrid(2, 4)).tridiagonal()


def test_eigenvector_of_laplacian_2d():
    M = 16
    h = 1 / M
    op = build_elliptic(CATALOG["unit"], CATALOG["zero"], SpatialGrid(2, M))
    v = op.grid.sample(lookup("sinpix_sinpiy"))
    lam = 2 * (4 / h ** 2) * math.sin(math.pi * h / 2) ** 2
    np.testing.assert_allclose(op.apply(v), lam * v, rtol=1e-12, atol=1e-12)


def test_analytic_elliptic_matches_numeric_oracle():
    p, q, u = lookup("ex1_p"), lookup("ex1_q"), lookup("sin2pix")
    au = apply_elliptic_exact(p, q, u)
    for x in (0.1, 0.37, 0.8):
        ref = oracles.elliptic(p.mp, q.mp, u.mp, [x])
        assert au.mp(mp.mpf(x)) == pytest.approx(float(ref), rel=1e-12)
    au2 = apply_elliptic_exact(P2, Q2, lookup("sinpix_sinpiy"))
    ref = oracles.elliptic(P2.mp, Q2.mp, lookup("sinpix_sinpiy").mp, [0.3, 0.55])
    assert au2.mp(mp.mpf(0.3), mp.mpf(0.55)) == pytest.approx(float(ref), rel=1e-12)


def _consistency_errors(dim, Ms):
    errs = []
    for M in Ms:
        if dim == 1:
            p, q, u = lookup("ex1_p"), lookup("ex1_q"), lookup("sin2pix")
            g = SpatialGrid(1, M)
            exact = g.sample(apply_elliptic_exact(p, q, u))
        else:
            p, q, u = P2, Q2, U2
            g = SpatialGrid(2, M)
            pts = g.points()
            # analytic reference via the product rule, independent of the package
            ux = np.exp(pts[0]) * np.sin(2 * np.pi * pts[1]) * (np.pi * np.cos(np.pi * pts[0]) + np.sin(np.pi * pts[0]))
            uy = 2 * np.pi * np.sin(np.pi * pts[0]) * np.exp(pts[0]) * np.cos(2 * np.pi * pts[1])
            uxx = np.exp(pts[0]) * np.sin(2 * np.pi * pts[1]) * (
                2 * np.pi * np.cos(np.pi * pts[0]) + (1 - np.pi ** 2) * np.sin(np.pi * pts[0]))
            uyy = -4 * np.pi ** 2 * u(*pts)
            px, py = P2.gradient(*pts)
            exact = -(px * ux + py * uy + p(*pts) * (uxx + uyy)) + q(*pts) * u(*pts)
        op = build_elliptic(p, q, g)
        errs.append(np.max(np.abs(op.apply(g.sample(u)) - exact)))
    return errs


@pytest.mark.parametrize("dim", [1, 2])
def test_consistency_order_two(dim):
    errs = _consistency_errors(dim, [16, 32, 64, 128])
    orders = [math.log2(errs[k] / errs[k + 1]) for k in range(len(errs) - 1)]
    assert orders[-1] == pytest.approx(2.0, abs=0.05)


def test_nonpositive_diffusivity_rejected():
    bad_p = SpaceFunction("bad", lambda m, x, *_: x - 0.5)
    with pytest.raises(CoefficientError):
        build_elliptic_1d(bad_p, CATALOG["zero"], SpatialGrid(1, 10))
    neg_q = SpaceFunction("negq", lambda m, x, *_: -1 + 0 * x)
    with pytest.raises(CoefficientError):
        build_elliptic_1d(CATALOG["unit"], neg_q, SpatialGrid(1, 10))
    with pytest.raises(ValueError):
        build_elliptic_2d(CATALOG["unit"], CATALOG["zero"], SpatialGrid(1, 10))
    with pytest.raises(ValueError):
        build_elliptic(CATALOG["unit"], CATALOG["zero"], SpatialGrid(1, 10)).apply(np.zeros(3))


@settings(max_examples=30)
@given(si=st.floats(0.01, 100), sa=st.floats(0.0, 10), dim=st.sampled_from([1, 2]), seed=st.integers(0, 2 ** 16))
def test_solve_shifted_residual(si, sa, dim, seed):
    g = SpatialGrid(1, 40) if dim == 1 else SpatialGrid(2, (9, 12))
    op = build_elliptic(lookup("ex1_p") if dim == 1 else P2, lookup("ex1_q") if dim == 1 else Q2, g)
    rhs = np.random.default_rng(seed).normal(size=g.size)
    y = solve_shifted(op, si, sa, rhs)
    res = si * y + sa * op.apply(y) - rhs
    assert np.linalg.norm(res) <= 1e-10 * np.linalg.norm(rhs)


def test_solve_shifted_validates_shifts():
    op = build_elliptic(CATALOG["unit"], CATALOG["zero"], SpatialGrid(1, 5))
    with pytest.raises(ValueError):
        solve_shifted(op, 0.0, 1.0, np.ones(4))
    with pytest.raises(ValueError):
        solve_shifted(op, 1.0, -1.0, np.ones(4))


def test_conjugate_gradient_zero_rhs_and_warm_start():
    A = np.array([[4.0, 1.0], [1.0, 3.0]])
    x, it, res = conjugate_gradient(lambda v: A @ v, np.zeros(2), np.diag(A))
    assert it == 0 and not x.any()
    b = np.array([1.0, 2.0])
    exact = np.linalg.solve(A, b)
    x, it, res = conjugate_gradient(lambda v: A @ v, b, np.diag(A), x0=exact)
    assert it == 0 and res <= 1e-12


def test_grid_norms():
    op = build_elliptic(CATALOG["unit"], CATALOG["zero"], SpatialGrid(1, 4))
    e = np.array([1.0, -2.0, 2.0])
    n = grid_norms(e, op)
    assert n.l2 == pytest.approx(math.sqrt(0.25 * 9))
    assert n.max == 2.0
    assert n.energy ** 2 == pytest.approx(0.25 * float(e @ op.apply(e)))
    stacked = grid_norms(np.vstack([e, 0.5 * e]), op)
    assert stacked == pytest.approx(tuple(n))
