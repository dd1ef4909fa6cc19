import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, strategies as st

import oracles
from mixfrac.kernels import (DomainError, HypothesisViolation, UnsupportedStepError, check_quadratic_inequality,
                             check_thomee_conditions, l2_base_coefficients, l2_weights, quadratic_energy,
                             rl_coefficients, rl_weights)

NU_GRID = [round(0.05 * k, 2) for k in range(1, 20)]


def test_c0_is_one_and_c1_at_unit_order():
    assert rl_weights(0.37, 5).c[0] == 1.0
    assert rl_weights(1.0, 3).c[1] == pytest.approx(2.0, abs=1e-14)


def test_c2_half_order_value():
    ref = float(oracles.c_weight(0.5, 2))
    assert ref == pytest.approx(3 ** 1.5 - 2 * 2 ** 1.5 + 1, rel=1e-15)
    assert ref == pytest.approx(0.5392982, abs=1e-7)
    assert rl_weights(0.5, 2).c[2] == pytest.approx(ref, rel=1e-14)


@pytest.mark.parametrize("nu", [0.05, 0.3, 0.5, 0.77, 0.95])
def test_rl_weights_match_oracle_up_to_large_index(nu):
    n = 200_000
    c, cbar = rl_coefficients(nu, n)
    for r in [1, 2, 3, 15, 16, 17, 63, 64, 500, 1023, 1024, 5000, 123_457, n]:
        assert c[r] == pytest.approx(float(oracles.c_weight(nu, r)), rel=3e-12)
        assert cbar[r] == pytest.approx(float(oracles.cbar_weight(nu, r)), rel=3e-12)


def test_rl_weights_at_one_million():
    c, cbar = rl_coefficients(0.4, 1_000_000)
    r = 1_000_000
    assert c[r] == pytest.approx(float(oracles.c_weight(0.4, r)), rel=1e-10)
    assert cbar[r] == pytest.approx(float(oracles.cbar_weight(0.4, r)), rel=1e-10)


@pytest.mark.parametrize("nu", [0.1, 0.5, 0.9])
def test_l2_base_match_oracle(nu):
    b, d = l2_base_coefficients(nu, 3000)
    for r in [0, 1, 2, 15, 16, 40, 999, 3000]:
        assert b[r] == pytest.approx(float(oracles.b_weight(nu, r)), rel=1e-12)
        ref = oracles.d_weight(nu, r)
        # d_r has a sign change near small r; compare absolutely against the b scale there
        assert d[r] == pytest.approx(float(ref), rel=1e-11, abs=1e-15)


def test_order_domain_errors():
    with pytest.raises(DomainError):
        rl_weights(0.0, 3)
    with pytest.raises(DomainError):
        rl_weights(1.2, 3)
    with pytest.raises(DomainError):
        l2_weights(1.0, 3)
    with pytest.raises(ValueError):
        rl_weights(0.5, -1)


def test_l2_weights_reject_first_step():
    with pytest.raises(UnsupportedStepError):
        l2_weights(0.5, 0)


def test_l2_weights_degenerate_order_zero():
    for j in (1, 2, 3, 7):
        np.testing.assert_allclose(l2_weights(0.0, j).a, np.ones(j + 1), atol=1e-15)


def test_l2_weights_first_step_against_oracle():
    nu = 0.5
    b = [oracles.b_weight(nu, r) for r in range(2)]
    d = [oracles.d_weight(nu, r) for r in range(2)]
    a = l2_weights(nu, 1).a
    assert a[0] == pytest.approx(float(b[0] + d[0] + d[1]), rel=1e-14)
    assert a[1] == pytest.approx(float(b[1] - d[0] - d[1]), rel=1e-13)


def test_l2_weights_second_step_against_oracle():
    nu = 0.3
    b = [oracles.b_weight(nu, r) for r in range(3)]
    d = [oracles.d_weight(nu, r) for r in range(3)]
    a = l2_weights(nu, 2).a
    ref = [b[0] + d[0], b[1] - d[0] + d[1] + d[2], b[2] - d[1] - d[2]]
    np.testing.assert_allclose(a, [float(v) for v in ref], rtol=1e-13)


@pytest.mark.parametrize("j", [3, 4, 9, 50])
def test_l2_weights_general_branch_against_oracle(j):
    nu = 0.5
    b = [oracles.b_weight(nu, r) for r in range(j + 1)]
    d = [oracles.d_weight(nu, r) for r in range(j + 1)]
    ref = [b[0] + d[0]]
    ref += [b[r] - d[r - 1] + d[r] for r in range(1, j - 1)]
    ref += [b[j - 1] - d[j - 2] + d[j - 1] + d[j], b[j] - d[j - 1] - d[j]]
    np.testing.assert_allclose(l2_weights(nu, j).a, [float(v) for v in ref], rtol=1e-12)


def test_l2_weights_accept_precomputed_base():
    base = l2_base_coefficients(0.4, 100)
    np.testing.assert_array_equal(l2_weights(0.4, 37, base).a, l2_weights(0.4, 37).a)
    with pytest.raises(ValueError):
        l2_weights(0.4, 120, base)


def test_cached_arrays_are_read_only():
    c, _ = rl_coefficients(0.5, 10)
    with pytest.raises(ValueError):
        c[0] = 2.0


def test_thomee_predicate_examples():
    assert check_thomee_conditions(rl_weights(0.3, 50).c)
    assert check_thomee_conditions(np.ones(6))
    assert not check_thomee_conditions([1.0, 2.0, 1.0])
    assert not check_thomee_conditions([1.0, 0.2, 0.1, 0.05, -0.1])
    with pytest.raises(ValueError):
        check_thomee_conditions([1.0, 0.5])


@pytest.mark.parametrize("nu", NU_GRID)
def test_c_tail_satisfies_thomee(nu):
    assert check_thomee_conditions(rl_weights(nu, 200).c[1:])


def test_full_c_sequence_not_convex_at_start_for_half_order():
    # c_0 - 2 c_1 + c_2 computed independently; negative, so the full sequence
    # starting at c_0 cannot be convex
    second = oracles.c_weight(0.5, 0) - 2 * oracles.c_weight(0.5, 1) + oracles.c_weight(0.5, 2)
    assert second < -0.1
    assert not check_thomee_conditions(rl_weights(0.5, 200).c)


def test_quadratic_inequality_examples():
    assert check_quadratic_inequality(1.0, 0.0, [1.0, 1.0, 1.0])
    rng = np.random.default_rng(1)
    for _ in range(100):
        assert check_quadratic_inequality(2.0, 1.0, rng.normal(size=50))
    with pytest.raises(HypothesisViolation):
        check_quadratic_inequality(0.0, 1.0, [1.0, 2.0, 3.0])


def _mp_margin(k0, k1, v):
    """min_j of lhs - (E_{j+1} - E_j) in 40-digit arithmetic."""
    with mp.workdps(40):
        k0, k1 = mp.mpf(k0), mp.mpf(k1)
        # clamp: the float inputs can put k0 + 3 k1 a rounding error below zero
        s1 = mp.sqrt(max(k0 - k1, 0) / 2)
        m = (s1 + mp.sqrt(max(k0 + 3 * k1, 0) / 2)) / 2
        v = [mp.mpf(x) for x in v]
        E = [m ** 2 * v[k + 1] ** 2 + (s1 * v[k + 1] - m * v[k]) ** 2 for k in range(len(v) - 1)]
        out = []
        for j in range(1, len(v) - 1):
            lhs = v[j + 1] * (k0 * v[j + 1] - (k0 - k1) * v[j] - k1 * v[j - 1])
            out.append(lhs - (E[j] - E[j - 1]))
        return min(out)


@given(
    k1=st.floats(-10, 10),
    extra=st.floats(0, 10),
    v=st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=30),
)
def test_quadratic_inequality_property(k1, extra, v):
    k0 = max(k1, -3 * k1) + extra
    assert check_quadratic_inequality(k0, k1, v)
    assert _mp_margin(k0, k1, v) >= -1e-20 * (1 + max(abs(x) for x in v)) ** 2


def test_quadratic_energy_definition():
    k0, k1 = 3.0, 0.5
    v = np.array([0.3, -1.2, 2.0])
    s1 = math.sqrt((k0 - k1) / 2)
    m = 0.5 * s1 + 0.5 * math.sqrt((k0 + 3 * k1) / 2)
    ref = m * m * v[1:] ** 2 + (s1 * v[1:] - m * v[:-1]) ** 2
    np.testing.assert_allclose(quadratic_energy(k0, k1, v), ref, rtol=1e-15)


@given(nu=st.floats(0.01, 0.99), j=st.integers(1, 300))
def test_l2_stencil_annihilates_constants(nu, j):
    a = l2_weights(nu, j).a
    # sum_r a_{j-r}(u^{r+1} - u^r) with u constant: every difference vanishes, so
    # the implicit coefficient equals minus the sum of the history coefficients
    hist = np.empty(j + 1)
    hist[0] = -a[j]
    hist[1:] = a[j:0:-1] - a[j - 1::-1]
    assert abs(a[0] + hist.sum()) <= 1e-13 * a[0]
