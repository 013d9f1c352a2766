import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import central_diff, rk4_jacobi
from slgcones import quadrature
from slgcones.elliptic import (Modulus, complete_E, complete_K, dE_dk, dK_dk,
                               jacobi_sn_cn_dn)

K_GRID = np.linspace(0.05, 0.95, 10)


def K_by_quadrature(k):
    """Direct adaptive quadrature of the defining integral (AGM-independent)."""
    return quadrature.integrate(
        lambda x: 1.0 / np.sqrt(1.0 - k * k * np.sin(x) ** 2), 0.0, math.pi / 2)


def E_by_quadrature(k):
    return quadrature.integrate(
        lambda x: np.sqrt(1.0 - k * k * np.sin(x) ** 2), 0.0, math.pi / 2)


class TestModulus:
    def test_cached_fields_consistent(self):
        for k in K_GRID:
            m = Modulus.from_k(k)
            assert abs(m.k2 + m.kprime2 - 1.0) < 5e-16

    @pytest.mark.parametrize("bad", [-0.1, 1.0, 1.5])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            Modulus.from_k(bad)


class TestCompleteIntegrals:
    def test_K_at_zero(self):
        assert complete_K(0.0) == pytest.approx(math.pi / 2, abs=1e-15)

    def test_K_at_half(self):
        # frozen from the quadrature oracle below
        assert complete_K(0.5) == pytest.approx(1.6857503548125961, abs=1e-12)
        assert complete_K(0.5) == pytest.approx(K_by_quadrature(0.5), abs=1e-12)

    def test_K_monotone(self):
        assert complete_K(0.9) > complete_K(0.5) > complete_K(0.1)

    def test_K_domain(self):
        with pytest.raises(ValueError):
            complete_K(1.0)
        with pytest.raises(ValueError):
            complete_K(-0.2)

    def test_E_endpoints(self):
        assert complete_E(0.0) == pytest.approx(math.pi / 2, abs=1e-15)
        assert complete_E(1.0) == 1.0

    def test_E_at_half(self):
        assert complete_E(0.5) == pytest.approx(1.4674622093394272, abs=1e-12)
        assert complete_E(0.5) == pytest.approx(E_by_quadrature(0.5), abs=1e-12)

    def test_E_monotone_decreasing(self):
        vals = [complete_E(k) for k in K_GRID]
        assert all(a > b for a, b in zip(vals, vals[1:]))
        assert all(v > 1.0 for v in vals)

    def test_E_domain(self):
        with pytest.raises(ValueError):
            complete_E(1.2)

    def test_agm_matches_quadrature_on_grid(self):
        # dual-route check: AGM against the defining integrals
        for k in K_GRID:
            assert complete_K(k) == pytest.approx(K_by_quadrature(k), abs=1e-10)
            assert complete_E(k) == pytest.approx(E_by_quadrature(k), abs=1e-10)


class TestDerivatives:
    def test_dE_matches_finite_difference(self):
        assert dE_dk(0.5) == pytest.approx(central_diff(complete_E, 0.5), abs=1e-7)

    def test_dK_matches_finite_difference(self):
        assert dK_dk(0.5) == pytest.approx(central_diff(complete_K, 0.5), abs=1e-7)

    def test_signs(self):
        assert dE_dk(0.3) < 0.0
        assert dK_dk(0.3) > 0.0

    def test_relative_accuracy_on_grid(self):
        for k in K_GRID:
            fd_e = central_diff(complete_E, k)
            fd_k = central_diff(complete_K, k)
            assert abs(dE_dk(k) - fd_e) < 1e-6 * abs(fd_e)
            assert abs(dK_dk(k) - fd_k) < 1e-6 * abs(fd_k)

    def test_domain(self):
        for f in (dE_dk, dK_dk):
            with pytest.raises(ValueError):
                f(0.0)
            with pytest.raises(ValueError):
                f(1.0)


class TestJacobi:
    @pytest.mark.parametrize("t", [0.3, 1.1, 2.9])
    def test_sn_reduces_to_sin_at_k0(self, t):
        s, c, d = jacobi_sn_cn_dn(t, 0.0)
        assert s == pytest.approx(math.sin(t), abs=1e-15)
        assert c == pytest.approx(math.cos(t), abs=1e-15)
        assert d == 1.0

    def test_k_to_one_limit_is_tanh(self):
        for t in (0.4, 1.0, 2.5):
            s, _, _ = jacobi_sn_cn_dn(t, 1.0 - 1e-12)
            assert s == pytest.approx(math.tanh(t), abs=1e-5)

    def test_exact_k1_closed_form(self):
        s, c, d = jacobi_sn_cn_dn(0.8, 1.0)
        assert s == pytest.approx(math.tanh(0.8), abs=1e-15)
        assert c == pytest.approx(1.0 / math.cosh(0.8), abs=1e-15)
        assert d == c

    def test_quarter_period_via_ode_oracle(self):
        k = 0.5
        K = complete_K(k)
        s, c, d = jacobi_sn_cn_dn(K, k)
        assert s == pytest.approx(1.0, abs=1e-12)
        # direct RK4 integration of the defining ODE system
        ode = rk4_jacobi(K, k * k)
        assert s == pytest.approx(ode[0], abs=1e-9)
        assert c == pytest.approx(ode[1], abs=1e-9)
        assert d == pytest.approx(ode[2], abs=1e-9)

    def test_trajectory_matches_ode_oracle(self):
        k2 = 0.72
        for t in (0.5, 1.2, 2.0):
            ode = rk4_jacobi(t, k2)
            s, c, d = jacobi_sn_cn_dn(t, math.sqrt(k2))
            assert abs(s - ode[0]) < 1e-9
            assert abs(c - ode[1]) < 1e-9
            assert abs(d - ode[2]) < 1e-9

    def test_derivative_rule(self):
        # sn' = cn dn, checked by finite differences
        for k in (0.2, 0.6, 0.9):
            for t in (0.3, 1.7, 4.1):
                fd = central_diff(lambda u: jacobi_sn_cn_dn(u, k)[0], t)
                _, c, d = jacobi_sn_cn_dn(t, k)
                assert fd == pytest.approx(c * d, abs=2e-10)

    def test_periods(self):
        k = 0.65
        K = complete_K(k)
        ts = np.linspace(-3.0, 3.0, 11)
        s0, c0, d0 = jacobi_sn_cn_dn(ts, k)
        s4, c4, _ = jacobi_sn_cn_dn(ts + 4 * K, k)
        _, _, d2 = jacobi_sn_cn_dn(ts + 2 * K, k)
        assert np.abs(s4 - s0).max() < 1e-11
        assert np.abs(c4 - c0).max() < 1e-11
        assert np.abs(d2 - d0).max() < 1e-11

    @settings(max_examples=150, deadline=None)
    @given(t=st.floats(-50.0, 50.0), k=st.floats(0.0, 0.999))
    def test_identities_property(self, t, k):
        s, c, d = jacobi_sn_cn_dn(t, k)
        assert abs(s * s + c * c - 1.0) < 1e-12
        assert abs(d * d - 1.0 + k * k * s * s) < 1e-12

    def test_identities_on_extreme_moduli(self):
        ts = np.linspace(-20.0, 20.0, 401)
        for k in (1e-8, 0.999999, 1.0 - 1e-10):
            s, c, d = jacobi_sn_cn_dn(ts, k)
            assert np.abs(s * s + c * c - 1.0).max() < 1e-12
            assert np.abs(d * d - 1.0 + k * k * s * s).max() < 1e-12

    def test_vectorized_matches_scalar(self):
        ts = np.array([0.1, 0.9, 3.3])
        sv, cv, dv = jacobi_sn_cn_dn(ts, 0.4)
        for i, t in enumerate(ts):
            s, c, d = jacobi_sn_cn_dn(float(t), 0.4)
            assert (s, c, d) == (sv[i], cv[i], dv[i])
