import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad, solve_ivp
from scipy.special import ellipj, ellipk

from bbmkp.special import elliptic_K, jacobi_sn, jacobi_sn_cn, real_cubic_roots, to_parameter

params = st.floats(0.0, 0.999, allow_nan=False)
args = st.floats(-50.0, 50.0, allow_nan=False)


def K_by_quadrature(m):
    val, _ = quad(lambda th: 1.0 / math.sqrt(1.0 - m * math.sin(th) ** 2), 0.0, math.pi / 2, epsabs=0, epsrel=1e-13, limit=200)
    return val


class TestEllipticK:
    def test_zero(self):
        assert elliptic_K(0.0) == pytest.approx(math.pi / 2, abs=1e-15)

    @pytest.mark.parametrize("m", [0.1, 0.5, 0.88795, 0.99])
    def test_against_quadrature(self, m):
        assert elliptic_K(m) == pytest.approx(K_by_quadrature(m), rel=1e-12)

    @pytest.mark.parametrize("m", [0.999, 0.999999, 1 - 1e-12])
    def test_near_singular_matches_scipy(self, m):
        assert elliptic_K(m) == pytest.approx(float(ellipk(m)), rel=1e-13)

    def test_half(self):
        assert elliptic_K(0.5) == pytest.approx(1.8540746773013719, rel=1e-14)

    def test_diverges_at_one(self):
        with pytest.raises(ValueError):
            elliptic_K(1.0)

    @pytest.mark.parametrize("m", [-0.1, 1.5])
    def test_rejects_out_of_range(self, m):
        with pytest.raises(ValueError):
            elliptic_K(m)

    def test_modulus_convention_squares(self):
        assert elliptic_K(0.5, "modulus") == pytest.approx(elliptic_K(0.25), rel=1e-15)
        assert to_parameter(0.3, "modulus") == pytest.approx(0.09)
        with pytest.raises(ValueError):
            to_parameter(0.3, "nome")


class TestJacobiSn:
    def test_zero_argument(self):
        assert jacobi_sn(0.0, 0.7) == 0.0

    def test_degenerate_sine(self):
        u = np.linspace(-7, 7, 41)
        np.testing.assert_allclose(jacobi_sn(u, 0.0), np.sin(u), atol=1e-15)

    def test_degenerate_tanh(self):
        u = np.linspace(-7, 7, 41)
        np.testing.assert_allclose(jacobi_sn(u, 1.0), np.tanh(u), atol=1e-15)

    @pytest.mark.parametrize("m", [0.2, 0.5, 0.88795, 0.999])
    def test_quarter_period_is_one(self, m):
        assert jacobi_sn(elliptic_K(m), m) == pytest.approx(1.0, abs=1e-12)

    @pytest.mark.parametrize("m", [1e-6, 0.3, 0.5, 0.9, 0.999999])
    def test_matches_scipy(self, m):
        u = np.linspace(-30, 30, 301)
        sn, cn, _, _ = ellipj(u, m)
        got_sn, got_cn = jacobi_sn_cn(u, m)
        np.testing.assert_allclose(got_sn, sn, atol=1e-12)
        np.testing.assert_allclose(got_cn, cn, atol=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(args, params)
    def test_odd(self, u, m):
        assert jacobi_sn(-u, m) == pytest.approx(-jacobi_sn(u, m), abs=1e-12)

    @settings(max_examples=100, deadline=None)
    @given(args, params)
    def test_periodic(self, u, m):
        K = elliptic_K(m)
        assert jacobi_sn(u + 4 * K, m) == pytest.approx(jacobi_sn(u, m), abs=1e-10)

    @settings(max_examples=100, deadline=None)
    @given(args, params)
    def test_pythagorean(self, u, m):
        sn, cn = jacobi_sn_cn(u, m)
        assert sn**2 + cn**2 == pytest.approx(1.0, abs=1e-11)

    @pytest.mark.parametrize("m", [0.25, 0.5, 0.88795])
    def test_against_ode_oracle(self, m):
        # sn'' = -(1 + m) sn + 2 m sn^3, sn(0) = 0, sn'(0) = 1
        K = elliptic_K(m)
        u = np.linspace(0.0, 2 * K, 100)
        sol = solve_ivp(
            lambda _, y: [y[1], -(1 + m) * y[0] + 2 * m * y[0] ** 3],
            (0.0, 2 * K), [0.0, 1.0], method="DOP853", t_eval=u, rtol=1e-13, atol=1e-14,
        )
        assert np.max(np.abs(jacobi_sn(u, m) - sol.y[0])) <= 1e-9

    def test_large_argument_reduction(self):
        m = 0.6
        u = 1e4 + 0.3
        assert jacobi_sn(u, m) == pytest.approx(float(ellipj(u, m)[0]), abs=1e-10)

    def test_modulus_convention_differs(self):
        assert jacobi_sn(1.0, 0.5, "modulus") == pytest.approx(float(ellipj(1.0, 0.25)[0]), abs=1e-14)
        assert abs(jacobi_sn(1.0, 0.5, "modulus") - jacobi_sn(1.0, 0.5)) > 1e-3

    def test_array_shape_preserved(self):
        u = np.zeros((3, 4))
        assert jacobi_sn(u, 0.5).shape == (3, 4)


class TestCubicRoots:
    def test_integer_roots(self):
        np.testing.assert_allclose(real_cubic_roots(1, -6, 11, -6), [1, 2, 3], atol=1e-14)

    def test_single_real_root(self):
        roots = real_cubic_roots(1, 0, 0, -8)
        assert roots == pytest.approx([2.0], abs=1e-14)

    def test_triple_root(self):
        assert real_cubic_roots(1, -3, 3, -1) == pytest.approx([1.0], abs=1e-12)

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            real_cubic_roots(0, 1, 2, 3)

    @settings(max_examples=100, deadline=None)
    @given(st.lists(st.floats(-100, 100, allow_nan=False), min_size=3, max_size=3, unique=True))
    def test_recovers_distinct_roots(self, r):
        r = sorted(r)
        if min(r[1] - r[0], r[2] - r[1]) < 1e-2:
            return
        c2 = -(r[0] + r[1] + r[2])
        c1 = r[0] * r[1] + r[0] * r[2] + r[1] * r[2]
        c0 = -r[0] * r[1] * r[2]
        got = real_cubic_roots(1.0, c2, c1, c0)
        assert len(got) == 3
        scale = max(1.0, max(abs(v) for v in r))
        np.testing.assert_allclose(got, r, atol=1e-8 * scale**2)
        assert sum(got) == pytest.approx(-c2, abs=1e-9 * scale)
