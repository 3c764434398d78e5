import numpy as np
import pytest

from bbmkp.errors import AdmissibilityError, CommensurabilityError
from bbmkp.exact import build_traveling_wave, linear_exact_evolve, traveling_wave_field, wave_grid
from bbmkp.model import DampingProfile
from bbmkp.spectral import GridSpec, RealField, forward_transform, inverse_transform
from bbmkp.special import jacobi_sn

KP1 = dict(alpha=1.0, gamma=-1, c=1.0, r=2.0, h=-1.0)
KP2 = dict(alpha=-2.0, gamma=1, c=-1.0, r=1.0, h=-2.25)


def sig5(x):
    return float(f"{x:.5g}")


def profile_residuals(wave, n=256):
    """Relative spectral residuals of the profile ODE and of the reduced 1D equation.

    With z = x + r y - c t, a wave solves
    (1 + gamma r^2 - c) U' + alpha U U' + c U''' = 0   and   U'^2 = p(U).
    """
    lam = wave.wavelength
    z = np.arange(n) * lam / n
    U = wave.r3 - (wave.r3 - wave.r2) * jacobi_sn(wave.phase_scale * z, wave.m, wave.convention) ** 2
    k = 2 * np.pi * np.fft.fftfreq(n, d=lam / n)
    Uh = np.fft.fft(U)
    d1 = np.fft.ifft(1j * k * Uh).real
    d3 = np.fft.ifft((1j * k) ** 3 * Uh).real
    s = 1 + wave.gamma * wave.r**2 - wave.c
    pde = s * d1 + wave.alpha * U * d1 + wave.c * d3
    ode = d1**2 - wave.polynomial(U)
    return np.max(np.abs(pde)) / np.max(np.abs(wave.c * d3)), np.max(np.abs(ode)) / np.max(d1**2)


class TestTravelingWaveConstruction:
    def test_gamma_minus_one_roots(self):
        w = build_traveling_wave(**KP1)
        assert [sig5(w.r1), sig5(w.r2), sig5(w.r3)] == [-0.68768, 0.72964, 11.958]
        assert w.m == pytest.approx((11.958 - 0.729637) / (11.958 + 0.687677), abs=1e-5)

    def test_gamma_plus_one_roots(self):
        w = build_traveling_wave(**KP2)
        assert [sig5(w.r1), sig5(w.r2), sig5(w.r3)] == [-1.0981, 1.5, 4.0981]
        assert w.m == pytest.approx(0.5, abs=1e-12)

    def test_roots_are_zeros(self):
        for params in (KP1, KP2):
            w = build_traveling_wave(**params)
            for root in (w.r1, w.r2, w.r3):
                assert abs(w.polynomial(root)) < 1e-12

    def test_wavelengths(self):
        assert build_traveling_wave(**KP1).wavelength == pytest.approx(4.918531729, abs=1e-8)
        assert build_traveling_wave(**KP2).wavelength == pytest.approx(3.984665799, abs=1e-8)

    def test_example_grid_spacing(self):
        g = wave_grid(build_traveling_wave(**KP1), N=512)
        assert g.Lx == pytest.approx(4.9185, abs=1e-4)
        assert g.Ly == pytest.approx(2.4593, abs=1e-4)
        assert g.dx == pytest.approx(0.0096, abs=1e-4)

    @pytest.mark.parametrize(
        "kw",
        [
            dict(KP1, h=0.0),
            dict(KP1, h=-1e3),
            dict(KP1, c=-1.0),
            dict(KP1, gamma=0),
            dict(KP1, alpha=0.0),
            dict(KP1, c=0.0),
            dict(KP1, r=0.0, c=2.0, alpha=-1.0),
        ],
    )
    def test_inadmissible(self, kw):
        with pytest.raises(AdmissibilityError):
            build_traveling_wave(**kw)

    @pytest.mark.parametrize("params", [KP1, KP2])
    def test_solves_the_equation(self, params):
        pde, ode = profile_residuals(build_traveling_wave(**params))
        assert pde < 1e-8
        assert ode < 1e-8

    @pytest.mark.parametrize("params", [KP1, KP2])
    def test_modulus_reading_does_not(self, params):
        w = build_traveling_wave(**params, convention="modulus")
        pde, ode = profile_residuals(w)
        assert ode > 1e-2 and pde > 1e-2


class TestTravelingWaveField:
    def test_crest_and_trough(self):
        w = build_traveling_wave(**KP2)
        g = wave_grid(w, N=64)
        u = traveling_wave_field(w, g, 0.0).values
        assert u.max() == pytest.approx(w.r3, abs=1e-12)
        assert u.min() >= w.r2 - 1e-12
        assert u.min() == pytest.approx(w.r2, abs=1e-2)

    def test_translation(self):
        w = build_traveling_wave(**KP1)
        g = wave_grid(w, N=64)
        shift = g.dx
        u0 = traveling_wave_field(w, g, 0.0).values
        u1 = traveling_wave_field(w, g, -shift / w.c).values
        np.testing.assert_allclose(u1, np.roll(u0, -1, axis=0), atol=1e-12)

    def test_doubly_periodic(self):
        w = build_traveling_wave(**KP1)
        g = wave_grid(w, N=32)
        u = traveling_wave_field(w, g, 0.3).values
        z_edge = w.phase_scale * (g.x[0] + g.Lx + w.r * g.y - w.c * 0.3)
        wrap = w.r3 - (w.r3 - w.r2) * jacobi_sn(z_edge, w.m) ** 2
        np.testing.assert_allclose(wrap, u[0], atol=1e-11)

    def test_incommensurate_grid(self):
        w = build_traveling_wave(**KP1)
        with pytest.raises(CommensurabilityError):
            traveling_wave_field(w, GridSpec(5.0, 2.4593, 16, 16), 0.0)


class TestLinearExact:
    grid = GridSpec(40.0, 40.0, 64, 64)

    def field(self):
        x, y = self.grid.nodes()
        return forward_transform(RealField(self.grid, np.exp(-(x**2 + y**2) / 4) * (1 + 0.3 * x)))

    def test_identity_at_zero(self):
        F = self.field()
        out = linear_exact_evolve(F, 0.0, 1.0, 1).coeffs
        kept = np.abs(out) > 0
        np.testing.assert_allclose(out[kept], F.coeffs[kept], atol=1e-15)

    @pytest.mark.parametrize("gamma", [1, -1])
    def test_group_property(self, gamma):
        F = self.field()
        a = linear_exact_evolve(linear_exact_evolve(F, 0.7, 0.4, gamma), 1.1, 0.4, gamma)
        b = linear_exact_evolve(F, 1.8, 0.4, gamma)
        np.testing.assert_allclose(a.coeffs, b.coeffs, atol=1e-14)

    def test_undamped_conserves_modulus(self):
        F = linear_exact_evolve(self.field(), 0.0, 0.0, 1)
        G = linear_exact_evolve(F, 3.0, 0.0, 1)
        np.testing.assert_allclose(np.abs(G.coeffs), np.abs(F.coeffs), atol=1e-15)

    def test_damped_mode_decay_rate(self):
        # |factor| = exp(-a t / (1 + xi^2)) for m != 0, exp(-a t) for the mean
        F = linear_exact_evolve(self.field(), 0.0, 1.0, 1)
        G = linear_exact_evolve(F, 2.0, 1.0, 1)
        xi = self.grid.xi[:, None] * np.ones((1, self.grid.Ny))
        keep = np.abs(F.coeffs) > 1e-12
        ratio = np.abs(G.coeffs[keep]) / np.abs(F.coeffs[keep])
        expected = np.exp(-2.0 / (1 + xi[keep] ** 2))
        expected[xi[keep] == 0] = np.exp(-2.0)
        np.testing.assert_allclose(ratio, expected, rtol=1e-12)

    def test_real_output(self):
        G = linear_exact_evolve(self.field(), 1.3, 1.0, -1)
        assert G.hermitian_defect() < 1e-15
        inverse_transform(G)

    def test_rejects_localized(self):
        prof = DampingProfile(kind="localized", B=5, C=-1, D=1)
        with pytest.raises(ValueError):
            linear_exact_evolve(self.field(), 1.0, prof, 1)

    def test_accepts_constant_profile(self):
        F = self.field()
        a = linear_exact_evolve(F, 1.0, DampingProfile(kind="constant", a0=0.5), 1)
        b = linear_exact_evolve(F, 1.0, 0.5, 1)
        np.testing.assert_array_equal(a.coeffs, b.coeffs)
