import numpy as np
import pytest

from rydeit import (EitParams, SeriesCoeffs, beta0_phi0, beta0_phi0_approx,
                    probe_response, rho22_in, rho31, series_coeffs)


def make_eit(**kw):
    base = dict(omega_c=1.0, alpha=81.0)
    base.update(kw)
    return EitParams(**base)


class TestRho31:
    def test_perfect_eit(self):
        assert rho31(0.3, -0.3, 0.0, 1.0) == 0.0

    def test_bare_two_level_limit_omega_c_zero(self):
        # direct algebraic reduction at zero coupling
        for dp in (0.0, 0.4, -1.2):
            got = rho31(dp, 0.7, 0.0, 0.0)
            assert got == pytest.approx(-1.0 / (2.0 * dp + 1.0j), rel=1e-14)

    def test_on_resonance_with_decoherence(self):
        got = rho31(0.0, 0.0, 0.012, 1.0)
        # independent arithmetic: i*g0 / (wc^2/2 + g0*gamma)
        assert got == pytest.approx(0.012j / 0.512, rel=1e-14)
        assert got.imag == pytest.approx(0.0234375, rel=1e-12)

    def test_degenerate_denominator(self):
        # wc^2/2 = 2 dp (dp + dc) exactly, with gamma = gamma0 = 0
        with pytest.raises(ValueError):
            rho31(0.25, 0.75, 0.0, 1.0, gamma=0.0)

    def test_passivity_randomized(self):
        # Im >= 0 whenever gamma0 >= 0; exact-arithmetic reason:
        # Im(num * conj(den)) = g0 wc^2/2 + gamma (delta^2 + g0^2) >= 0
        rng = np.random.default_rng(123)
        n = 10_000
        dp = rng.uniform(-5, 5, n)
        dc = rng.uniform(-5, 5, n)
        g0 = rng.uniform(0, 0.5, n)
        wc = rng.uniform(0.2, 4.0, n)
        chi = rho31(dp, dc, g0, wc)
        assert np.all(chi.imag >= 0)

    def test_two_level_limit_large_shift(self):
        # O(1/omega) approach to the two-level response as the coupling
        # detuning argument grows
        dp = 0.3
        target = -1.0 / (2.0 * dp + 1.0j)
        prev = None
        for w in (1e2, 1e3, 1e4, 1e5):
            err = abs(rho31(dp, 0.5 + w, 0.0, 1.0) - target)
            if prev is not None:
                assert err < prev / 5.0  # at least ~1/omega decay
            prev = err
        assert err < 1e-4


class TestBeta0Phi0:
    def test_zero_at_perfect_eit(self):
        b0, p0 = beta0_phi0(make_eit(delta_p=0.0, delta_c=0.0))
        assert b0 == 0.0 and p0 == 0.0

    def test_exact_on_resonance_value(self):
        b0, _ = beta0_phi0(make_eit(gamma0=0.012))
        assert b0 == pytest.approx(81.0 * 0.0234375, rel=1e-12)

    def test_approx_vs_exact_discrepancy(self):
        eit = make_eit(gamma0=0.012)
        exact, _ = beta0_phi0(eit)
        approx, _ = beta0_phi0_approx(eit)
        assert approx == pytest.approx(2.0 * 81.0 * 0.012, rel=1e-14)
        assert abs(approx / exact - 1.0) == pytest.approx(0.0234, abs=0.002)

    def test_approx_leading_phase_term(self):
        eit = make_eit(delta_p=0.01, delta_c=0.0)
        _, p0 = beta0_phi0_approx(eit)
        assert p0 == pytest.approx(0.81, rel=1e-12)

    def test_approx_converges_quadratically_in_coupling(self):
        # relative error shrinks by >= 4x when omega_c doubles (small
        # two-photon detuning, finite coupling detuning)
        errs_b, errs_p = [], []
        for wc in (2.0, 4.0, 8.0):
            eit = make_eit(omega_c=wc, gamma0=0.012, delta_p=-0.295,
                           delta_c=0.3)
            be, pe = beta0_phi0(eit)
            ba, pa = beta0_phi0_approx(eit)
            errs_b.append(abs(ba / be - 1.0))
            errs_p.append(abs(pa / pe - 1.0))
        # per-step shrink close to the ideal 4x; quadratic order overall
        for errs in (errs_b, errs_p):
            assert errs[1] <= errs[0] / 3.4
            assert errs[2] <= errs[1] / 3.4
            assert errs[2] <= errs[0] / 12.0

    def test_approx_warns_outside_regime(self):
        with pytest.warns(UserWarning, match="approximation"):
            beta0_phi0_approx(make_eit(omega_c=0.3, gamma0=0.2))

    def test_probe_response_bundle(self):
        eit = make_eit(gamma0=0.012)
        r = probe_response(eit)
        assert r.beta == pytest.approx(81.0 * 0.0234375, rel=1e-12)
        assert r.transmission == pytest.approx(np.exp(-r.beta), rel=1e-14)
        assert 0.0 < r.transmission <= 1.0


class TestRho22In:
    def test_exact_equals_approx_on_resonance(self):
        eit = make_eit(omega_p_in=0.1)
        assert rho22_in(eit, exact=True) == rho22_in(eit, exact=False)
        assert rho22_in(eit, exact=True) == pytest.approx(0.01, rel=1e-15)

    def test_off_resonance_exact(self):
        eit = make_eit(omega_p_in=0.1, delta_p=0.0, delta_c=0.05)
        assert rho22_in(eit) == pytest.approx(0.01 / 1.01, rel=1e-12)

    def test_denominator_guard_not_hit_for_valid_params(self):
        # both denominator terms vanish only for omega_c = 0, which the
        # parameter validation already excludes; the worst legal case where
        # wc^2 = 4 delta dp still has the 4 delta^2 gamma^2 term
        eit = EitParams(omega_c=1.0, alpha=1.0, omega_p_in=0.01,
                        delta_p=0.25, delta_c=0.75, gamma=1.0)
        assert rho22_in(eit) == pytest.approx(
            0.01 ** 2 / (4.0 * 1.0 ** 2), rel=1e-12)


class TestSeriesCoeffs:
    def test_large_shift_limit_of_a0(self):
        for dc in (0.0, 0.7, -1.3):
            c = series_coeffs(1e9, dc, 1.0)
            assert c.a0 == pytest.approx(1.0 / (1.0 + 4.0 * dc ** 2), rel=1e-6)

    def test_two_photon_resonance_peak(self):
        # 4 omega dc + wc^2 = 0 leaves a0 = 1/gamma
        c = series_coeffs(0.25, -1.0, 1.0)
        assert c.a0 == pytest.approx(1.0, rel=1e-14)

    def test_cross_identities(self):
        rng = np.random.default_rng(99)
        for _ in range(50):
            w = float(rng.uniform(0.0, 5.0))
            dc = float(rng.uniform(-3.0, 3.0))
            wc = float(rng.uniform(0.3, 3.0))
            c = series_coeffs(w, dc, wc)
            assert c.b1 == -c.a2
            assert c.a1 == c.b2

    def test_zeroth_order_matches_response(self):
        # a0, b0 are the response at the expansion point
        for (w, dc, wc) in [(0.3, 0.7, 1.3), (1.0, -1.0, 1.0), (0.05, 0.0, 2.0)]:
            c = series_coeffs(w, dc, wc)
            chi = rho31(-dc, dc + w, 0.0, wc)
            assert c.a0 == pytest.approx(chi.imag, rel=1e-12)
            assert c.b0 == pytest.approx(chi.real, rel=1e-12)

    @pytest.mark.parametrize("w,dc,wc", [
        (0.3, 0.7, 1.3), (1.0, -1.0, 1.0), (0.02, 0.0, 2.0), (2.5, 1.5, 0.7),
    ])
    def test_first_order_matches_finite_differences(self, w, dc, wc):
        # expansion point freezes the probe detuning at -delta_c, so the
        # two-photon detuning rides on the coupling-detuning slot
        c = series_coeffs(w, dc, wc)
        h = 1e-6

        def chi(g0, d):
            return rho31(-dc, dc + w + d, g0, wc)

        fd_a1 = (chi(h, 0.0).imag - chi(-h, 0.0).imag) / (2 * h)
        fd_a2 = (chi(0.0, h).imag - chi(0.0, -h).imag) / (2 * h)
        fd_b1 = (chi(h, 0.0).real - chi(-h, 0.0).real) / (2 * h)
        fd_b2 = (chi(0.0, h).real - chi(0.0, -h).real) / (2 * h)
        assert c.a1 == pytest.approx(fd_a1, rel=1e-6)
        assert c.a2 == pytest.approx(fd_a2, rel=1e-6)
        assert c.b1 == pytest.approx(fd_b1, rel=1e-6)
        assert c.b2 == pytest.approx(fd_b2, rel=1e-6)

    def test_rejects_negative_shift(self):
        with pytest.raises(ValueError):
            series_coeffs(-0.1, 0.0, 1.0)

    def test_boundary_shift_allowed(self):
        c = series_coeffs(0.0, 0.5, 1.0)
        assert isinstance(c, SeriesCoeffs)
        assert c.a0 == 0.0
