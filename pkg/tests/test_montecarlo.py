import math

import numpy as np
import pytest
from scipy import stats

from lievol.montecarlo import (SamplerConfig, concentration_experiment,
                               cp_coordinate, kolmogorov_pvalue, ks_test,
                               sample_so, sample_su, sample_usp,
                               sphere_band_mass, sphere_band_mass_quadrature,
                               symplectic_form, xi_histogram)
from lievol.roots import Series


def cfg(tag, n, count=4096, seed=11, workers=1):
    return SamplerConfig(Series(tag, n), count=count, seed=seed,
                         workers=workers)


class TestSamplers:
    def test_su_unitary_and_det(self):
        g = sample_su(cfg("A", 5, count=512))
        eye = np.eye(5)
        assert np.max(np.abs(g @ g.conj().transpose(0, 2, 1) - eye)) < 1e-12
        assert np.max(np.abs(np.linalg.det(g) - 1.0)) < 1e-12

    def test_so_orthogonal_special(self):
        g = sample_so(cfg("B", 3, count=512))
        assert g.shape == (512, 7, 7)
        eye = np.eye(7)
        assert np.max(np.abs(g @ g.transpose(0, 2, 1) - eye)) < 1e-12
        assert np.max(np.abs(np.linalg.det(g) - 1.0)) < 1e-10

    def test_so_even(self):
        g = sample_so(cfg("D", 4, count=256))
        assert g.shape == (256, 8, 8)
        assert np.max(np.abs(np.linalg.det(g) - 1.0)) < 1e-10

    def test_usp_unitary_symplectic(self):
        g = sample_usp(cfg("C", 3, count=256))
        eye = np.eye(6)
        assert np.max(np.abs(g @ g.conj().transpose(0, 2, 1) - eye)) < 1e-12
        J = symplectic_form(6)
        dev = np.max(np.abs(g.transpose(0, 2, 1) @ J @ g - J))
        assert dev < 1e-12

    def test_config_validation(self):
        with pytest.raises(ValueError):
            SamplerConfig(Series("A", 3), count=0, seed=1)
        with pytest.raises(ValueError):
            SamplerConfig(Series("A", 3), count=10, seed=1, workers=0)


class TestDeterminism:
    @pytest.mark.parametrize("sampler,tag,n",
                             [(sample_su, "A", 4), (sample_so, "B", 2),
                              (sample_usp, "C", 2)])
    def test_bit_identical_across_workers(self, sampler, tag, n):
        # count > CHUNK so multiple chunks are actually in flight
        a = sampler(cfg(tag, n, count=5000, seed=3, workers=1))
        b = sampler(cfg(tag, n, count=5000, seed=3, workers=4))
        assert a.tobytes() == b.tobytes()

    def test_seed_changes_stream(self):
        a = sample_su(cfg("A", 3, count=64, seed=1))
        b = sample_su(cfg("A", 3, count=64, seed=2))
        assert not np.allclose(a, b)


class TestInvariance:
    def test_left_translation(self):
        # Re tr(g) and Re tr(g0 g) must be equidistributed under Haar
        g = sample_su(cfg("A", 5, count=20000, seed=5))
        rng = np.random.default_rng(5)
        x = rng.standard_normal((5, 5)) + 1j * rng.standard_normal((5, 5))
        q, r = np.linalg.qr(x)
        g0 = q * (np.diagonal(r) / np.abs(np.diagonal(r)))
        g0 *= np.linalg.det(g0) ** (-1 / 5)
        t1 = np.trace(g, axis1=1, axis2=2).real
        t2 = np.trace(g0 @ g, axis1=1, axis2=2).real
        passes = 0
        for k in range(3):
            sl = slice(k * 6000, (k + 1) * 6000)
            passes += stats.ks_2samp(t1[sl], t2[sl]).pvalue > 0.01
        assert passes >= 2

    def test_su2_trace_semicircle(self):
        # Re tr(g)/2 on SU(2) follows the semicircle law
        g = sample_su(cfg("A", 2, count=30000, seed=9))
        x = np.sort(np.trace(g, axis1=1, axis2=2).real / 2.0)

        def cdf(t):
            t = min(1.0, max(-1.0, t))
            return 0.5 + (t * math.sqrt(1 - t * t) + math.asin(t)) / math.pi

        _, p = ks_test(x, cdf)
        assert p > 0.01

    def test_first_entry_law(self):
        # |g_00|^2 of Haar SU(n) is Beta(1, n-1): cdf 1 - (1-s)^{n-1}
        n = 6
        g = sample_su(cfg("A", n, count=20000, seed=13))
        s = np.sort(np.abs(g[:, 0, 0]) ** 2)
        _, p = ks_test(s, lambda t: 1.0 - (1.0 - t) ** (n - 1))
        assert p > 0.01


class TestSphereBandMass:
    def test_m1_closed_form(self):
        # S^1: band mass is 2r/pi
        for r in (0.1, 0.7, 1.2):
            assert sphere_band_mass(1, r) == pytest.approx(2 * r / math.pi,
                                                           abs=1e-12)

    def test_m2_closed_form(self):
        for r in (0.2, 0.9):
            assert sphere_band_mass(2, r) == pytest.approx(math.sin(r),
                                                           abs=1e-12)

    @pytest.mark.parametrize("m", [1, 2, 5, 12])
    @pytest.mark.parametrize("r", [0.15, 0.5, 1.0])
    def test_matches_quadrature(self, m, r):
        assert sphere_band_mass(m, r) == pytest.approx(
            sphere_band_mass_quadrature(m, r), abs=1e-10)

    def test_endpoints(self):
        assert sphere_band_mass(7, math.pi / 2) == pytest.approx(1.0)
        assert sphere_band_mass(7, 0.0) == pytest.approx(0.0)

    def test_monotone_in_r(self):
        vals = [sphere_band_mass(9, r) for r in np.linspace(0.01, 1.5, 30)]
        assert all(a < b for a, b in zip(vals, vals[1:]))


class TestKSTest:
    def test_rejects_unsorted(self):
        with pytest.raises(ValueError):
            ks_test(np.array([0.5, 0.1, 0.9] * 10), lambda t: t)

    def test_rejects_short(self):
        with pytest.raises(ValueError):
            ks_test(np.arange(5) / 5.0, lambda t: t)

    def test_uniform_null(self):
        rng = np.random.default_rng(17)
        x = np.sort(rng.uniform(size=5000))
        d, p = ks_test(x, lambda t: t)
        assert p > 0.01
        # agreement with the scipy implementation of the same statistic
        assert d == pytest.approx(stats.kstest(x, "uniform").statistic,
                                  abs=1e-12)

    def test_wrong_null_rejected(self):
        rng = np.random.default_rng(18)
        x = np.sort(rng.uniform(size=5000) ** 2)
        _, p = ks_test(x, lambda t: t)
        assert p < 1e-6

    def test_pvalue_limits(self):
        assert kolmogorov_pvalue(0.0) == 1.0
        assert kolmogorov_pvalue(10.0) < 1e-12
        # spot value lambda = 1 from the classical table
        assert kolmogorov_pvalue(1.0) == pytest.approx(0.27, abs=0.005)


class TestConcentration:
    def test_su_band(self):
        rep = concentration_experiment(cfg("A", 6, count=20000, seed=21), 0.4)
        assert rep.predicted_mass == pytest.approx(1 - math.cos(0.4) ** 10)
        assert abs(rep.z_score) < 4.0

    def test_so_product(self):
        rep = concentration_experiment(cfg("B", 2, count=20000, seed=22), 0.5)
        assert rep.predicted_mass == pytest.approx(
            sphere_band_mass(4, 0.5) * sphere_band_mass(3, 0.5))
        assert abs(rep.z_score) < 4.0

    def test_usp_band(self):
        rep = concentration_experiment(cfg("C", 2, count=20000, seed=23), 0.5)
        assert rep.predicted_mass == pytest.approx(sphere_band_mass(7, 0.5))
        assert abs(rep.z_score) < 4.0

    def test_r_validation(self):
        with pytest.raises(ValueError):
            concentration_experiment(cfg("A", 3, count=100), 0.0)

    def test_report_json(self):
        rep = concentration_experiment(cfg("D", 4, count=4096, seed=24), 0.5)
        d = rep.to_json()
        assert d["group"] == "Spin(8)"
        assert d["count"] == 4096
        assert "bi-equator" in d["base"]


def test_xi_histogram():
    h = xi_histogram(cfg("A", 3, count=4096, seed=25), bins=50)
    assert len(h["counts"]) == 50
    assert sum(h["counts"]) == 4096


def test_cp_coordinate_range():
    g = sample_su(cfg("A", 4, count=256, seed=26))
    mag, xi = cp_coordinate(g)
    assert np.all((mag >= 0) & (mag <= 1))
    assert np.all((xi >= 0) & (xi <= math.pi / 2))
