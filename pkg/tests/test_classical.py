import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from infospec import classical as cl
from infospec import divergences as dv
from infospec import herm as hm

PLUS = np.array([1.0, 1.0]) / math.sqrt(2)


class TestNussbaumSzkola:
    def test_identical_diagonal(self):
        pr = cl.nussbaum_szkola(np.diag([0.6, 0.4]), np.diag([0.6, 0.4]))
        assert np.allclose(pr.P, pr.Q)

    def test_commuting_kl(self):
        p, q = np.array([0.5, 0.3, 0.2]), np.array([0.2, 0.2, 0.6])
        d, _ = cl.classical_stats(cl.nussbaum_szkola(np.diag(p), np.diag(q)))
        assert abs(d - float(np.sum(p * np.log2(p / q)))) <= 1e-14

    def test_plus_against_mixed(self):
        pr = cl.nussbaum_szkola(hm.proj(PLUS), np.eye(2) / 2)
        assert abs(pr.P.sum() - 1) <= 1e-15
        assert np.allclose(np.sort(pr.P)[-2:], [0.5, 0.5])
        d, v = cl.classical_stats(pr)
        st_ = dv.relative_entropy_stats(hm.proj(PLUS), np.eye(2) / 2)
        assert abs(d - st_.D) <= 1e-10 and abs(v - st_.V) <= 1e-10

    @settings(max_examples=40, deadline=None, derandomize=True)
    @given(st.integers(0, 2**31), st.integers(2, 4))
    def test_moments(self, seed, d):
        r, s = hm.random_state(d, seed), hm.random_state(d, seed + 7)
        dc, vc = cl.classical_stats(cl.nussbaum_szkola(r, s))
        st_ = dv.relative_entropy_stats(r, s)
        assert abs(dc - st_.D) <= 1e-10 and abs(vc - st_.V) <= 1e-10


class TestClassicalSpectrum:
    def test_identical(self):
        pr = cl.ClassicalPair(np.array([0.5, 0.5]), np.array([0.5, 0.5]))
        v = cl.classical_info_spectrum(pr, 0.3)
        assert float(v) == 0.0 and v.left_limit

    def test_single_atom(self):
        v = cl.classical_info_spectrum(cl.ClassicalPair(np.array([1.0, 0.0]), np.array([0.5, 0.5])), 0.4)
        assert float(v) == 1.0 and v.left_limit

    def test_two_atoms(self):
        v = cl.classical_info_spectrum(cl.ClassicalPair(np.array([0.75, 0.25]), np.array([0.5, 0.5])), 0.3)
        assert abs(float(v) - math.log2(1.5)) <= 1e-14

    def test_underline_matches_quantum(self):
        p, q = np.array([0.7, 0.2, 0.1]), np.array([0.3, 0.3, 0.4])
        pr = cl.ClassicalPair(p, q)
        for e in (0.1, 0.5, 0.9):
            for direction in ("underline", "overline"):
                a = float(cl.classical_info_spectrum(pr, e, direction))
                b = dv.info_spectrum_divergence(np.diag(p), np.diag(q), e, direction).gamma
                assert abs(a - b) <= 1e-9

    def test_infinite_mass(self):
        pr = cl.ClassicalPair(np.array([0.5, 0.5]), np.array([1.0, 0.0]))
        assert float(cl.classical_info_spectrum(pr, 0.6, "underline")) == math.inf
        assert math.isfinite(float(cl.classical_info_spectrum(pr, 0.3, "underline")))


class TestIID:
    def test_n1(self):
        pr = cl.ClassicalPair(np.array([0.6, 0.4]), np.array([0.3, 0.7]))
        a, b = cl.iid_llr_distribution(pr, 1), cl.classical_llr(pr)
        assert np.allclose(a.support, b.support) and np.allclose(a.probs, b.probs)

    def test_binomial(self):
        pr = cl.ClassicalPair(np.array([0.5, 0.5]), np.array([0.25, 0.75]))
        llr = cl.iid_llr_distribution(pr, 2)
        assert llr.support.size == 3
        assert np.allclose(llr.probs, [0.25, 0.5, 0.25], atol=1e-15)

    @pytest.mark.parametrize("method", ["types", "powering"])
    def test_moments_n64(self, method):
        pr = cl.ClassicalPair(np.array([0.5, 0.3, 0.2]), np.array([0.1, 0.6, 0.3]))
        base = cl.classical_llr(pr)
        llr = cl.iid_llr_distribution(pr, 64, method=method)
        assert abs(llr.probs.sum() - 1) <= 1e-10
        assert abs(llr.mu - 64 * base.mu) <= 1e-9
        assert abs(llr.variance - 64 * base.variance) <= 1e-8

    def test_methods_agree(self):
        pr = cl.ClassicalPair(np.array([0.5, 0.3, 0.2]), np.array([0.1, 0.6, 0.3]))
        a = cl.iid_llr_distribution(pr, 40, method="types")
        b = cl.iid_llr_distribution(pr, 40, method="powering")
        for e in (0.1, 0.5, 0.9):
            assert abs(float(cl.classical_info_spectrum(a, e)) - float(cl.classical_info_spectrum(b, e))) <= 1e-9


class TestNormal:
    def test_symmetry(self):
        assert cl.normal_quantile(0.5) == 0.0
        assert cl.normal_cdf(0.0) == 0.5

    @pytest.mark.parametrize("e", [1e-10, 1e-4, 0.05, 0.1, 0.25, 0.75, 0.9, 0.999])
    def test_quantile_against_mpmath(self, e):
        mp.mp.dps = 40
        ref = float(mp.sqrt(2) * mp.erfinv(2 * mp.mpf(e) - 1))
        assert abs(cl.normal_quantile(e) - ref) <= 1e-10 * max(1.0, abs(ref))

    def test_value(self):
        assert abs(cl.normal_quantile(0.05) - (-1.6448536269514722)) <= 1e-12

    def test_bad_argument(self):
        with pytest.raises(ValueError):
            cl.normal_quantile(0.0)


class TestTensorPower:
    def test_n1(self):
        r, s = hm.random_state(2, 1), hm.random_state(2, 2)
        a = cl.tensor_power_divergence(r, s, 1, 0.3)
        assert abs(a - dv.underline_ds(r, s, 0.3)) <= 1e-12

    def test_commuting_matches_classical(self):
        r, s = np.diag([0.8, 0.2]), np.diag([0.4, 0.6])
        dense = cl.tensor_power_divergence(r, s, 6, 0.3, dense=True)
        llr = cl.iid_llr_distribution(cl.nussbaum_szkola(r, s), 6)
        assert abs(dense - float(cl.classical_info_spectrum(llr, 0.3, "underline"))) <= 1e-9

    def test_identical(self):
        r = hm.random_state(2, 9)
        for n in (1, 3, 5):
            assert abs(cl.tensor_power_divergence(r, r, n, 0.25) - math.log2(0.25)) <= 1e-9

    def test_cap(self):
        with pytest.raises(ValueError):
            cl.tensor_power_divergence(hm.random_state(2, 1), hm.random_state(2, 2), 13, 0.3)


def test_rate_probe_aep():
    r, s = np.diag([0.8, 0.2]), np.diag([0.4, 0.6])
    d, sd = cl.relative_entropy_pair(r, s)
    pr = cl.rate_probe(r, s, (256, 1024), (0.5,))
    for j, n in enumerate((256, 1024)):
        assert abs(pr.rates[0, j] - d) <= 5 * sd / math.sqrt(n) + 0.1
