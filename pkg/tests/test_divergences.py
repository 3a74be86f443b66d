import math

import mpmath as mp
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from infospec import divergences as dv
from infospec import herm as hm

KET0 = np.diag([1.0, 0.0])
HALF = np.eye(2) / 2
PLUS = np.array([1.0, 1.0]) / math.sqrt(2)


def two_state():
    return 0.5 * hm.proj([1.0, 0.0]) + 0.5 * hm.proj(PLUS)


def pair(seed, d=3):
    return hm.random_state(d, seed), hm.random_instances("positive_operator", d, seed + 1).matrix


class TestTraceGap:
    def test_identical(self):
        r = hm.random_state(2, 1)
        assert abs(dv.trace_gap(r, r, -1) - 0.5) <= 1e-14

    def test_identity_reference(self):
        assert dv.trace_gap(hm.random_state(2, 3), np.eye(2), 0.0) == 0.0

    def test_commuting(self):
        assert abs(dv.trace_gap(np.diag([0.75, 0.25]), HALF, 0.0) - 0.25) <= 1e-15

    def test_strictly_decreasing(self):
        r, s = pair(5)
        g = np.linspace(-4, 2, 50)
        vals = [dv.trace_gap(r, s, x) for x in g]
        assert all(b < a for a, b in zip(vals, vals[1:]) if a > 0)


class TestInfoSpectrum:
    def test_identical_underline(self):
        r = hm.random_state(3, 2)
        assert abs(dv.underline_ds(r, r, 0.25) - (-2)) <= 1e-10

    def test_identical_overline(self):
        r = hm.random_state(3, 2)
        assert abs(dv.overline_ds(r, r, 0.75) - (-2)) <= 1e-10

    def test_pure_vs_mixed(self):
        assert abs(dv.underline_ds(KET0, HALF, 0.1) - (1 + math.log2(0.1))) <= 1e-10

    def test_certificate_fields(self):
        r, s = pair(8)
        res = dv.info_spectrum_divergence(r, s, 0.3, "underline")
        assert res.attained
        assert abs(res.achieved_gap - 0.7) <= 1e-9
        assert res.bracket[0] <= res.gamma <= res.bracket[1]

    def test_support_violation_is_infinite(self):
        assert dv.underline_ds(KET0, np.diag([0.0, 1.0]), 0.3) == math.inf

    def test_eps_range(self):
        with pytest.raises(ValueError):
            dv.underline_ds(KET0, HALF, 1.0)

    @settings(max_examples=40, deadline=None, derandomize=True)
    @given(st.integers(0, 2**31), st.sampled_from([0.1, 0.3, 0.5, 0.7, 0.9]))
    def test_duality(self, seed, eps):
        r, s = pair(seed)
        assert abs(dv.underline_ds(r, s, eps) - dv.overline_ds(r, s, 1 - eps)) <= 1e-9

    def test_bisection_oracle(self):
        r, s = pair(21)
        lo, hi = -20.0, 20.0
        for _ in range(200):
            mid = 0.5 * (lo + hi)
            lo, hi = (mid, hi) if dv.trace_gap(r, s, mid) >= 0.6 else (lo, mid)
        assert abs(dv.underline_ds(r, s, 0.4) - lo) <= 1e-9


class TestTomamichelHayashi:
    def test_identical_left_limit(self):
        r = hm.random_state(2, 4)
        v = dv.ds_tomamichel_hayashi(r, r, 0.3)
        assert -1e-10 < v <= 0

    def test_step_function(self):
        v = dv.ds_tomamichel_hayashi(np.diag([0.75, 0.25]), np.eye(2), 0.3)
        assert -1e-10 < v - math.log2(0.75) <= 0

    def test_single_breakpoint(self):
        v = dv.ds_tomamichel_hayashi(KET0, HALF, 0.5)
        assert -1e-10 < v - 1 <= 0

    def test_dominates_underline(self):
        for seed in range(10):
            r, s = pair(seed)
            for e in (0.1, 0.5, 0.9):
                assert dv.underline_ds(r, s, e) <= dv.ds_tomamichel_hayashi(r, s, e) + 1e-9


def _np_oracle(p, q, eps):
    """Classical Neyman-Pearson: randomized likelihood-ratio threshold test."""
    order = np.argsort(-(p / q))
    need, cost = 1 - eps, 0.0
    for i in order:
        take = min(1.0, need / p[i]) if p[i] > 0 else 0.0
        cost += take * q[i]
        need -= take * p[i]
        if need <= 1e-15:
            break
    return -math.log2(cost)


def _sdp_oracle(rho, sigma, eps):
    cp = pytest.importorskip("cvxpy")
    d = rho.shape[0]
    Q = cp.Variable((d, d), hermitian=True)
    cons = [Q >> 0, np.eye(d) - Q >> 0, cp.real(cp.trace(Q @ rho)) >= 1 - eps]
    prob = cp.Problem(cp.Minimize(cp.real(cp.trace(Q @ sigma))), cons)
    prob.solve(solver="CLARABEL")
    return -math.log2(prob.value)


class TestHypothesisTesting:
    def test_identical(self):
        r = hm.random_state(3, 1)
        assert abs(dv.dh(r, r, 0.5) - 1.0) <= 1e-10

    def test_pure_vs_mixed(self):
        h = dv.hypothesis_testing_divergence(KET0, HALF, 0.2)
        assert abs(h.value - (1 - math.log2(0.8))) <= 1e-10
        assert abs(h.type1 - 0.8) <= 1e-12
        val, test = h
        assert np.min(np.linalg.eigvalsh(test)) >= -1e-12 and np.max(np.linalg.eigvalsh(test)) <= 1 + 1e-12

    def test_commuting_matches_neyman_pearson(self):
        for seed in range(20):
            rng = np.random.Generator(np.random.PCG64(seed))
            p, q = rng.dirichlet(np.ones(4)), rng.dirichlet(np.ones(4))
            for e in (0.05, 0.3, 0.7):
                assert abs(dv.dh(np.diag(p), np.diag(q), e) - _np_oracle(p, q, e)) <= 1e-9

    @pytest.mark.parametrize("seed", range(6))
    def test_noncommuting_matches_sdp(self, seed):
        r, s = pair(100 + seed, 3)
        for e in (0.1, 0.5):
            h = dv.hypothesis_testing_divergence(r, s, e)
            ref = _sdp_oracle(r, s, e)
            assert abs(h.value - ref) <= 1e-6
            assert h.dual <= h.type2 * (1 + 1e-9)

    def test_kernel_mass_gives_infinity(self):
        assert dv.dh(KET0, np.diag([0.0, 1.0]), 0.1) == math.inf


class TestMaxDivergence:
    def test_identical(self):
        r = hm.random_state(2, 1)
        m = dv.max_divergence(r, r, 0.0)
        assert abs(m.lower) <= 1e-10 and abs(m.upper) <= 1e-10

    def test_pure_vs_mixed(self):
        assert abs(dv.max_divergence(KET0, HALF, 0.0).upper - 1.0) <= 1e-12

    def test_smoothed_certificates(self):
        r, s = hm.random_state(2, 30), hm.random_state(2, 31)
        m = dv.max_divergence(r, s, 0.3)
        assert m.lower <= m.upper <= dv.max_divergence_unsmoothed(r, s) + 1e-12
        assert m.purified_distance <= 0.3 + 1e-12
        assert np.min(np.linalg.eigvalsh(2.0**m.upper * s - m.witness)) >= -1e-9

    def test_overline_below_smoothed_upper(self):
        for seed in range(5):
            r, s = pair(40 + seed, 2)
            for e in (0.1, 0.3):
                assert dv.overline_ds(r, s, e) <= dv.max_divergence(r, s, e).upper + 1e-9

    def test_witness_at_overline_level(self):
        r, s = pair(50, 3)
        e = 0.05
        wt = dv.smoothing_witness(r, s, dv.overline_ds(r, s, e) + dv.WITNESS_SHIFT)
        assert wt.purified_distance <= math.sqrt(8 * e)
        assert wt.dominance_residual <= 1e-10


class TestRelativeEntropy:
    def test_identical(self):
        r = hm.random_state(3, 4)
        st_ = dv.relative_entropy_stats(r, r)
        assert abs(st_.D) <= 1e-12 and abs(st_.V) <= 1e-12 and st_.s <= 1e-6

    def test_scalar(self):
        st_ = dv.relative_entropy_stats(np.diag([0.75, 0.25]), HALF)
        assert abs(st_.D - (0.75 * math.log2(1.5) + 0.25 * math.log2(0.5))) <= 1e-14

    def test_two_state_against_identity(self):
        mp.mp.dps = 30
        lam = [mp.cos(mp.pi / 8) ** 2, mp.sin(mp.pi / 8) ** 2]
        s = -sum(x * mp.log(x, 2) for x in lam)
        v = sum(x * mp.log(x, 2) ** 2 for x in lam) - s**2
        st_ = dv.relative_entropy_stats(two_state(), np.eye(2))
        assert abs(st_.D + float(s)) <= 1e-12
        assert abs(st_.V - float(v)) <= 1e-12

    def test_infinite(self):
        assert not dv.relative_entropy_stats(KET0, np.diag([0.0, 1.0])).finite


class TestEntropies:
    def test_maximally_mixed(self):
        for e in (0.1, 0.5, 0.8):
            assert abs(dv.entropy_spectrum(HALF, e, "overline") - (1 - math.log2(e))) <= 1e-10
            assert abs(dv.entropy_spectrum(HALF, e, "underline") - (1 - math.log2(1 - e))) <= 1e-10

    def test_conditional_max_entangled(self):
        phi = hm.max_entangled(2)
        for e in (0.1, 0.3):
            v = dv.conditional_spectrum(phi.matrix, (2, 2), e, "overline")
            assert abs(v - (-1 - math.log2(e))) <= 1e-9

    def test_mutual_product(self):
        ra, rb = hm.random_state(2, 1), hm.random_state(2, 2)
        r = dv.mutual_info_spectrum(np.kron(ra, rb), (2, 2), 0.5, "underline", starts=3)
        assert abs(r.anchor_value - (-1)) <= 1e-9
        assert r.value <= r.anchor_value + 1e-12 and r.value <= 0
        assert r.upper_envelope

    def test_derived_dispatch(self):
        phi = hm.max_entangled(2)
        a = dv.derived_entropy("conditional", "overline", phi.matrix, 0.2, dims=(2, 2))
        assert a == dv.conditional_spectrum(phi.matrix, (2, 2), 0.2, "overline")

    def test_locc_inequality(self):
        for seed in range(10):
            psi = hm.random_instances("pure_bipartite", (2, 3), seed)
            locc = hm.random_instances("lo_popescu_locc", (2, 3), seed + 1000)
            sig = hm.hermitize(locc(psi.matrix))
            for e in (0.2, 0.6):
                assert dv.conditional_spectrum(psi.matrix, (2, 3), e, "overline") <= \
                    dv.conditional_spectrum(sig, (2, 3), e, "overline") + 1e-9
