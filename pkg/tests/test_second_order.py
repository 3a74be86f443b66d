import math

import mpmath as mp
import numpy as np
import pytest

from infospec import classical as cl
from infospec import herm as hm
from infospec import second_order as so

PLUS = np.array([1.0, 1.0]) / math.sqrt(2)


def two_state():
    return 0.5 * hm.proj([1.0, 0.0]) + 0.5 * hm.proj(PLUS)


def _spectral_oracle(lam):
    mp.mp.dps = 40
    lam = [mp.mpf(x) for x in lam]
    h = -sum(x * mp.log(x, 2) for x in lam if x > 0)
    v = sum(x * (mp.log(x, 2) + h) ** 2 for x in lam if x > 0)
    return float(h), float(v)


def _q(e):
    mp.mp.dps = 40
    return float(mp.sqrt(2) * mp.erfinv(2 * mp.mpf(e) - 1))


class TestDivergenceExpansion:
    def test_identical(self):
        r = hm.random_state(3, 1)
        ex = so.divergence_expansion(r, r, 0.2)
        assert abs(ex.a) <= 1e-12 and abs(ex.b) <= 1e-6

    def test_commuting(self):
        p, q = np.array([0.75, 0.25]), np.array([0.5, 0.5])
        z = np.log2(p / q)
        d = float(p @ z)
        s = math.sqrt(float(p @ (z - d) ** 2))
        ex = so.divergence_expansion(np.diag(p), np.diag(q), 0.25)
        assert abs(ex.a - d) <= 1e-14
        assert abs(ex.b - s * _q(0.25)) <= 1e-12
        assert abs(ex.recomputed_b() - ex.b) <= 1e-15

    def test_directions(self):
        r, s = hm.random_state(2, 4), hm.random_state(2, 5)
        u = so.divergence_expansion(r, s, 0.3, "underline")
        o = so.divergence_expansion(r, s, 0.3, "overline")
        assert u.a == o.a and u.b == -o.b


class TestSourceCoding:
    def test_flat(self):
        ex = so.source_coding_expansion(np.eye(2) / 2, 0.1)
        assert abs(ex.a - 1) <= 1e-14 and abs(ex.b) <= 1e-12

    def test_two_state_source(self):
        lam = [math.cos(math.pi / 8) ** 2, math.sin(math.pi / 8) ** 2]
        h, v = _spectral_oracle(lam)
        ex = so.source_coding_expansion(two_state(), 0.1)
        assert abs(ex.a - h) <= 1e-12
        assert abs(ex.b - (-math.sqrt(v) * _q(0.1))) <= 1e-12
        assert ex.b > 0

    def test_high_error_below_entropy(self):
        ex = so.source_coding_expansion(two_state(), 0.9)
        n = np.arange(1, 5000)
        assert ex.b < 0 and np.all(ex.rate(n) < ex.a)

    def test_blind_bracket(self):
        lo, up = so.source_coding_expansion(two_state(), 0.2, "blind")
        assert lo.a == up.a and lo.b <= up.b
        assert up.quantile_arg == 0.1


class TestDenseCoding:
    def test_max_entangled(self):
        dc = so.dense_coding_expansion(hm.max_entangled(2).matrix, (2, 2), 0.1)
        assert abs(dc.coefficients.a - 2) <= 1e-12 and abs(dc.coefficients.b) <= 1e-12

    def test_product(self):
        ra, rb = hm.random_state(2, 1), hm.random_state(3, 2)
        dc = so.dense_coding_expansion(np.kron(ra, rb), (2, 3), 0.1, "identity")
        assert abs(dc.coefficients.a - (1 - hm.von_neumann_entropy(ra))) <= 1e-10

    def test_optimizer_not_worse(self):
        psi = hm.random_instances("pure_bipartite", (2, 2), 7)
        r = hm.hermitize(0.7 * psi.matrix + 0.3 * np.eye(4) / 4)
        ident = so.dense_coding_expansion(r, (2, 2), 0.1, "identity")
        opt = so.dense_coding_expansion(r, (2, 2), 0.1, "optimize", starts=2, seed=1, maxiter=300)
        assert opt.coefficients.a >= ident.coefficients.a - 1e-9
        assert opt.channel.completeness_residual() <= 1e-10


class TestEntanglement:
    def test_flat(self):
        for m in (2, 3, 5):
            for task in ("distill", "dilute"):
                ex = so.entanglement_expansion(hm.max_entangled(m), 0.2, task)
                assert abs(ex.a - math.log2(m)) <= 1e-12 and abs(ex.b) <= 1e-12

    def test_two_level(self):
        h, v = _spectral_oracle([0.7, 0.3])
        ex = so.entanglement_expansion([0.7, 0.3], 0.1, "distill")
        assert abs(ex.a - 0.8812908992306927) <= 1e-12 and abs(ex.a - h) <= 1e-12
        assert abs(ex.dispersion - math.sqrt(v)) <= 1e-12
        assert abs(ex.b - math.sqrt(v) * _q(0.1)) <= 1e-12

    def test_difference(self):
        lam = [0.6, 0.3, 0.1]
        _, v = _spectral_oracle(lam)
        for e in (0.05, 0.2, 0.4):
            d = so.entanglement_expansion(lam, e, "dilute").b - so.entanglement_expansion(lam, e, "distill").b
            assert abs(d - (-2 * math.sqrt(v) * _q(e))) <= 1e-12 and d > 0


class TestIrreversibility:
    def test_flat(self):
        g = so.irreversibility_gap(hm.max_entangled(2), 0.1, 0.2, [1, 5])
        assert g.degenerate and not np.any(g.gap_bits) and g.crossover_n is None

    def test_two_level(self):
        _, v = _spectral_oracle([0.7, 0.3])
        n = np.array([1, 4, 100])
        g = so.irreversibility_gap([0.7, 0.3], 0.05, 0.05, n)
        assert np.allclose(g.gap_bits, 2 * np.sqrt(n * v) * abs(_q(0.05)), rtol=1e-13, atol=0)
        assert g.crossover_n == 1

    def test_crossover_inverts_formula(self):
        g = so.irreversibility_gap([0.9, 0.1], 0.3, 0.4, [1])
        c = -(cl.normal_quantile(0.3) + cl.normal_quantile(0.4))
        n0 = g.crossover_n
        assert math.sqrt(n0 * g.variance) * c >= 1 > math.sqrt((n0 - 1) * g.variance) * c

    def test_range(self):
        with pytest.raises(ValueError):
            so.irreversibility_gap([0.7, 0.3], 0.6, 0.1, [1])


class TestCq:
    def test_useless(self):
        r = hm.random_state(2, 3)
        ds = so.cq_capacity(so.CqChannel((r, r)), restarts=10)
        assert abs(ds.capacity) <= 1e-12 and ds.V_min <= 1e-12 and ds.V_max <= 1e-12
        assert len(ds.maximizer_set) > 1

    def test_noiseless_bit(self):
        w = so.CqChannel((np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))
        ds = so.cq_capacity(w, restarts=5)
        assert abs(ds.capacity - 1) <= 1e-9
        assert np.allclose(ds.maximizer_set[0], [0.5, 0.5], atol=1e-6)
        ex = so.cq_expansion(w, 0.1, ds)
        assert abs(ex.a - 1) <= 1e-9 and ex.meta["degenerate_dispersion"]

    def test_half_error(self):
        w = so.CqChannel((hm.proj([1.0, 0.0]), hm.proj(PLUS)))
        assert so.cq_expansion(w, 0.5).b == 0.0

    def test_dispersion_switch(self):
        ds = so.DispersionSet(1.0, (), 0.1, 0.4, 1.0)
        assert ds.V_eps(0.49) == 0.1 and ds.V_eps(0.51) == 0.4

    def test_dual_certificate(self):
        w = so.CqChannel((hm.proj([1.0, 0.0]), hm.proj(PLUS), np.eye(2) / 2))
        ds = so.cq_capacity(w, restarts=5)
        assert ds.capacity <= ds.upper_bound <= ds.capacity + 1e-9


def test_expansion_tracks_exact_commuting():
    r, s = np.diag([0.8, 0.2]), np.diag([0.35, 0.65])
    base = cl.classical_llr(cl.nussbaum_szkola(r, s))
    for e in (0.1, 0.5, 0.9):
        ex = so.divergence_expansion(r, s, e)
        exact = float(cl.classical_info_spectrum(cl.iid_llr_distribution(base, 256), e, "underline"))
        assert abs(exact - ex.value(256)) / 16 <= 0.5
