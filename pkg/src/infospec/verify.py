"""Randomized verification suites driving every module's invariants.

Each suite draws seeded instances, evaluates one or more inequalities per
instance and records the violation magnitude ``max(0, lhs - rhs)``.  A
property fails on an instance when its violation exceeds the property's
tolerance.  Aggregation is by counts and maxima, so the report does not
depend on evaluation order; the report contains no timings, which keeps
reruns byte-identical.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import classical as cl
from . import divergences as dv
from . import herm as hm
from . import protocols as pt
from . import second_order as so

SUITES = ("core_lemmas", "ds_properties", "sandwich", "classical", "second_order", "protocols")
MAX_RECORDED_SEEDS = 20


class StrictFailure(RuntimeError):
    """Raised in strict mode at the first property violation."""


@dataclass
class PropertyTally:
    tolerance: float
    trials: int = 0
    failures: int = 0
    worst_violation: float = 0.0
    failed_seeds: list = field(default_factory=list)
    informational: bool = False

    def as_dict(self) -> dict:
        return {
            "tolerance": self.tolerance,
            "trials": self.trials,
            "failures": self.failures,
            "worst_violation": self.worst_violation,
            "failed_seeds": list(self.failed_seeds),
            "informational": self.informational,
        }


class Recorder:
    """Collects violations per property for one suite."""

    def __init__(self, suite: str, strict: bool = False):
        self.suite = suite
        self.strict = strict
        self.props: dict[str, PropertyTally] = {}
        self.info: dict[str, object] = {}

    def check(self, name: str, violation: float, seed, tol: float = 1e-9) -> bool:
        t = self.props.setdefault(name, PropertyTally(tol))
        v = float(violation)
        if math.isnan(v):
            v = math.inf
        v = max(0.0, v)
        t.trials += 1
        t.worst_violation = max(t.worst_violation, v)
        ok = v <= t.tolerance
        if not ok:
            t.failures += 1
            if len(t.failed_seeds) < MAX_RECORDED_SEEDS:
                t.failed_seeds.append(seed)
            if self.strict:
                raise StrictFailure(f"{self.suite}/{name} violated by {v:.3e} at instance {seed}")
        return ok

    def le(self, name, lhs, rhs, seed, tol=1e-9):
        """Record lhs <= rhs."""
        return self.check(name, _diff(lhs, rhs), seed, tol)

    def close(self, name, x, y, seed, tol=1e-9):
        return self.check(name, abs(x - y) if math.isfinite(x) or x != y else 0.0, seed, tol)

    def note(self, key, value):
        self.info[key] = value

    @property
    def failures(self) -> int:
        return sum(t.failures for t in self.props.values() if not t.informational)

    def as_dict(self) -> dict:
        return {
            "properties": {k: self.props[k].as_dict() for k in sorted(self.props)},
            "failures": self.failures,
            "info": {k: self.info[k] for k in sorted(self.info)},
        }


def _diff(lhs, rhs) -> float:
    if lhs == rhs:
        return 0.0
    if lhs == -math.inf or rhs == math.inf:
        return 0.0
    return lhs - rhs


def _gen(seed: int, suite: str, i: int) -> np.random.Generator:
    code = SUITES.index(suite) if suite in SUITES else 99
    return np.random.Generator(np.random.PCG64(np.random.SeedSequence([seed & (2**64 - 1), code, i])))


def _contraction(rng, d) -> np.ndarray:
    """Random 0 <= P <= 1."""
    m = hm.random_state(d, rng)
    return m / np.max(np.linalg.eigvalsh(m))


@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 7
    trials: int | None = None
    dims: tuple = (2, 3, 4)
    eps_grid: tuple = (0.1, 0.25, 0.5, 0.75, 0.9)

    def count(self, default: int) -> int:
        return default if self.trials is None else int(self.trials)


# --------------------------------------------------------------------------
# core lemmas


def run_core_lemmas(cfg: SuiteConfig, strict: bool = False) -> Recorder:
    rec = Recorder("core_lemmas", strict)
    n = cfg.count(500)
    dims = cfg.dims
    for i in range(n):
        rng = _gen(cfg.seed, "core_lemmas", i)
        d = dims[i % len(dims)]
        a = hm.random_instances("positive_operator", d, rng).matrix
        b = hm.random_instances("positive_operator", d, rng).matrix
        p = _contraction(rng, d)
        diff = a - b
        rhs = float(np.real(np.trace(p @ diff)))
        for mode in (">=", ">"):
            q = hm.compare_projector(a, b, mode)
            rec.le(f"projector_optimality[{mode}]", rhs, float(np.real(np.trace(q @ diff))), i, 1e-10)

        w = np.linalg.eigvalsh(diff)
        lam = hm.random_instances("cptp_channel", (d, d), rng)
        w2 = np.linalg.eigvalsh(hm.hermitize(lam(a) - lam(b)))
        rec.le("positive_part_contraction", float(np.sum(w2[w2 > 0])), float(np.sum(w[w > 0])), i, 1e-10)

        rho = hm.random_instances("state", d, rng).matrix
        sig = hm.random_instances("positive_operator", d, rng).matrix
        g = float(rng.uniform(-3, 3))
        q = hm.compare_projector(rho, 2.0**(-g) * sig, ">=")
        val = float(np.real(np.trace(q @ sig)))
        rec.check("projector_dimension_bound", val / 2.0**g - 1.0, i, 1e-10)

        r1 = hm.random_instances("state", d, rng).matrix
        r2 = hm.random_instances("state", d, rng).matrix
        ds = hm.distances(r1, r2)
        rec.le("trace_le_purified", ds.trace, ds.purified, i, 1e-10)
        rec.le("purified_le_sqrt2trace", ds.purified, math.sqrt(2 * ds.trace), i, 1e-10)

        db = dims[(i + 1) % len(dims)]
        psi = hm.random_instances("pure_bipartite", (d, db), rng)
        ea = np.sort(np.linalg.eigvalsh(psi.reduced("A")))[::-1]
        eb = np.sort(np.linalg.eigvalsh(psi.reduced("B")))[::-1]
        k = min(ea.size, eb.size)
        resid = max(float(np.max(np.abs(ea[:k] - eb[:k]))),
                    float(np.max(np.abs(ea[k:]), initial=0.0)), float(np.max(np.abs(eb[k:]), initial=0.0)))
        rec.check("marginal_spectra_agree", resid, i, 1e-10)
    return rec


# --------------------------------------------------------------------------
# information-spectrum divergence properties


def run_ds_properties(cfg: SuiteConfig, strict: bool = False) -> Recorder:
    rec = Recorder("ds_properties", strict)
    n = cfg.count(300)
    eg = tuple(sorted(cfg.eps_grid))
    idx = 0
    for d in cfg.dims:
        for j in range(n):
            i = idx
            idx += 1
            rng = _gen(cfg.seed, "ds_properties", i)
            rho = hm.random_instances("state", d, rng).matrix
            sig = hm.random_instances("positive_operator", d, rng).matrix
            lam = hm.random_instances("cptp_channel", (d, d), rng)
            bump = hm.random_instances("positive_operator", d, rng).matrix * 0.5
            tau = hm.random_instances("state", d, rng).matrix
            t = float(rng.uniform(0.01, 0.1))
            rho_p = (1 - t) * rho + t * tau
            delta = hm.distances(rho, rho_p).trace
            pair = dv._Pair(rho, sig)
            pair_l = dv._Pair(lam(rho), lam(sig))
            pair_b = dv._Pair(rho, sig + bump)
            under = {e: dv.info_spectrum_divergence(pair, None, e, "underline") for e in eg}
            over = {e: dv.info_spectrum_divergence(pair, None, e, "overline") for e in eg}
            for k, e in enumerate(eg):
                u = under[e].gamma
                o_dual = over[1 - e].gamma if (1 - e) in over else dv.overline_ds(pair, None, 1 - e)
                rec.close("duality", u, o_dual, i)
                rec.le("underline_le_th", u, dv.ds_tomamichel_hayashi(pair, None, e), i)
                rec.le("dpi_underline", dv.underline_ds(pair_l, None, e), u, i)
                rec.le("dpi_overline", dv.overline_ds(pair_l, None, e), over[e].gamma, i)
                for e2 in eg[k + 1:]:
                    rec.le("eps_monotone_underline", u, under[e2].gamma, i)
                    rec.le("eps_monotone_overline", over[e2].gamma, over[e].gamma, i)
                rec.le("operator_antimonotone", dv.underline_ds(pair_b, None, e), u, i)
                for c in (0.5, 2.0, 7.0):
                    rec.close("scaling", dv.underline_ds(rho, c * sig, e), u - math.log2(c), i)
                if e + delta < 1:
                    rec.le("perturbation", dv.underline_ds(rho_p, sig, e),
                           dv.underline_ds(pair, None, e + delta), i)
                for res in (under[e], over[e]):
                    rec.close("attainment", res.achieved_gap, res.target, i)
            if j < max(1, n // 3):
                db = cfg.dims[(j + 1) % len(cfg.dims)]
                psi = hm.random_instances("pure_bipartite", (d, db), rng)
                locc = hm.random_instances("lo_popescu_locc", (d, db), rng)
                sig_ab = hm.hermitize(locc(psi.matrix))
                for e in eg:
                    h_psi = dv.conditional_spectrum(psi.matrix, (d, db), e, "overline")
                    h_sig = dv.conditional_spectrum(sig_ab, (d, db), e, "overline")
                    rec.le("locc_conditional_entropy", h_psi, h_sig, i)
    return rec


# --------------------------------------------------------------------------
# sandwich bounds


SANDWICH_DELTA = 1e-6


def run_sandwich(cfg: SuiteConfig, strict: bool = False) -> Recorder:
    rec = Recorder("sandwich", strict)
    n = cfg.count(300)
    eg = tuple(sorted(cfg.eps_grid))
    for i in range(n):
        d = cfg.dims[i % len(cfg.dims)]
        rng = _gen(cfg.seed, "sandwich", i)
        rho = hm.random_instances("state", d, rng).matrix
        sig = hm.random_instances("positive_operator", d, rng).matrix
        pair = dv._Pair(rho, sig)
        dh = {}

        def dh_at(e):
            if e not in dh:
                dh[e] = dv.hypothesis_testing_divergence(rho, sig, e).value
            return dh[e]

        for e in eg:
            u = dv.underline_ds(pair, None, e)
            for frac in (0.5, 0.25):
                dl = frac * e
                rec.le("dh_lower_underline", dh_at(e - dl) + math.log2(dl), u, i)
            rec.le("underline_le_dh", u, dh_at(e), i)
            eta = e / 2
            o1 = dv.overline_ds(pair, None, 1 - e)
            rec.le("dh_lower_overline", dh_at(e - eta) + math.log2(eta), o1, i)
            rec.le("overline_le_dh", o1, dh_at(e) + SANDWICH_DELTA, i)
            o = dv.overline_ds(pair, None, e)
            md = dv.max_divergence(rho, sig, e)
            rec.le("overline_le_dmax_upper", o, md.upper, i)
            rec.le("dmax_bounds_ordered", md.lower, md.upper, i)
            if 8 * e < 1:
                wt = dv.smoothing_witness(rho, sig, o + dv.WITNESS_SHIFT)
                rec.check("witness_certificate",
                          max(wt.purified_distance - math.sqrt(8 * e), wt.dominance_residual), i)
    return rec


# --------------------------------------------------------------------------
# classical spectrum


def commuting_qubit_pair(seed: int):
    """Diagonal qubit pair: sorted spectra of two seeded random states."""
    rng = np.random.Generator(np.random.PCG64(seed))
    p = np.sort(np.linalg.eigvalsh(hm.random_state(2, rng)))[::-1]
    q = np.sort(np.linalg.eigvalsh(hm.random_state(2, rng)))[::-1]
    return np.diag(p), np.diag(q)


def second_order_residuals(rho, sigma, eps_grid, n_grid, direction="th"):
    """Return residuals r[eps][n] = D_s(P^n||Q^n) - n mu - sqrt(n) s Phi^{-1}(eps)."""
    base = cl.classical_llr(cl.nussbaum_szkola(rho, sigma))
    mu, s = base.mu, base.s
    out = {e: {} for e in eps_grid}
    for n in n_grid:
        llr = cl.iid_llr_distribution(base, n)
        for e in eps_grid:
            exact = float(cl.classical_info_spectrum(llr, e, direction))
            out[e][n] = exact - n * mu - math.sqrt(n) * s * cl.normal_quantile(e)
    return out, mu, s


def run_classical(cfg: SuiteConfig, strict: bool = False) -> Recorder:
    rec = Recorder("classical", strict)
    n = cfg.count(300)
    for i in range(n):
        rng = _gen(cfg.seed, "classical", i)
        d = cfg.dims[i % len(cfg.dims)]
        rho = hm.random_instances("state", d, rng).matrix
        sig = hm.random_instances("state", d, rng).matrix
        pr = cl.nussbaum_szkola(rho, sig)
        dc, vc = cl.classical_stats(pr)
        st = dv.relative_entropy_stats(rho, sig)
        rec.close("moment_D", dc, st.D, i, 1e-10)
        rec.close("moment_V", vc, st.V, i, 1e-10)
        if i < max(1, n // 10):
            big = cl.nussbaum_szkola(np.kron(rho, rho), np.kron(sig, sig))
            prod = pr.tensor(pr)
            rec.check("product_form", _pair_distance(big, prod), i, 1e-12)

    n_grid = tuple(2**k for k in range(4, 13))
    probe_n = (256, 1024, 4096)
    n_pairs = max(1, min(10, n // 30))
    for j in range(n_pairs):
        rho, sig = commuting_qubit_pair(cfg.seed * 1000 + j)
        res, mu, s = second_order_residuals(rho, sig, (0.1, 0.5, 0.9), n_grid)
        for e, r in res.items():
            vals = np.array([abs(r[m]) for m in n_grid])
            c_fit = 2.0 * float(np.max(vals[:3])) + 1.0
            rec.check("second_order_residual_bounded", float(np.max(vals[3:])) - c_fit, j, 0.0)
            scaled = vals / np.sqrt(np.array(n_grid, dtype=float))
            rec.check("second_order_scaled_residual_shrinks", scaled[-1] - scaled[0], j, 0.0)
        base = cl.classical_llr(cl.nussbaum_szkola(rho, sig))
        for m in probe_n:
            llr = cl.iid_llr_distribution(base, m)
            env = 5 * s / math.sqrt(m) + 0.1
            for direction in ("underline", "overline"):
                rate = float(cl.classical_info_spectrum(llr, 0.5, direction)) / m
                rec.check(f"aep_{direction}", abs(rate - mu) - env, j, 0.0)
    return rec


def _grouped_masses(x: cl.ClassicalLLR, y: cl.ClassicalLLR, tol: float = 1e-9) -> float:
    pts = np.concatenate([x.support, y.support])
    src = np.concatenate([np.zeros(x.support.size), np.ones(y.support.size)])
    mass = np.concatenate([x.probs, y.probs])
    order = np.argsort(pts, kind="stable")
    pts, src, mass = pts[order], src[order], mass[order]
    cut = np.concatenate([[0], np.nonzero(np.diff(pts) > tol * np.maximum(1.0, np.abs(pts[1:])))[0] + 1])
    mx = np.add.reduceat(np.where(src == 0, mass, 0.0), cut) if pts.size else np.zeros(0)
    my = np.add.reduceat(np.where(src == 1, mass, 0.0), cut) if pts.size else np.zeros(0)
    return float(np.max(np.abs(mx - my), initial=0.0)) + abs(x.p_inf - y.p_inf)


def _pair_distance(a: cl.ClassicalPair, b: cl.ClassicalPair) -> float:
    """Distance between the grouped LLR laws under P and under Q.

    The raw atom lists depend on the eigenbasis chosen inside degenerate
    eigenspaces (rho (x) rho always has them), the grouped laws do not.
    """
    worst = 0.0
    for x, y in ((a, b), (cl.ClassicalPair(a.Q / a.Q.sum(), a.P), cl.ClassicalPair(b.Q / b.Q.sum(), b.P))):
        worst = max(worst, _grouped_masses(cl.classical_llr(x), cl.classical_llr(y)))
    return worst


# --------------------------------------------------------------------------
# second order


def run_second_order(cfg: SuiteConfig, strict: bool = False) -> Recorder:
    rec = Recorder("second_order", strict)
    n = cfg.count(100)
    for i in range(n):
        rng = _gen(cfg.seed, "second_order", i)
        d = cfg.dims[i % len(cfg.dims)]
        rho = hm.random_instances("state", d, rng).matrix
        sig = hm.random_instances("positive_operator", d, rng).matrix
        lam = np.sort(rng.dirichlet(np.ones(d + 1)))[::-1]
        for e in (0.05, 0.1, 0.25, 0.4):
            pairs = [
                (so.divergence_expansion(rho, sig, e), so.divergence_expansion(rho, sig, 1 - e)),
                (so.source_coding_expansion(rho, e), so.source_coding_expansion(rho, 1 - e)),
                (so.source_coding_expansion(rho, e, "blind")[0], so.source_coding_expansion(rho, 1 - e, "blind")[0]),
                (so.entanglement_expansion(lam, e, "distill"), so.entanglement_expansion(lam, 1 - e, "distill")),
                (so.entanglement_expansion(lam, e, "dilute"), so.entanglement_expansion(lam, 1 - e, "dilute")),
            ]
            for x, y in pairs:
                rec.check("sign_flip", abs(x.b + y.b), i, 1e-12)
            lo, up = so.source_coding_expansion(rho, e, "blind")
            rec.le("blind_bracket_ordered", lo.b, up.b, i, 1e-12)
            lo2, up2 = so.source_coding_expansion(rho, 1 - e, "blind")
            rec.le("blind_bracket_ordered", lo2.b, up2.b, i, 1e-12)
        for e in (0.05, 0.1, 0.25):
            for dl in (0.05, 0.1, 0.25):
                g = so.irreversibility_gap(lam, e, dl, [1, 10, 100])
                if not g.degenerate:
                    gmin = float(np.min(g.gap_bits))
                    rec.check("gap_positive", 0.0 if gmin > 0 else 1.0 - gmin, i, 0.0)
        # dilution converse consistency at n = 1
        for dl in (0.1, 0.25):
            m_min = pt.minimal_dilution_rank(lam, dl)
            br = pt.one_shot_bounds("dilute", lam, dl, dv.EpsilonSpec(dl, eta=dl / 2, delta=1e-6))
            rec.le("dilution_converse_consistency", br.lower, math.log2(m_min), i)

    # expansion against exact values on commuting pairs
    n_pairs = max(1, min(10, n // 10))
    for j in range(n_pairs):
        rho, sig = commuting_qubit_pair(cfg.seed * 1000 + 500 + j)
        base = cl.classical_llr(cl.nussbaum_szkola(rho, sig))
        for e in (0.1, 0.5, 0.9):
            ex = so.divergence_expansion(rho, sig, e)
            sc = []
            for m in (256, 1024, 4096):
                exact = float(cl.classical_info_spectrum(cl.iid_llr_distribution(base, m), e, "underline"))
                sc.append(abs(exact - ex.value(m)) / math.sqrt(m))
            rec.check("expansion_vs_exact_256", sc[0] - 0.5, j, 0.0)
            rec.check("expansion_vs_exact_decreasing", max(sc[1] - sc[0], sc[2] - sc[1]), j, 0.0)

    # dense coding: optimizer never worse than the identity anchor
    for j in range(max(1, n // 50)):
        rng = _gen(cfg.seed, "second_order", 10_000 + j)
        psi = hm.random_instances("pure_bipartite", (2, 2), rng)
        r_ab = hm.hermitize(0.8 * psi.matrix + 0.2 * np.eye(4) / 4)
        ident = so.dense_coding_expansion(r_ab, (2, 2), 0.1, "identity")
        opt = so.dense_coding_expansion(r_ab, (2, 2), 0.1, "optimize", starts=1, seed=j, maxiter=200)
        rec.le("dense_optimizer_ge_identity", ident.coefficients.a, opt.coefficients.a, j, 1e-12)

    # zero-dispersion anchors
    for m in (2, 3, 4):
        phi = hm.max_entangled(m)
        lam_f = np.full(m, 1.0 / m)
        for e in (0.1, 0.25):
            rec.check("flat_b_distill", abs(so.entanglement_expansion(lam_f, e, "distill").b), m, 1e-12)
            rec.check("flat_b_dilute", abs(so.entanglement_expansion(lam_f, e, "dilute").b), m, 1e-12)
            dc = so.dense_coding_expansion(phi.matrix, (m, m), e, "identity")
            rec.check("flat_b_dense", abs(dc.coefficients.b), m, 1e-12)
        g = so.irreversibility_gap(lam_f, 0.1, 0.1, [1, 10, 100])
        rec.check("flat_gap_degenerate", 0.0 if (g.degenerate and not np.any(g.gap_bits)) else 1.0, m, 0.0)

    w_bit = so.CqChannel((np.diag([1.0, 0.0]), np.diag([0.0, 1.0])))
    rec.close("cq_noiseless_bit", so.cq_capacity(w_bit, restarts=5).capacity, 1.0, 0, 1e-9)
    return rec


# --------------------------------------------------------------------------
# protocols


def run_protocols(cfg: SuiteConfig, strict: bool = False) -> Recorder:
    rec = Recorder("protocols", strict)
    n = cfg.count(200)
    for i in range(n):
        rng = _gen(cfg.seed, "protocols", i)
        d = cfg.dims[i % len(cfg.dims)]
        ens = hm.random_instances("ensemble", d, rng)
        rho = hm.random_instances("state", d, rng).matrix
        for e in (0.1, 0.25, 0.5):
            sl = dv.EpsilonSpec(e, eta=e / 2)
            vc = pt.visible_code(ens, e)
            rec.le("visible_fidelity", 1 - e, vc.value, i)
            rec.le("ky_fan", vc.value, vc.certificates["ky_fan"], i, 1e-10)
            br = pt.one_shot_bounds("source_visible", ens, e, sl)
            rec.le("visible_logM_ge_lower", br.lower, vc.log_m, i)
            rec.le("visible_logM_le_upper", vc.log_m, br.upper, i)
            bc = pt.blind_code(rho, e)
            rec.le("blind_fidelity", 1 - e, bc.value, i)
            rec.le("blind_ky_fan", bc.value, bc.certificates["ky_fan"], i, 1e-10)
            bb = pt.one_shot_bounds("source_blind", rho, e, sl)
            rec.le("blind_logM_ge_lower", bb.lower, bc.log_m, i)
            rec.le("blind_logM_le_upper", bc.log_m, bb.upper, i)

        # concentration and dilution on Schmidt vectors of length 8 or 16
        k = (8, 16)[i % 2]
        lam = np.sort(rng.dirichlet(np.ones(k)))[::-1]
        tally = rec.info.setdefault("concentration_runs", {"attempted": 0, "successful": 0})
        for e in (0.25, 0.5):
            eta = e / 2
            tally["attempted"] += 1
            try:
                cr = pt.concentrate(lam, e, eta)
            except pt.ProtocolFailure:
                cr = None
            if cr is not None:
                tally["successful"] += 1
                rec.le("concentration_failure_prob", cr.certificates["p_fail"], e, i)
                rec.check("concentration_majorization", 0.0 if cr.certificates["majorization"].valid else 1.0, i, 0.0)
                rec.le("concentration_logM_ge_lower", cr.certificates["theorem_lower"], cr.log_m, i)
                ub = pt.one_shot_bounds("distill", lam, e, dv.EpsilonSpec(e, eta=eta, delta=1e-6))
                rec.le("concentration_logM_le_upper", cr.log_m, ub.upper, i)
        for e in (0.1, 0.25, 0.5):
            eta = e / 2
            dr = pt.dilute_at(lam, e)
            rec.close("dilution_top_sum", dr.value, min(1.0, float(np.sum(np.sort(lam)[::-1][:dr.M]))), i, 1e-15)
            rec.le("dilution_fidelity", 1 - e, dr.value, i)
            db = pt.one_shot_bounds("dilute", lam, e, dv.EpsilonSpec(e, eta=eta, delta=1e-6))
            rec.le("dilution_logM_ge_lower", db.lower, dr.log_m, i)
            rec.le("dilution_logM_le_upper", dr.log_m, db.upper, i)

    for d in (2, 3, 4, 5):
        ops = pt.weyl_set(d)
        u_res = max(float(np.max(np.abs(u @ u.conj().T - np.eye(d)))) for u in ops.values())
        rec.check("weyl_unitary", u_res, d, 1e-12)
        for j in range(20):
            rng = _gen(cfg.seed, "protocols", 100_000 + 100 * d + j)
            om = hm.random_instances("state", d, rng).matrix
            tw = pt.weyl_twirl(om, ops)
            rec.check("weyl_twirl", float(np.max(np.abs(tw - d * np.eye(d)))), (d, j), 1e-12)

    # heuristic decoder simulation, informational only
    rng = _gen(cfg.seed, "protocols", 200_000)
    psi = hm.random_instances("pure_bipartite", (2, 2), rng)
    sims = {}
    for m in (2, 3, 4):
        r = pt.simulate_dense_coding_pgm(psi.matrix, (2, 2), m, trials=20, seed=cfg.seed + m)
        sims[str(m)] = r["mean_error"]
    rec.note("pgm_dense_coding_mean_error", sims)
    return rec


RUNNERS = {
    "core_lemmas": run_core_lemmas,
    "ds_properties": run_ds_properties,
    "sandwich": run_sandwich,
    "classical": run_classical,
    "second_order": run_second_order,
    "protocols": run_protocols,
}


def run_suites(names, cfg: SuiteConfig, strict: bool = False) -> dict:
    out = {}
    for name in names:
        out[name] = RUNNERS[name](cfg, strict).as_dict()
    return out
