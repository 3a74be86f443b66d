"""Information-spectrum relative entropies and their neighbours.

All logarithms are base 2.  The central object is the trace gap

    T(gamma) = tr(rho - 2**gamma * sigma)_+

which is continuous and non-increasing in gamma, strictly decreasing while it
exceeds the mass of rho that sigma cannot dominate.  The underline divergence
is the point where T crosses 1 - eps, the overline divergence the point where
it crosses eps.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .herm import (
    PSD_TOL,
    TIE_TOL,
    as_matrix,
    density,
    distances,
    hermitize,
    partial_trace,
    psd_power,
)

GAMMA_TOL = 1e-10
ATTAIN_TOL = 1e-9
WITNESS_SHIFT = 1e-6


@dataclass(frozen=True)
class EpsilonSpec:
    """Error parameter with optional slacks eta, delta, c."""

    epsilon: float
    eta: float | None = None
    delta: float | None = None
    c: float | None = None

    def __post_init__(self):
        if not 0 < self.epsilon < 1:
            raise ValueError(f"epsilon must lie in (0, 1), got {self.epsilon!r}")
        for name in ("eta", "delta", "c"):
            v = getattr(self, name)
            if v is not None and not v > 0:
                raise ValueError(f"{name} must be positive, got {v!r}")


def _eps(eps) -> float:
    if isinstance(eps, EpsilonSpec):
        return eps.epsilon
    e = float(eps)
    if not 0 < e < 1:
        raise ValueError(f"epsilon must lie in (0, 1), got {eps!r}")
    return e


@dataclass(frozen=True)
class DivergenceResult:
    """A divergence value with its attainment certificate.

    ``achieved_gap`` is T(gamma), ``bracket`` an interval [lo, hi] known to
    contain the exact crossing point.
    """

    gamma: float
    achieved_gap: float
    bracket: tuple
    tol: float
    direction: str
    epsilon: float
    target: float
    note: str = ""

    def __float__(self):
        return float(self.gamma)

    @property
    def attained(self) -> bool:
        if not math.isfinite(self.gamma):
            return True
        return abs(self.achieved_gap - self.target) <= ATTAIN_TOL


@dataclass(frozen=True)
class RelEntStats:
    """Relative entropy D, information variance V and s = sqrt(V), in bits."""

    D: float
    V: float
    s: float
    finite: bool = True


class _Pair:
    """Cached spectral data of (rho, sigma) used by the gamma searches."""

    def __init__(self, rho, sigma):
        self.rho = hermitize(rho)
        self.sigma = hermitize(sigma)
        if self.rho.shape != self.sigma.shape:
            raise ValueError(f"dimension mismatch {self.rho.shape} vs {self.sigma.shape}")
        self.tr_rho = float(np.real(np.trace(self.rho)))
        ws, vs = np.linalg.eigh(self.sigma)
        scale = max(1.0, float(np.max(np.abs(ws))))
        if ws[0] < -PSD_TOL * scale:
            raise ValueError("sigma is not positive semidefinite")
        supp = ws > PSD_TOL * scale
        if not np.any(supp):
            raise ValueError("sigma has empty support")
        self.tr_sigma = float(np.sum(ws[supp]))
        ker = vs[:, ~supp]
        self.full_rank = bool(np.all(supp))
        # rho-mass that no multiple of sigma can dominate
        self.m_out = float(np.real(np.trace(ker.conj().T @ self.rho @ ker))) if ker.size else 0.0
        vsupp = vs[:, supp]
        isq = vsupp / np.sqrt(ws[supp])
        pencil = isq.conj().T @ self.rho @ isq
        self.pencil = np.linalg.eigvalsh(0.5 * (pencil + pencil.conj().T))
        self.ker = ker

    def gap(self, gamma: float) -> float:
        w = np.linalg.eigvalsh(self.rho - 2.0**gamma * self.sigma)
        return float(np.sum(w[w > 0]))

    def upper_start(self) -> float:
        top = float(self.pencil[-1]) if self.pencil.size else 0.0
        return math.log2(top) + 1 if top > 0 else 0.0

    def lower_start(self, mass: float) -> float:
        """A gamma with T(gamma) >= tr(rho) - mass."""
        mass = max(mass, 1e-300)
        return math.log2(mass / self.tr_sigma) - 1


def trace_gap(rho, sigma, gamma: float) -> float:
    """T(gamma) = tr(rho - 2^gamma sigma)_+.

    Examples
    --------
    >>> trace_gap(np.diag([0.75, 0.25]), np.eye(2) / 2, 0.0)
    0.25
    """
    a, b = hermitize(rho), hermitize(sigma)
    if a.shape != b.shape:
        raise ValueError("dimension mismatch")
    w = np.linalg.eigvalsh(a - 2.0**gamma * b)
    return float(np.sum(w[w > 0]))


def _expand_hi(f, hi: float, limit: int = 200) -> float:
    step = 1.0
    for _ in range(limit):
        if f(hi) < 0:
            return hi
        hi += step
        step *= 2
    raise RuntimeError("could not bracket the crossing from above")


def _expand_lo(f, lo: float, limit: int = 200) -> float:
    step = 1.0
    for _ in range(limit):
        if f(lo) >= 0:
            return lo
        lo -= step
        step *= 2
    raise RuntimeError("could not bracket the crossing from below")


def info_spectrum_divergence(rho, sigma, eps, direction: str = "underline") -> DivergenceResult:
    """Information-spectrum relative entropy.

    Parameters
    ----------
    rho : array_like or DensityOperator
        Normalized state.
    sigma : array_like or DensityOperator
        Positive semidefinite operator.
    eps : float or EpsilonSpec
        Error parameter in (0, 1).
    direction : {"underline", "overline"}
        ``underline`` returns sup{gamma : T(gamma) >= 1 - eps},
        ``overline`` returns inf{gamma : T(gamma) <= eps}.

    Returns
    -------
    DivergenceResult

    Notes
    -----
    The underline crossing is located with Brent's bracketing method and the
    overline crossing by plain bisection on the defining predicate, so the
    two directions are computed along independent routes.  If rho carries
    mass outside supp(sigma) at least equal to the target, the result is
    +inf.

    Examples
    --------
    >>> r = np.diag([0.5, 0.5])
    >>> round(info_spectrum_divergence(r, r, 0.25).gamma, 9)
    -2.0
    """
    e = _eps(eps)
    if direction not in ("underline", "overline"):
        raise ValueError(f"direction must be 'underline' or 'overline', got {direction!r}")
    pr = rho if isinstance(rho, _Pair) else _Pair(rho, sigma)
    if abs(pr.tr_rho - 1) > 1e-9:
        raise ValueError("rho must be normalized")
    target = 1 - e if direction == "underline" else e
    if pr.m_out >= target:
        return DivergenceResult(math.inf, pr.m_out, (math.inf, math.inf), GAMMA_TOL, direction, e, target,
                                note="rho-mass outside supp(sigma) dominates the target")

    f = lambda g: pr.gap(g) - target  # noqa: E731
    hi = pr.upper_start()
    hi = _expand_hi(f, hi)
    lo = min(pr.lower_start(1 - target), hi - 1)
    lo = _expand_lo(f, lo)

    if direction == "underline":
        g = optimize.brentq(f, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=500)
        half = 0.5 * GAMMA_TOL
        blo, bhi = g - half, g + half
        if f(blo) < 0 or f(bhi) > 0:
            # fall back to bisection if the bracket check failed
            blo, bhi = _bisect(lambda x: f(x) >= 0, lo, hi, 1e-12)
            g = 0.5 * (blo + bhi)
    else:
        # inf{gamma : T(gamma) <= eps}; predicate true on [gamma*, inf)
        blo, bhi = _bisect(lambda x: f(x) > 0, lo, hi, 1e-12)
        g = 0.5 * (blo + bhi)
    return DivergenceResult(float(g), pr.gap(g), (float(blo), float(bhi)), GAMMA_TOL, direction, e, target)


def _bisect(pred, lo: float, hi: float, width: float, maxiter: int = 400):
    """Shrink [lo, hi] keeping pred(lo) true and pred(hi) false."""
    for _ in range(maxiter):
        if hi - lo <= width:
            break
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if pred(mid):
            lo = mid
        else:
            hi = mid
    return lo, hi


def underline_ds(rho, sigma, eps) -> float:
    return info_spectrum_divergence(rho, sigma, eps, "underline").gamma


def overline_ds(rho, sigma, eps) -> float:
    return info_spectrum_divergence(rho, sigma, eps, "overline").gamma


def _strict_mass(pr: _Pair, gamma: float) -> tuple:
    """tr rho {rho > 2^gamma sigma} together with that projector."""
    w, v = np.linalg.eigh(pr.rho - 2.0**gamma * pr.sigma)
    vs = v[:, w > TIE_TOL]
    p = vs @ vs.conj().T
    return float(np.real(np.trace(p @ pr.rho))), p


def _np_threshold(pr: _Pair, e: float):
    """Bracket [lo, hi] around sup{gamma : tr rho{rho > 2^gamma sigma} >= 1 - e}.

    tr rho{rho > t sigma} is the derivative of the convex map
    mu -> tr(mu rho - sigma)_+ at mu = 1/t, hence non-increasing in t, so
    bisection on the predicate is exact.
    """
    pred = lambda g: _strict_mass(pr, g)[0] >= 1 - e  # noqa: E731
    hi = pr.upper_start()
    step = 1.0
    for _ in range(200):
        if not pred(hi):
            break
        hi += step
        step *= 2
    else:
        raise RuntimeError("no upper bracket for the Neyman-Pearson threshold")
    lo = min(math.log2(e / pr.tr_sigma) - 1, hi - 1)
    step = 1.0
    for _ in range(200):
        if pred(lo):
            break
        lo -= step
        step *= 2
    else:
        raise RuntimeError("no lower bracket for the Neyman-Pearson threshold")
    return _bisect(pred, lo, hi, 1e-13)


def ds_tomamichel_hayashi(rho, sigma, eps) -> float:
    """sup{gamma : tr[rho {rho <= 2^gamma sigma}] <= eps}.

    The constraint function is right-continuous and non-decreasing in gamma;
    when it jumps across eps the supremum is the jump location, approached
    from the left, and that location is returned.

    Examples
    --------
    >>> round(ds_tomamichel_hayashi(np.diag([0.75, 0.25]), np.eye(2), 0.3), 6)
    -0.415037
    """
    e = _eps(eps)
    pr = rho if isinstance(rho, _Pair) else _Pair(rho, sigma)
    if pr.m_out >= 1 - e:
        return math.inf

    def mass_le(g):
        w, v = np.linalg.eigh(pr.rho - 2.0**g * pr.sigma)
        vs = v[:, w <= TIE_TOL]
        return float(np.real(np.einsum("ij,ik,kj->", vs.conj(), pr.rho, vs)))

    pred = lambda g: mass_le(g) <= e  # noqa: E731
    hi = pr.upper_start()
    step = 1.0
    while pred(hi):
        hi += step
        step *= 2
        if step > 2**60:
            raise RuntimeError("no upper bracket")
    lo = min(math.log2(e / pr.tr_sigma) - 1, hi - 1)
    step = 1.0
    while not pred(lo):
        lo -= step
        step *= 2
        if step > 2**60:
            raise RuntimeError("no lower bracket")
    lo, hi = _bisect(pred, lo, hi, 1e-13)
    return float(lo)


@dataclass(frozen=True)
class HypothesisTest:
    """Optimal test for D_H with its primal and dual certificates."""

    value: float
    test: np.ndarray
    type1: float  # tr Q rho
    type2: float  # tr Q sigma
    dual: float  # Lagrangian lower bound on the optimal type-II error
    threshold: float  # log2 of the Neyman-Pearson multiplier t

    def __iter__(self):
        yield self.value
        yield self.test


def hypothesis_testing_divergence(rho, sigma, eps) -> HypothesisTest:
    """D_H^eps(rho||sigma) = -log min{tr Q sigma : 0 <= Q <= 1, tr Q rho >= 1 - eps}.

    The optimizer is the operator Neyman-Pearson test
    Q = (1 - w) {rho > t_+ sigma} + w {rho > t_- sigma}, interpolating the
    strict projectors on either side of the critical multiplier so that
    tr Q rho = 1 - eps exactly.  The Lagrange dual
    max_t [(1 - eps) - T(log t)] / t is reported as a certificate.

    Examples
    --------
    >>> ht = hypothesis_testing_divergence(np.diag([1., 0.]), np.eye(2) / 2, 0.2)
    >>> round(ht.value, 6)
    1.321928
    """
    e = _eps(eps)
    pr = rho if isinstance(rho, _Pair) else _Pair(rho, sigma)
    target = 1 - e
    if pr.m_out >= target - 1e-15:
        q = pr.ker @ pr.ker.conj().T
        return HypothesisTest(math.inf, q, pr.m_out, 0.0, 0.0, math.inf)
    lo, hi = _np_threshold(pr, e)
    f_lo, p_lo = _strict_mass(pr, lo)
    f_hi, p_hi = _strict_mass(pr, hi)
    if f_lo - f_hi > 0:
        w = (target - f_hi) / (f_lo - f_hi)
    else:
        w = 1.0
    w = min(1.0, max(0.0, w))
    q = (1 - w) * p_hi + w * p_lo
    q = 0.5 * (q + q.conj().T)
    type1 = float(np.real(np.trace(q @ pr.rho)))
    type2 = float(np.real(np.trace(q @ pr.sigma)))
    dual = max((target - pr.gap(g)) * 2.0**(-g) for g in (lo, hi, 0.5 * (lo + hi)))
    value = -math.log2(type2) if type2 > 0 else math.inf
    return HypothesisTest(value, q, type1, type2, dual, 0.5 * (lo + hi))


def dh(rho, sigma, eps) -> float:
    return hypothesis_testing_divergence(rho, sigma, eps).value


# --------------------------------------------------------------------------
# smooth max-relative entropy


@dataclass(frozen=True)
class MaxDivergence:
    lower: float
    upper: float
    witness: np.ndarray | None
    purified_distance: float = 0.0


def max_divergence_unsmoothed(rho, sigma) -> float:
    """log2 lambda_max(sigma^{-1/2} rho sigma^{-1/2}); +inf on a support violation."""
    pr = rho if isinstance(rho, _Pair) else _Pair(rho, sigma)
    if pr.m_out > PSD_TOL or (not pr.full_rank and _offsupport_coupling(pr) > 1e-10):
        return math.inf
    top = float(pr.pencil[-1])
    return math.log2(top) if top > 0 else -math.inf


def _offsupport_coupling(pr: _Pair) -> float:
    if pr.ker.size == 0:
        return 0.0
    return float(np.linalg.norm(pr.ker.conj().T @ pr.rho))


@dataclass(frozen=True)
class SmoothingWitness:
    """rho_bar = G rho G^dagger with G = (2^g sigma)^{1/2} (2^g sigma + Delta)^{-1/2}."""

    gamma: float
    state: np.ndarray
    purified_distance: float
    dominance_residual: float  # max(0, -lambda_min(2^g sigma - rho_bar))
    delta_trace: float  # tr Delta = T(gamma)


def smoothing_witness(rho, sigma, gamma: float) -> SmoothingWitness:
    """Build the dominated smoothed state at level ``gamma`` and measure its certificates."""
    r, s = hermitize(rho), hermitize(sigma)
    a = 2.0**gamma * s
    w, v = np.linalg.eigh(r - a)
    delta = (v * np.where(w > 0, w, 0.0)) @ v.conj().T
    g = psd_power(a, 0.5) @ psd_power(a + delta, -0.5)
    rb = g @ r @ g.conj().T
    rb = 0.5 * (rb + rb.conj().T)
    pd = distances(r, rb).purified
    resid = np.linalg.eigvalsh(a - rb)[0]
    scale = max(1.0, float(np.max(np.abs(a))))
    return SmoothingWitness(gamma, rb, pd, max(0.0, -float(resid)) / scale, float(np.sum(w[w > 0])))


def max_divergence(rho, sigma, eps: float = 0.0, probes: int = 40) -> MaxDivergence:
    """Certified two-sided bounds on the smooth max-relative entropy.

    For ``eps == 0`` both bounds equal log2 lambda_max(sigma^{-1/2} rho sigma^{-1/2}).

    For ``eps > 0`` the upper bound is D_max(rho_bar || sigma) of an explicit
    witness rho_bar with P(rho, rho_bar) <= eps, built by
    :func:`smoothing_witness`.  The search starts at the overline divergence
    at eps**2/8 (where the witness is guaranteed to lie in the ball) and then
    bisects downward, keeping the best verified witness.

    The lower bound uses that any rho_bar in the ball satisfies
    tr Q rho_bar >= tr Q rho - eps, so rho_bar <= 2^g sigma forces
    g >= log((tr Q rho - eps) / tr Q sigma) for every test Q; it is maximized
    over Neyman-Pearson tests at a grid of levels.

    Raises
    ------
    RuntimeError
        If the final witness fails either certificate.
    """
    pr = rho if isinstance(rho, _Pair) else _Pair(rho, sigma)
    eps = float(eps)
    if eps < 0:
        raise ValueError("eps must be non-negative")
    d0 = max_divergence_unsmoothed(pr, None)
    if eps == 0:
        return MaxDivergence(d0, d0, None)
    if eps >= 1:
        raise ValueError("eps must be < 1 for a non-trivial smoothing")
    if not pr.full_rank:
        raise ValueError("smoothed bounds require a positive definite sigma")

    def admissible(g):
        wt = smoothing_witness(pr.rho, pr.sigma, g)
        ok = wt.purified_distance <= eps + 1e-12 and wt.dominance_residual <= 1e-10
        return ok, wt

    g0 = overline_ds(pr, None, eps * eps / 8) + WITNESS_SHIFT
    g0 = min(g0, d0) if math.isfinite(d0) else g0
    ok, best = admissible(g0)
    if not ok:
        raise RuntimeError(
            f"smoothing witness at gamma={g0:.6g} failed: P={best.purified_distance:.3e}, "
            f"dominance residue={best.dominance_residual:.3e}")
    lo = g0 - max(4.0, abs(g0) + 4.0)
    hi = g0
    for _ in range(probes):
        mid = 0.5 * (lo + hi)
        ok, wt = admissible(mid)
        if ok:
            hi, best = mid, wt
        else:
            lo = mid
        if hi - lo < 1e-9:
            break
    upper = max_divergence_unsmoothed(best.state, pr.sigma)
    upper = min(upper, best.gamma)
    # final certificate at the reported level
    dom = np.linalg.eigvalsh(2.0**upper * pr.sigma - best.state)[0]
    if best.purified_distance > eps + 1e-12 or dom < -1e-10 * max(1.0, 2.0**upper):
        raise RuntimeError("smoothed max-divergence certificate failed")

    lower = -math.inf
    for lev in np.linspace(0.0, 1 - eps, 22)[1:-1]:
        ht = hypothesis_testing_divergence(pr.rho, pr.sigma, lev)
        if ht.type2 > 0 and ht.type1 - eps > 0:
            lower = max(lower, math.log2(ht.type1 - eps) - math.log2(ht.type2))
    lower = min(lower, upper)
    return MaxDivergence(float(lower), float(upper), best.state, best.purified_distance)


# --------------------------------------------------------------------------
# relative entropy and variance


def _log2_on_support(m: np.ndarray):
    w, v = np.linalg.eigh(m)
    scale = max(1.0, float(np.max(np.abs(w))))
    keep = w > PSD_TOL * scale
    lw = np.zeros_like(w)
    lw[keep] = np.log2(w[keep])
    return (v * lw) @ v.conj().T, v[:, ~keep]


def relative_entropy_stats(rho, sigma) -> RelEntStats:
    """D(rho||sigma), V(rho||sigma) and s = sqrt(V) in bits.

    Examples
    --------
    >>> round(relative_entropy_stats(np.diag([0.75, 0.25]), np.eye(2) / 2).D, 5)
    0.18872
    """
    r, s = hermitize(rho), hermitize(sigma)
    if r.shape != s.shape:
        raise ValueError("dimension mismatch")
    lr, _ = _log2_on_support(r)
    ls, ker = _log2_on_support(s)
    if ker.size and float(np.real(np.trace(ker.conj().T @ r @ ker))) > PSD_TOL:
        return RelEntStats(math.inf, math.inf, math.inf, finite=False)
    l = lr - ls
    d = float(np.real(np.trace(r @ l)))
    # centered second moment, so zero-dispersion inputs give V ~ 1e-32
    c = l - d * np.eye(l.shape[0])
    v = float(np.real(np.trace(r @ c @ c)))
    v = max(v, 0.0) if v > -1e-10 else v
    return RelEntStats(d, v, math.sqrt(max(v, 0.0)))


# --------------------------------------------------------------------------
# derived entropies


def entropy_spectrum(omega, eps, direction: str = "underline") -> float:
    """Information-spectrum entropy: underline = -overline D(omega||1), overline = -underline D(omega||1)."""
    m = hermitize(omega)
    flip = "overline" if direction == "underline" else "underline"
    return -info_spectrum_divergence(m, np.eye(m.shape[0]), eps, flip).gamma


def conditional_spectrum(rho_ab, dims, eps, direction: str = "underline") -> float:
    """Information-spectrum conditional entropy with reference 1_A (x) rho_B."""
    m = hermitize(rho_ab)
    rb = partial_trace(m, dims, "B")
    ref = np.kron(np.eye(dims[0]), rb)
    flip = "overline" if direction == "underline" else "underline"
    return -info_spectrum_divergence(m, ref, eps, flip).gamma


@dataclass(frozen=True)
class MutualInfoResult:
    """Best found value of min_sigma_B D_s(rho_AB || rho_A (x) sigma_B).

    The value is an upper envelope of the true minimum (multi-start local search).
    """

    value: float
    sigma_b: np.ndarray
    anchor_value: float
    upper_envelope: bool = True


def _state_from_params(x: np.ndarray, d: int) -> np.ndarray:
    h = np.zeros((d, d), dtype=complex)
    iu = np.triu_indices(d, 1)
    n_off = len(iu[0])
    h[np.diag_indices(d)] = x[:d]
    h[iu] = x[d:d + n_off] + 1j * x[d + n_off:d + 2 * n_off]
    h = h + np.triu(h, 1).conj().T
    w, v = np.linalg.eigh(h)
    w = np.exp(w - w.max())
    m = (v * w) @ v.conj().T
    return m / np.real(np.trace(m))


def mutual_info_spectrum(rho_ab, dims, eps, direction: str = "underline", starts: int = 20,
                         seed: int = 0, tol: float = 1e-8) -> MutualInfoResult:
    """min over sigma_B of the information-spectrum divergence D_s(rho_AB || rho_A (x) sigma_B).

    sigma_B is parametrized as exp(H)/tr exp(H); ``starts`` seeded Nelder-Mead
    runs plus the anchor sigma_B = rho_B, best value returned.
    """
    m = hermitize(rho_ab)
    da, db = int(dims[0]), int(dims[1])
    ra = partial_trace(m, dims, "A")
    rb = partial_trace(m, dims, "B")
    e = _eps(eps)

    def obj_state(sb):
        return info_spectrum_divergence(m, np.kron(ra, sb), e, direction).gamma

    anchor = obj_state(rb)
    best_val, best_sb = anchor, rb
    rng = np.random.Generator(np.random.PCG64(seed))
    npar = db * db

    def obj(x):
        v = obj_state(_state_from_params(x, db))
        return v if math.isfinite(v) else 1e6

    # start 0 sits at the anchor so local search can only improve on it
    w, v = np.linalg.eigh(rb)
    lw = np.log(np.clip(w, 1e-12, None))
    h0 = (v * lw) @ v.conj().T
    iu = np.triu_indices(db, 1)
    x_anchor = np.concatenate([np.real(np.diag(h0)), np.real(h0[iu]), np.imag(h0[iu])])
    for k in range(starts):
        x0 = x_anchor if k == 0 else x_anchor + rng.normal(scale=1.0, size=npar)
        res = optimize.minimize(obj, x0, method="Nelder-Mead",
                                options={"xatol": tol, "fatol": tol, "maxiter": 200 * npar})
        if res.fun < best_val - 1e-15:
            best_val, best_sb = float(res.fun), _state_from_params(res.x, db)
    return MutualInfoResult(float(best_val), best_sb, float(anchor))


def derived_entropy(kind: str, direction: str, state, eps, dims=None, **kw) -> float:
    """Children entropies of the information-spectrum divergences.

    Parameters
    ----------
    kind : {"entropy", "conditional", "mutual"}
    direction : {"underline", "overline"}
    state : array_like
        omega for ``entropy``; rho_AB for the bipartite kinds.
    eps : float
    dims : (d_A, d_B), required for the bipartite kinds.
    """
    if kind == "entropy":
        return entropy_spectrum(state, eps, direction)
    if dims is None:
        raise ValueError(f"{kind} entropy needs bipartite dims")
    if kind == "conditional":
        return conditional_spectrum(state, dims, eps, direction)
    if kind == "mutual":
        return mutual_info_spectrum(state, dims, eps, direction, **kw).value
    raise ValueError(f"unknown entropy kind {kind!r}")
