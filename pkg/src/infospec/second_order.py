"""Second-order expansion calculators a*n + b*sqrt(n) for divergences and tasks.

Each calculator returns :class:`ExpansionCoefficients` with the dispersion
s and the sign of the quantile term stored, so b can be recomputed as
sign * s * Phi^{-1}(eps).  Remainder terms are carried only as tags.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy import optimize

from .classical import normal_quantile
from .divergences import _eps, relative_entropy_stats
from .herm import (
    BipartitePureState,
    QuantumChannel,
    as_matrix,
    channel_from_isometry,
    hermitize,
    partial_trace,
    von_neumann_entropy,
)

DEGENERATE_V = 1e-14


@dataclass(frozen=True)
class ExpansionCoefficients:
    """Coefficients of a*n + b*sqrt(n) + remainder."""

    a: float
    b: float
    remainder_tag: str
    task: str
    eps: float
    dispersion: float = 0.0  # s, the square root of the relevant variance
    sign: int = 1
    quantile_arg: float | None = None  # argument of Phi^{-1} when it is not eps
    meta: dict = field(default_factory=dict)

    def value(self, n):
        n = np.asarray(n, dtype=float)
        return self.a * n + self.b * np.sqrt(n)

    def rate(self, n):
        n = np.asarray(n, dtype=float)
        return self.value(n) / n

    def recomputed_b(self) -> float:
        q = self.eps if self.quantile_arg is None else self.quantile_arg
        return self.sign * self.dispersion * normal_quantile(q)


def _coeffs(a, s, sign, eps, task, tag="O(log n)", qarg=None, **meta):
    q = eps if qarg is None else qarg
    return ExpansionCoefficients(float(a), float(sign * s * normal_quantile(q)), tag, task, float(eps),
                                 float(s), int(sign), qarg, dict(meta))


def spectrum_stats(lam) -> tuple:
    """(H, V) of a probability vector in bits, V in centered form."""
    lam = np.asarray(lam, dtype=float)
    lam = lam[lam > 0]
    lg = np.log2(lam)
    h = float(-np.dot(lam, lg))
    v = float(np.dot(lam, (lg + h) ** 2))
    return h, v


def divergence_expansion(rho, sigma, eps, direction: str = "underline") -> ExpansionCoefficients:
    """a = D(rho||sigma), b = +s Phi^{-1}(eps) (underline) or -s Phi^{-1}(eps) (overline).

    Examples
    --------
    >>> ex = divergence_expansion(np.diag([0.75, 0.25]), np.eye(2) / 2, 0.25)
    >>> round(ex.a, 5)
    0.18872
    """
    e = _eps(eps)
    st = relative_entropy_stats(rho, sigma)
    if not st.finite:
        raise ValueError("supp(rho) is not contained in supp(sigma)")
    sign = 1 if direction == "underline" else -1
    return _coeffs(st.D, st.s, sign, e, f"divergence_{direction}")


def source_coding_expansion(rho, eps, setting: str = "visible"):
    """Compression length expansion; visible gives one set, blind a (lower, upper) pair.

    Visible: a = S(rho), b = -sqrt(V) Phi^{-1}(eps).  Blind: the lower
    bracket uses Phi^{-1}(eps), the upper one Phi^{-1}(eps/2).
    """
    e = _eps(eps)
    lam = np.linalg.eigvalsh(hermitize(rho))
    h, v = spectrum_stats(np.clip(lam, 0, None))
    s = math.sqrt(v)
    if setting == "visible":
        return _coeffs(h, s, -1, e, "source_visible")
    if setting == "blind":
        lower = _coeffs(h, s, -1, e, "source_blind_lower")
        upper = _coeffs(h, s, -1, e, "source_blind_upper", qarg=e / 2)
        return lower, upper
    raise ValueError(f"unknown setting {setting!r}")


# --------------------------------------------------------------------------
# dense coding


def _isometry_from_params(x: np.ndarray, rows: int, cols: int) -> np.ndarray:
    m = x[: rows * cols].reshape(rows, cols) + 1j * x[rows * cols:].reshape(rows, cols)
    q, r = np.linalg.qr(m)
    ph = np.diag(r) / np.where(np.abs(np.diag(r)) > 0, np.abs(np.diag(r)), 1.0)
    return q * ph


def _params_from_isometry(v: np.ndarray) -> np.ndarray:
    return np.concatenate([np.real(v).ravel(), np.imag(v).ravel()])


@dataclass(frozen=True)
class DenseCodingExpansion:
    coefficients: ExpansionCoefficients
    channel: QuantumChannel
    output_entropy: float


def _dense_terms(rho_ab, dims, chan: QuantumChannel):
    sig = chan.on_first(rho_ab, dims[1])
    rb = partial_trace(rho_ab, dims, "B")
    ent = von_neumann_entropy(sig)
    st = relative_entropy_stats(sig, np.kron(np.eye(dims[0]), rb))
    return ent, st.s


def dense_coding_expansion(rho_ab, dims, eps, channel_mode: str = "identity", starts: int = 20,
                           seed: int = 0, tol: float = 1e-8, maxiter: int | None = None) -> DenseCodingExpansion:
    """a = log d_A + S(rho_B) - min_L S((L (x) id) rho_AB), b = max_L s(...) Phi^{-1}(eps).

    ``channel_mode="optimize"`` searches CPTP maps through Stinespring
    isometries H_A -> H_A (x) H_E with dim E = d_A**2, from ``starts`` seeded
    Nelder-Mead runs and the identity, full-dephasing and replacement
    anchors.  Ties in a (within 1e-12) are broken by the larger dispersion.
    Encodings are restricted to product form.
    """
    e = _eps(eps)
    m = hermitize(rho_ab)
    da, db = int(dims[0]), int(dims[1])
    rb = partial_trace(m, dims, "B")
    sb = von_neumann_entropy(rb)
    ident = QuantumChannel((np.eye(da, dtype=complex),))
    cands = [(ident, *_dense_terms(m, dims, ident))]
    if channel_mode == "optimize":
        deph = QuantumChannel(tuple(np.outer(np.eye(da)[k], np.eye(da)[k]).astype(complex) for k in range(da)))
        repl = QuantumChannel(tuple(np.outer(np.eye(da)[0], np.eye(da)[k]).astype(complex) for k in range(da)))
        for ch in (deph, repl):
            cands.append((ch, *_dense_terms(m, dims, ch)))
        d_env = da * da
        rows = da * d_env

        def channel_of(x):
            return channel_from_isometry(_isometry_from_params(x, rows, da), da)

        def obj(x):
            return von_neumann_entropy(channel_of(x).on_first(m, db))

        rng = np.random.Generator(np.random.PCG64(seed))
        npar = 2 * rows * da
        for k in range(starts):
            x0 = rng.standard_normal(npar)
            res = optimize.minimize(obj, x0, method="Nelder-Mead",
                                    options={"xatol": tol, "fatol": tol,
                                             "maxiter": maxiter or 100 * npar})
            ch = channel_of(res.x)
            cands.append((ch, *_dense_terms(m, dims, ch)))
    best_ent = min(c[1] for c in cands)
    ties = [c for c in cands if c[1] <= best_ent + 1e-12]
    ch, ent, s = max(ties, key=lambda c: c[2])
    a = math.log2(da) + sb - ent
    coeffs = _coeffs(a, s, 1, e, "dense_coding", channel_mode=channel_mode,
                     encoding="product encodings only")
    return DenseCodingExpansion(coeffs, ch, ent)


# --------------------------------------------------------------------------
# entanglement concentration / dilution


def _schmidt_of(psi) -> np.ndarray:
    if isinstance(psi, BipartitePureState):
        return psi.schmidt.coefficients
    lam = np.asarray(psi, dtype=float).ravel()
    return np.sort(lam / lam.sum())[::-1]


def entanglement_expansion(psi, eps, task: str = "distill") -> ExpansionCoefficients:
    """a = S(rho_A); b = +sqrt(V) Phi^{-1}(eps) for distill, -sqrt(V) Phi^{-1}(eps) for dilute.

    ``psi`` may be a :class:`BipartitePureState` or a Schmidt coefficient vector.
    """
    e = _eps(eps)
    h, v = spectrum_stats(_schmidt_of(psi))
    if task == "distill":
        sign = 1
    elif task == "dilute":
        sign = -1
    else:
        raise ValueError(f"unknown task {task!r}")
    return _coeffs(h, math.sqrt(v), sign, e, task)


@dataclass(frozen=True)
class IrreversibilityGap:
    gap_bits: np.ndarray
    crossover_n: int | None
    variance: float
    degenerate: bool


def irreversibility_gap(psi, eps, delta, n) -> IrreversibilityGap:
    """gap(n) = -sqrt(n V) (Phi^{-1}(delta) + Phi^{-1}(eps)) between dilution and concentration.

    ``crossover_n`` is the smallest n >= 1 with gap >= 1 bit; ``None`` for a
    flat Schmidt spectrum, whose gap vanishes identically.
    """
    for name, x in (("eps", eps), ("delta", delta)):
        if not 0 < x < 0.5:
            raise ValueError(f"{name} must lie in (0, 1/2), got {x!r}")
    _, v = spectrum_stats(_schmidt_of(psi))
    nn = np.atleast_1d(np.asarray(n, dtype=float))
    if v <= DEGENERATE_V:
        return IrreversibilityGap(np.zeros_like(nn), None, 0.0, True)
    c = -(normal_quantile(delta) + normal_quantile(eps))
    gap = np.sqrt(nn * v) * c
    n0 = max(1, math.ceil(1.0 / (v * c * c)))
    while n0 > 1 and math.sqrt((n0 - 1) * v) * c >= 1:
        n0 -= 1
    while math.sqrt(n0 * v) * c < 1:
        n0 += 1
    return IrreversibilityGap(gap, n0, v, False)


# --------------------------------------------------------------------------
# classical-quantum channels


@dataclass(frozen=True)
class CqChannel:
    """x -> W(x), a finite list of normalized states, optionally with a prior."""

    outputs: tuple
    prior: np.ndarray | None = None

    def __post_init__(self):
        outs = tuple(hermitize(w) for w in self.outputs)
        for w in outs:
            if abs(np.real(np.trace(w)) - 1) > 1e-12:
                raise ValueError("channel outputs must be normalized states")
        object.__setattr__(self, "outputs", outs)
        if self.prior is not None:
            p = np.asarray(self.prior, dtype=float)
            if abs(p.sum() - 1) > 1e-12 or np.any(p < 0):
                raise ValueError("prior must be a probability vector")
            object.__setattr__(self, "prior", p)

    @property
    def alphabet(self) -> int:
        return len(self.outputs)

    def joint(self, p) -> np.ndarray:
        """rho_XB = sum_x p(x) |x><x| (x) W(x)."""
        k = self.alphabet
        d = self.outputs[0].shape[0]
        out = np.zeros((k * d, k * d), dtype=complex)
        for x, (px, w) in enumerate(zip(p, self.outputs)):
            out[x * d:(x + 1) * d, x * d:(x + 1) * d] = px * w
        return out

    def average(self, p) -> np.ndarray:
        return sum(px * w for px, w in zip(p, self.outputs))


def _per_letter(W: CqChannel, p):
    rb = W.average(p)
    stats = [relative_entropy_stats(w, rb) for w in W.outputs]
    return rb, stats


def holevo_information(W: CqChannel, p) -> float:
    """I(X:B) = sum_x p(x) D(W(x) || W_bar)."""
    _, stats = _per_letter(W, p)
    return float(sum(px * st.D for px, st in zip(p, stats) if px > 0))


def information_variance(W: CqChannel, p) -> float:
    """V(rho_XB || rho_X (x) rho_B) = sum_x p(x) E_x[(log W_x - log W_bar)^2] - I^2."""
    _, stats = _per_letter(W, p)
    i = sum(px * st.D for px, st in zip(p, stats) if px > 0)
    m2 = sum(px * (st.V + st.D**2) for px, st in zip(p, stats) if px > 0)
    return float(max(m2 - i * i, 0.0))


def _blahut_arimoto(W: CqChannel, p0, tol: float, max_iter: int):
    p = np.asarray(p0, dtype=float)
    p = p / p.sum()
    gap = math.inf
    for _ in range(max_iter):
        _, stats = _per_letter(W, p)
        d = np.array([st.D for st in stats])
        i = float(np.dot(p, d))
        upper = float(np.max(d))
        gap = upper - i
        if gap <= tol:
            return p, i, upper
        p = p * np.exp2(d - upper)
        p = p / p.sum()
    raise RuntimeError(f"alternating maximization did not converge: residual {gap:.3e}")


@dataclass(frozen=True)
class DispersionSet:
    capacity: float
    maximizer_set: tuple
    V_min: float
    V_max: float
    upper_bound: float
    meta: dict = field(default_factory=dict)

    def V_eps(self, eps: float) -> float:
        return self.V_min if eps < 0.5 else self.V_max


def cq_capacity(W: CqChannel, tol: float = 1e-10, max_iter: int = 200_000, restarts: int = 50,
                accept: float = 1e-6, seed: int = 0) -> DispersionSet:
    """Holevo capacity by alternating maximization with a dual certificate.

    Each run stops once max_x D(W(x)||W_bar) - I(X:B) <= tol; the max is an
    upper bound on the capacity.  The maximizer set is probed by
    ``restarts`` runs from perturbed priors; priors within ``accept`` of the
    capacity are kept.

    Examples
    --------
    >>> W = CqChannel((np.diag([1., 0.]), np.diag([0., 1.])))
    >>> round(cq_capacity(W, restarts=0).capacity, 9)
    1.0
    """
    k = W.alphabet
    p, cap, upper = _blahut_arimoto(W, np.full(k, 1.0 / k), tol, max_iter)
    rng = np.random.Generator(np.random.PCG64(seed))
    priors = [p]
    for _ in range(restarts):
        t = rng.uniform(0.05, 1.0)
        q0 = (1 - t) * p + t * rng.dirichlet(np.ones(k))
        q, i, u = _blahut_arimoto(W, q0, tol, max_iter)
        if i > cap:
            cap, upper = i, u
        priors.append(q)
    kept = []
    for q in priors:
        if holevo_information(W, q) >= cap - accept and not any(np.max(np.abs(q - r)) <= 1e-6 for r in kept):
            kept.append(q)
    vs = [information_variance(W, q) for q in kept]
    return DispersionSet(float(cap), tuple(kept), float(min(vs)), float(max(vs)), float(upper),
                         {"accept_tol": accept, "restarts": restarts,
                          "note": "maximizer set from finite perturbation probes"})


def cq_expansion(W: CqChannel, eps, dispersion: DispersionSet | None = None) -> ExpansionCoefficients:
    """a = C(W), b = sqrt(V_eps) Phi^{-1}(eps), remainder o(sqrt n)."""
    e = _eps(eps)
    ds = dispersion or cq_capacity(W)
    v = ds.V_eps(e)
    return _coeffs(ds.capacity, math.sqrt(v), 1, e, "cq", tag="o(sqrt n)",
                   degenerate_dispersion=ds.V_min <= DEGENERATE_V, V_min=ds.V_min, V_max=ds.V_max)
