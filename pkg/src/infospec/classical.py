"""Classical information-spectrum machinery.

Nussbaum-Szkola reduction of a quantum pair to a classical pair, exact
distributions of the log-likelihood ratio Z = log2 P - log2 Q and of its
n-fold i.i.d. sums, normal quantiles, and dense tensor-power cross-checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize, special

from .divergences import info_spectrum_divergence, relative_entropy_stats, _eps
from .herm import PSD_TOL, hermitize

ATOM_CAP = 2_000_000
MERGE_TOL = 1e-12


class FlaggedValue(float):
    """A float carrying a ``left_limit`` flag (supremum approached from below)."""

    left_limit: bool

    def __new__(cls, value, left_limit: bool = False):
        obj = super().__new__(cls, value)
        obj.left_limit = left_limit
        return obj


@dataclass(frozen=True)
class ClassicalPair:
    """Probability vector P and non-negative vector Q on a common alphabet."""

    P: np.ndarray
    Q: np.ndarray

    def __post_init__(self):
        p = np.asarray(self.P, dtype=float).ravel()
        q = np.asarray(self.Q, dtype=float).ravel()
        if p.shape != q.shape:
            raise ValueError("P and Q must have the same length")
        if np.any(p < 0) or np.any(q < 0):
            raise ValueError("P and Q must be non-negative")
        if abs(p.sum() - 1) > 1e-12:
            raise ValueError(f"P sums to {p.sum()!r}, not 1")
        object.__setattr__(self, "P", p)
        object.__setattr__(self, "Q", q)

    @property
    def alphabet_size(self) -> int:
        return self.P.size

    def tensor(self, other: "ClassicalPair") -> "ClassicalPair":
        return ClassicalPair(np.kron(self.P, other.P), np.kron(self.Q, other.Q))


@dataclass(frozen=True)
class ClassicalLLR:
    """Exact distribution of Z under P.

    ``support``/``probs`` hold the finite atoms; ``p_inf`` is the mass at
    Z = +inf (letters with Q = 0 < P), kept apart from the float atoms.
    """

    support: np.ndarray
    probs: np.ndarray
    p_inf: float = 0.0

    @property
    def mu(self) -> float:
        if self.p_inf > 0:
            return math.inf
        return float(np.dot(self.probs, self.support))

    @property
    def s(self) -> float:
        if self.p_inf > 0:
            return math.inf
        m = self.mu
        v = float(np.dot(self.probs, (self.support - m) ** 2))
        return math.sqrt(max(v, 0.0))

    @property
    def variance(self) -> float:
        return self.s ** 2

    def cdf(self, r: float) -> float:
        """P(Z <= r)."""
        k = np.searchsorted(self.support, r, side="right")
        return float(np.sum(self.probs[:k]))


def _merge(values: np.ndarray, probs: np.ndarray, tol: float = MERGE_TOL):
    """Sort atoms and merge neighbours closer than tol * max(1, |z|)."""
    order = np.argsort(values, kind="stable")
    v, p = values[order], probs[order]
    if v.size == 0:
        return v, p
    gap = np.diff(v) > tol * np.maximum(1.0, np.abs(v[1:]))
    starts = np.concatenate([[0], np.nonzero(gap)[0] + 1])
    pm = np.add.reduceat(p, starts)
    # representative value: probability-weighted mean within each group
    vm = np.add.reduceat(v * p, starts)
    with np.errstate(invalid="ignore", divide="ignore"):
        vm = np.where(pm > 0, vm / pm, v[starts])
    return vm, pm


def nussbaum_szkola(rho, sigma) -> ClassicalPair:
    """P(x, y) = r_x |<v_x|u_y>|^2, Q(x, y) = s_y |<v_x|u_y>|^2.

    Examples
    --------
    >>> pr = nussbaum_szkola(np.diag([0.75, 0.25]), np.eye(2) / 2)
    >>> np.sort(pr.P[pr.P > 0])
    array([0.25, 0.75])
    """
    r, s = hermitize(rho), hermitize(sigma)
    if r.shape != s.shape:
        raise ValueError("dimension mismatch")
    wr, vr = np.linalg.eigh(r)
    ws, vs = np.linalg.eigh(s)
    wr = np.where(wr > PSD_TOL * max(1.0, wr.max()), wr, 0.0)
    ws = np.where(ws > PSD_TOL * max(1.0, ws.max()), ws, 0.0)
    ov = np.abs(vr.conj().T @ vs) ** 2  # [x, y]
    P = (wr[:, None] * ov).ravel()
    Q = (ws[None, :] * ov).ravel()
    P = P / P.sum()
    return ClassicalPair(P, Q)


def classical_llr(pair: ClassicalPair) -> ClassicalLLR:
    """Single-letter distribution of Z under P (atoms with P = 0 dropped)."""
    p, q = pair.P, pair.Q
    live = p > 0
    inf_mask = live & (q <= 0)
    fin = live & (q > 0)
    z = np.log2(p[fin]) - np.log2(q[fin])
    v, w = _merge(z, p[fin])
    return ClassicalLLR(v, w, float(np.sum(p[inf_mask])))


def classical_stats(pair: ClassicalPair) -> tuple:
    """(D(P||Q), V(P||Q)) in bits."""
    llr = classical_llr(pair)
    return llr.mu, llr.variance


def _as_llr(obj) -> ClassicalLLR:
    if isinstance(obj, ClassicalLLR):
        return obj
    if isinstance(obj, ClassicalPair):
        return classical_llr(obj)
    raise TypeError("expected a ClassicalPair or ClassicalLLR")


def classical_trace_gap(llr: ClassicalLLR, gamma: float) -> float:
    """sum_z P(Z=z)(1 - 2^(gamma - z))_+, i.e. tr(P - 2^gamma Q)_+."""
    x = gamma - llr.support
    mask = x < 0
    return float(np.sum(llr.probs[mask] * -np.expm1(x[mask] * math.log(2)))) + llr.p_inf


def classical_info_spectrum(pair, eps, direction: str = "th") -> FlaggedValue:
    """Exact classical information-spectrum quantities.

    Parameters
    ----------
    pair : ClassicalPair or ClassicalLLR
    eps : float
    direction : {"th", "underline", "overline"}
        ``th`` is the quantile sup{R : P(Z <= R) <= eps} (a left limit at the
        first atom whose cdf exceeds eps).  ``underline``/``overline`` are the
        trace-gap crossings sup{g : T(g) >= 1 - eps} and inf{g : T(g) <= eps}
        with T(g) = E[(1 - 2^(g - Z))_+], which coincide with the quantum
        divergences for commuting inputs.

    Examples
    --------
    >>> pr = ClassicalPair([0.75, 0.25], [0.5, 0.5])
    >>> round(classical_info_spectrum(pr, 0.3), 6)
    0.584963
    """
    e = _eps(eps)
    llr = _as_llr(pair)
    if direction == "th":
        cum = np.cumsum(llr.probs)
        idx = np.nonzero(cum > e + 1e-12)[0]
        if idx.size == 0:
            return FlaggedValue(math.inf, False)
        return FlaggedValue(float(llr.support[idx[0]]), True)
    if direction not in ("underline", "overline"):
        raise ValueError(f"unknown direction {direction!r}")
    target = 1 - e if direction == "underline" else e
    if llr.p_inf >= target:
        return FlaggedValue(math.inf, False)
    f = lambda g: classical_trace_gap(llr, g) - target  # noqa: E731
    hi = float(llr.support.max()) + 1.0
    lo = float(llr.support.min()) + math.log2(1 - target) - 1.0
    while f(lo) < 0:
        lo -= 1.0
    g = optimize.brentq(f, lo, hi, xtol=1e-13, rtol=4 * np.finfo(float).eps, maxiter=500)
    return FlaggedValue(float(g), False)


def _compositions(n: int, k: int) -> np.ndarray:
    """All k-part compositions of n as rows of an integer array."""
    if k == 1:
        return np.array([[n]], dtype=np.int64)
    if k == 2:
        a = np.arange(n + 1, dtype=np.int64)
        return np.stack([a, n - a], axis=1)
    blocks = []
    for first in range(n + 1):
        rest = _compositions(n - first, k - 1)
        blocks.append(np.concatenate([np.full((rest.shape[0], 1), first, dtype=np.int64), rest], axis=1))
    return np.concatenate(blocks, axis=0)


def _conv(a: tuple, b: tuple, cap: int):
    va, pa = a
    vb, pb = b
    if va.size * vb.size > 25 * cap:
        raise OverflowError(
            f"support explosion: {va.size} x {vb.size} candidate atoms; use fewer letters or a smaller n")
    v = (va[:, None] + vb[None, :]).ravel()
    p = (pa[:, None] * pb[None, :]).ravel()
    v, p = _merge(v, p)
    if v.size > cap:
        raise OverflowError(f"LLR support of {v.size} atoms exceeds the cap {cap}")
    return v, p


def iid_llr_distribution(pair, n: int, cap: int = ATOM_CAP, method: str = "auto") -> ClassicalLLR:
    """Exact distribution of Z_1 + ... + Z_n for i.i.d. letters.

    Uses type enumeration when the number of types C(n+k-1, k-1) is below
    ``cap`` (k distinct finite atoms), binary-powering convolution otherwise.
    +inf atoms stay symbolic: the sum is +inf iff some letter is.

    Raises
    ------
    OverflowError
        If the merged support would exceed ``cap`` atoms.
    """
    if n < 1:
        raise ValueError("n must be a positive integer")
    base = _as_llr(pair)
    n = int(n)
    k = base.support.size
    p_inf = 1.0 - (1.0 - base.p_inf) ** n if base.p_inf > 0 else 0.0
    if n == 1:
        return base
    ntypes = math.comb(n + k - 1, k - 1)
    if method == "types" or (method == "auto" and ntypes < cap):
        counts = _compositions(n, k)
        with np.errstate(divide="ignore"):
            logp = np.log(base.probs)
        lp = special.gammaln(n + 1) - np.sum(special.gammaln(counts + 1), axis=1)
        lp = lp + np.sum(np.where(counts > 0, counts * logp[None, :], 0.0), axis=1)
        v = counts @ base.support
        v, p = _merge(v, np.exp(lp))
        return ClassicalLLR(v, p, p_inf)
    result = None
    cur = (base.support, base.probs)
    m = n
    while m:
        if m & 1:
            result = cur if result is None else _conv(result, cur, cap)
        m >>= 1
        if m:
            cur = _conv(cur, cur, cap)
    return ClassicalLLR(result[0], result[1], p_inf)


def normal_cdf(z: float) -> float:
    """Standard normal cdf."""
    return float(special.ndtr(z))


def normal_quantile(eps: float) -> float:
    """Phi^{-1}(eps) for eps in (0, 1).

    Examples
    --------
    >>> round(normal_quantile(0.05), 4)
    -1.6449
    """
    e = float(eps)
    if not 0 < e < 1:
        raise ValueError(f"quantile argument must lie in (0, 1), got {eps!r}")
    if e > 0.5:
        return -float(special.ndtri(1 - e)) if (1 - e) > 0 else float(special.ndtri(e))
    return float(special.ndtri(e))


def commutes(a, b, tol: float = 1e-12) -> bool:
    ma, mb = hermitize(a), hermitize(b)
    return float(np.max(np.abs(ma @ mb - mb @ ma))) <= tol * max(1.0, float(np.max(np.abs(ma))) * float(np.max(np.abs(mb))))


def _kron_power(m: np.ndarray, n: int) -> np.ndarray:
    out = np.ones((1, 1), dtype=m.dtype)
    for _ in range(n):
        out = np.kron(out, m)
    return out


def tensor_power_divergence(rho, sigma, n: int, eps, direction: str = "underline",
                            dense: bool | None = None, max_dim: int = 4096) -> float:
    """D_s^eps(rho^{(x)n} || sigma^{(x)n}) on explicit tensor powers.

    Commuting inputs use the diagonal of the tensor power in the common
    eigenbasis unless ``dense=True``; otherwise the Kronecker powers are
    built and passed to the divergence solver.
    """
    r, s = hermitize(rho), hermitize(sigma)
    d = r.shape[0]
    if d**n > max_dim:
        raise ValueError(f"tensor power dimension {d}**{n} exceeds the cap {max_dim}")
    if dense is None:
        dense = not commutes(r, s)
    if dense:
        return info_spectrum_divergence(_kron_power(r, n), _kron_power(s, n), eps, direction).gamma
    # common eigenbasis: diagonalize a generic combination
    w, v = np.linalg.eigh(r + math.pi * s)
    dr = np.real(np.einsum("ij,ik,kj->j", v.conj(), r, v))
    ds = np.real(np.einsum("ij,ik,kj->j", v.conj(), s, v))
    pr, ps = np.ones(1), np.ones(1)
    for _ in range(n):
        pr, ps = np.kron(pr, dr), np.kron(ps, ds)
    return info_spectrum_divergence(np.diag(pr), np.diag(ps), eps, direction).gamma


@dataclass(frozen=True)
class RateSequenceProbe:
    base_pair: tuple
    n_grid: tuple
    eps_grid: tuple
    rates: np.ndarray  # [eps, n]
    direction: str


def rate_probe(rho, sigma, n_grid, eps_grid, direction: str = "underline") -> RateSequenceProbe:
    """(1/n) D_s^eps(rho^n || sigma^n) over a grid.

    Commuting pairs use the exact classical engine (any n); others fall back
    to dense tensor powers and are limited to d^n <= 4096.
    """
    r, s = hermitize(rho), hermitize(sigma)
    rates = np.empty((len(eps_grid), len(n_grid)))
    if commutes(r, s):
        base = classical_llr(nussbaum_szkola(r, s))
        for j, n in enumerate(n_grid):
            llr = iid_llr_distribution(base, n)
            for i, e in enumerate(eps_grid):
                rates[i, j] = classical_info_spectrum(llr, e, direction) / n
    else:
        for j, n in enumerate(n_grid):
            for i, e in enumerate(eps_grid):
                rates[i, j] = tensor_power_divergence(r, s, n, e, direction) / n
    return RateSequenceProbe((r, s), tuple(n_grid), tuple(eps_grid), rates, direction)


def relative_entropy_pair(rho, sigma) -> tuple:
    """(D, s) of a quantum pair, convenience for expansion checks."""
    st = relative_entropy_stats(rho, sigma)
    return st.D, st.s
