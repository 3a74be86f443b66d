"""Finite-dimensional Hermitian linear algebra, states, channels and distances.

Everything downstream works on plain ``numpy`` arrays.  The small wrapper
classes here exist to carry validation results (trace class, bipartite
dimensions, Kraus completeness) alongside the matrix; every public function
accepts either a wrapper or a raw array.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

HERM_REJECT_TOL = 1e-9
TIE_TOL = 1e-12
PSD_TOL = 1e-12
TRACE_TOL = 1e-12
KRAUS_TOL = 1e-10


def as_matrix(a) -> np.ndarray:
    """Return the underlying complex matrix of ``a`` (wrapper or array-like)."""
    if hasattr(a, "matrix"):
        a = a.matrix
    m = np.asarray(a, dtype=complex)
    if m.ndim == 0:
        m = m.reshape(1, 1)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {m.shape}")
    return m


def hermitize(a) -> np.ndarray:
    """Symmetrize ``a`` as (A + A^dagger)/2 after checking it is Hermitian.

    Raises
    ------
    ValueError
        If entries are not finite or the anti-Hermitian residue exceeds 1e-9
        relative to max(1, |A|_max).
    """
    m = as_matrix(a)
    if not np.all(np.isfinite(m)):
        raise ValueError("matrix has non-finite entries")
    scale = max(1.0, float(np.max(np.abs(m)))) if m.size else 1.0
    resid = float(np.max(np.abs(m - m.conj().T))) if m.size else 0.0
    if resid > HERM_REJECT_TOL * scale:
        raise ValueError(f"matrix is not Hermitian (residue {resid:.3e})")
    return 0.5 * (m + m.conj().T)


@dataclass(frozen=True)
class HermitianOperator:
    """A validated Hermitian matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "matrix", hermitize(self.matrix))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]


@dataclass(frozen=True)
class EigenDecomposition:
    """Eigenvalues in non-increasing order with matching eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray
    groups: tuple

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.values) @ self.vectors.conj().T


def _eigh_desc(m: np.ndarray):
    w, v = np.linalg.eigh(m)
    return w[::-1], v[:, ::-1]


def eig_decompose(a) -> EigenDecomposition:
    """Eigendecomposition with eigenvalues sorted non-increasingly.

    Eigenvalues closer than 1e-12 times the spectral radius are grouped into
    degeneracy groups (tuples of column indices).

    Examples
    --------
    >>> eig_decompose(np.diag([0.25, 0.75])).values
    array([0.75, 0.25])
    """
    m = hermitize(a)
    w, v = _eigh_desc(m)
    radius = max(1.0, float(np.max(np.abs(w)))) if w.size else 1.0
    groups, cur = [], [0] if w.size else []
    for i in range(1, w.size):
        if w[cur[-1]] - w[i] <= TIE_TOL * radius:
            cur.append(i)
        else:
            groups.append(tuple(cur))
            cur = [i]
    if cur:
        groups.append(tuple(cur))
    return EigenDecomposition(w, v, tuple(groups))


def spectral_projector(m: np.ndarray, mode: str, tol: float = TIE_TOL) -> np.ndarray:
    """Projector onto the part of the spectrum of Hermitian ``m`` selected by ``mode``.

    ``mode`` is one of ``">="``, ``">"``, ``"<="``, ``"<"`` comparing with 0.
    Eigenvalues with |lambda| <= tol count as zero and therefore land on the
    non-strict side.
    """
    w, v = np.linalg.eigh(m)
    if mode == ">=":
        sel = w >= -tol
    elif mode == ">":
        sel = w > tol
    elif mode == "<=":
        sel = w <= tol
    elif mode == "<":
        sel = w < -tol
    else:
        raise ValueError(f"unknown comparison mode {mode!r}")
    vs = v[:, sel]
    return vs @ vs.conj().T


def compare_projector(a, b, mode: str = ">=") -> np.ndarray:
    """Spectral projector {A mode B} of the difference A - B.

    Examples
    --------
    >>> np.real(compare_projector(np.diag([2., 0.]), np.eye(2), ">="))
    array([[1., 0.],
           [0., 0.]])
    """
    ma, mb = hermitize(a), hermitize(b)
    if ma.shape != mb.shape:
        raise ValueError(f"dimension mismatch {ma.shape} vs {mb.shape}")
    return spectral_projector(ma - mb, mode)


def positive_part(m: np.ndarray) -> np.ndarray:
    """(M)_+ for Hermitian ``m``."""
    w, v = np.linalg.eigh(m)
    w = np.where(w > 0, w, 0.0)
    return (v * w) @ v.conj().T


def psd_power(m: np.ndarray, p: float, tol: float = PSD_TOL) -> np.ndarray:
    """Matrix power of a positive semidefinite matrix, on its support for p < 0."""
    w, v = np.linalg.eigh(m)
    keep = w > tol * max(1.0, float(np.max(np.abs(w))) if w.size else 1.0)
    wp = np.zeros_like(w)
    wp[keep] = w[keep] ** p
    return (v * wp) @ v.conj().T


def trace_norm(m: np.ndarray) -> float:
    return float(np.sum(np.linalg.svd(m, compute_uv=False)))


# --------------------------------------------------------------------------
# states


@dataclass(frozen=True)
class DensityOperator:
    """Positive semidefinite matrix tagged with its trace class.

    ``trace_class`` is ``"normalized"``, ``"subnormalized"`` or
    ``"positive-semidefinite"``.  Use :func:`density` to build one from data.
    """

    matrix: np.ndarray
    trace_class: str = "normalized"

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    @property
    def trace(self) -> float:
        return float(np.real(np.trace(self.matrix)))


def density(a, trace_class: str | None = None) -> DensityOperator:
    """Validate ``a`` as a (sub)normalized state or positive operator.

    Eigenvalues in [-1e-12, 0) are clamped to zero; anything more negative is
    rejected.  With ``trace_class=None`` the class is inferred from the trace.
    """
    m = hermitize(a)
    w, v = np.linalg.eigh(m)
    scale = max(1.0, float(np.max(np.abs(w)))) if w.size else 1.0
    if w.size and w[0] < -PSD_TOL * scale:
        raise ValueError(f"operator is not positive semidefinite (min eigenvalue {w[0]:.3e})")
    if w.size and w[0] < 0:
        w = np.clip(w, 0.0, None)
        m = (v * w) @ v.conj().T
        m = 0.5 * (m + m.conj().T)
    tr = float(np.sum(w))
    if trace_class is None:
        if abs(tr - 1) <= TRACE_TOL:
            trace_class = "normalized"
        elif tr <= 1 + TRACE_TOL:
            trace_class = "subnormalized"
        else:
            trace_class = "positive-semidefinite"
    if trace_class == "normalized" and abs(tr - 1) > TRACE_TOL:
        raise ValueError(f"state trace {tr!r} differs from 1")
    if trace_class == "subnormalized" and tr > 1 + TRACE_TOL:
        raise ValueError(f"subnormalized state has trace {tr!r} > 1")
    if trace_class not in ("normalized", "subnormalized", "positive-semidefinite"):
        raise ValueError(f"unknown trace class {trace_class!r}")
    return DensityOperator(m, trace_class)


def ket(*amps) -> np.ndarray:
    return np.asarray(amps, dtype=complex)


def proj(vec) -> np.ndarray:
    """Rank-one projector |v><v| (no normalization)."""
    v = np.asarray(vec, dtype=complex).ravel()
    return np.outer(v, v.conj())


def maximally_mixed(d: int) -> np.ndarray:
    return np.eye(d, dtype=complex) / d


def max_entangled(m: int) -> "BipartitePureState":
    """Phi^+_M = M^{-1/2} sum_k |kk>."""
    amps = np.zeros(m * m, dtype=complex)
    amps[[k * m + k for k in range(m)]] = 1 / math.sqrt(m)
    return BipartitePureState((m, m), amps)


def von_neumann_entropy(rho) -> float:
    """S(rho) in bits."""
    w = np.linalg.eigvalsh(as_matrix(rho))
    w = w[w > PSD_TOL]
    return float(-np.sum(w * np.log2(w)))


# --------------------------------------------------------------------------
# bipartite structure


def partial_trace(rho, dims: Sequence[int], keep: str = "A") -> np.ndarray:
    """Reduced operator of ``rho`` on ``H_A (x) H_B`` keeping ``"A"`` or ``"B"``."""
    m = as_matrix(rho)
    da, db = int(dims[0]), int(dims[1])
    if da * db != m.shape[0]:
        raise ValueError(f"dimension {m.shape[0]} does not factor as {da}x{db}")
    t = m.reshape(da, db, da, db)
    if keep == "A":
        return np.einsum("ijkj->ik", t)
    if keep == "B":
        return np.einsum("ijik->jk", t)
    raise ValueError(f"keep must be 'A' or 'B', got {keep!r}")


@dataclass(frozen=True)
class SchmidtDecomposition:
    coefficients: np.ndarray  # lambda_k, non-increasing, sum 1
    basis_a: np.ndarray  # columns e_k^A
    basis_b: np.ndarray  # columns e_k^B

    def reconstruct(self) -> np.ndarray:
        return np.einsum("k,ik,jk->ij", np.sqrt(self.coefficients), self.basis_a, self.basis_b).ravel()


@dataclass(frozen=True)
class BipartitePureState:
    """Unit vector on H_A (x) H_B, amplitudes in row-major |a b> order."""

    dims: tuple
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex).ravel()
        da, db = (int(x) for x in self.dims)
        if amps.size != da * db:
            raise ValueError(f"{amps.size} amplitudes do not match dims {self.dims}")
        nrm = np.linalg.norm(amps)
        if nrm == 0:
            raise ValueError("zero vector is not a state")
        if abs(nrm - 1) > TRACE_TOL:
            raise ValueError(f"state vector has norm {nrm!r}")
        object.__setattr__(self, "dims", (da, db))
        object.__setattr__(self, "amplitudes", amps)

    @classmethod
    def from_schmidt(cls, coeffs: Iterable[float]) -> "BipartitePureState":
        """sum_k sqrt(lambda_k)|kk> for given Schmidt coefficients."""
        lam = np.asarray(list(coeffs), dtype=float)
        lam = lam / lam.sum()
        m = lam.size
        amps = np.zeros(m * m, dtype=complex)
        amps[[k * m + k for k in range(m)]] = np.sqrt(lam)
        return cls((m, m), amps)

    @property
    def matrix(self) -> np.ndarray:
        return proj(self.amplitudes)

    @cached_property
    def schmidt(self) -> SchmidtDecomposition:
        return schmidt_decompose(self)

    def reduced(self, keep: str = "A") -> np.ndarray:
        c = self.amplitudes.reshape(self.dims)
        if keep == "A":
            return c @ c.conj().T
        return (c.T @ c.conj())


def schmidt_decompose(psi) -> SchmidtDecomposition:
    """Schmidt coefficients (non-increasing, summing to 1) and local bases.

    Examples
    --------
    >>> schmidt_decompose(max_entangled(2)).coefficients
    array([0.5, 0.5])
    """
    if not isinstance(psi, BipartitePureState):
        raise TypeError("schmidt_decompose expects a BipartitePureState")
    c = psi.amplitudes.reshape(psi.dims)
    u, s, vh = np.linalg.svd(c)
    lam = s**2
    lam = lam / lam.sum()
    k = lam.size
    return SchmidtDecomposition(lam, u[:, :k], vh.T[:, :k])


# --------------------------------------------------------------------------
# channels


@dataclass(frozen=True)
class QuantumChannel:
    """CP map in Kraus form, X -> sum_i A_i X A_i^dagger."""

    kraus: tuple
    trace_preserving: bool = True

    def __post_init__(self):
        ks = tuple(np.asarray(k, dtype=complex) for k in self.kraus)
        if not ks:
            raise ValueError("channel needs at least one Kraus operator")
        shape = ks[0].shape
        if any(k.shape != shape for k in ks):
            raise ValueError("Kraus operators have inconsistent shapes")
        object.__setattr__(self, "kraus", ks)
        resid = self.completeness_residual()
        if self.trace_preserving and resid > KRAUS_TOL:
            raise ValueError(f"Kraus completeness violated (residue {resid:.3e})")
        if not self.trace_preserving:
            excess = np.linalg.eigvalsh(sum(k.conj().T @ k for k in ks) - np.eye(shape[1]))
            if excess[-1] > KRAUS_TOL:
                raise ValueError("map is trace increasing")

    @property
    def in_dim(self) -> int:
        return self.kraus[0].shape[1]

    @property
    def out_dim(self) -> int:
        return self.kraus[0].shape[0]

    def completeness_residual(self) -> float:
        s = sum(k.conj().T @ k for k in self.kraus)
        return float(np.max(np.abs(s - np.eye(s.shape[0]))))

    def __call__(self, rho) -> np.ndarray:
        m = as_matrix(rho)
        return sum(k @ m @ k.conj().T for k in self.kraus)

    def on_first(self, rho, dim_b: int) -> np.ndarray:
        """(Lambda (x) id_B)(rho)."""
        m = as_matrix(rho)
        eye = np.eye(dim_b)
        return sum(np.kron(k, eye) @ m @ np.kron(k, eye).conj().T for k in self.kraus)


def channel_from_isometry(v: np.ndarray, out_dim: int) -> QuantumChannel:
    """Kraus operators read off an isometry H_in -> H_out (x) H_E."""
    v = np.asarray(v, dtype=complex)
    env = v.shape[0] // out_dim
    t = v.reshape(out_dim, env, v.shape[1])
    return QuantumChannel(tuple(t[:, e, :] for e in range(env)))


@dataclass(frozen=True)
class LoPopescuLOCC:
    """Pure-state LOCC in Lo-Popescu form: sum_j (U_j (x) K_j) psi (U_j (x) K_j)^dagger."""

    unitaries: tuple
    kraus_b: tuple

    def completeness_residual(self) -> float:
        s = sum(k.conj().T @ k for k in self.kraus_b)
        return float(np.max(np.abs(s - np.eye(s.shape[0]))))

    def __call__(self, rho) -> np.ndarray:
        m = as_matrix(rho)
        out = np.zeros_like(m)
        for u, k in zip(self.unitaries, self.kraus_b):
            g = np.kron(u, k)
            out = out + g @ m @ g.conj().T
        return out


@dataclass(frozen=True)
class PureStateEnsemble:
    """Ensemble {p_i, psi_i} of pure states (state vectors)."""

    probs: np.ndarray
    states: tuple

    def __post_init__(self):
        p = np.asarray(self.probs, dtype=float).ravel()
        if np.any(p < 0) or abs(p.sum() - 1) > TRACE_TOL:
            raise ValueError("ensemble probabilities must be non-negative and sum to 1")
        vecs = []
        for s in self.states:
            m = np.asarray(s, dtype=complex)
            if m.ndim == 2:
                w, v = np.linalg.eigh(hermitize(m))
                if np.sum(w > 1e-10) != 1 or abs(w[-1] - 1) > 1e-10:
                    raise ValueError("ensemble members must be pure states")
                m = v[:, -1]
            m = m.ravel()
            if abs(np.linalg.norm(m) - 1) > TRACE_TOL:
                raise ValueError("state vector not normalized")
            vecs.append(m)
        if len(vecs) != p.size:
            raise ValueError("need one state per probability")
        object.__setattr__(self, "probs", p)
        object.__setattr__(self, "states", tuple(vecs))

    @cached_property
    def average(self) -> np.ndarray:
        return sum(p * proj(v) for p, v in zip(self.probs, self.states))


# --------------------------------------------------------------------------
# distances


@dataclass(frozen=True)
class Distances:
    fidelity: float
    purified: float
    trace: float


def generalized_fidelity(rho, sigma) -> float:
    """||sqrt(rho) sqrt(sigma)||_1 + sqrt((1 - tr rho)(1 - tr sigma))."""
    a, b = as_matrix(rho), as_matrix(sigma)
    f = trace_norm(psd_power(a, 0.5) @ psd_power(b, 0.5))
    ta, tb = float(np.real(np.trace(a))), float(np.real(np.trace(b)))
    f += math.sqrt(max(0.0, (1 - ta) * (1 - tb)))
    return min(1.0, max(0.0, f))


def distances(rho, sigma) -> Distances:
    """Generalized fidelity, purified distance and generalized trace distance.

    Examples
    --------
    >>> d = distances(np.diag([1., 0.]), np.diag([0., 1.]))
    >>> (d.fidelity, d.purified, d.trace)
    (0.0, 1.0, 1.0)
    """
    a, b = as_matrix(rho), as_matrix(sigma)
    if a.shape != b.shape:
        raise ValueError("dimension mismatch")
    f = generalized_fidelity(a, b)
    p = math.sqrt(max(0.0, 1 - f * f))
    ta, tb = float(np.real(np.trace(a))), float(np.real(np.trace(b)))
    d = 0.5 * trace_norm(a - b) + 0.5 * abs(ta - tb)
    return Distances(f, p, d)


def trace_distance_positive_part(rho, sigma) -> float:
    """tr(rho - sigma)_+, equal to the trace distance for normalized inputs."""
    w = np.linalg.eigvalsh(hermitize(as_matrix(rho) - as_matrix(sigma)))
    return float(np.sum(w[w > 0]))


# --------------------------------------------------------------------------
# random instances


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.Generator(np.random.PCG64(int(seed) & 0xFFFFFFFFFFFFFFFF))


def _ginibre(rng, rows, cols):
    return rng.standard_normal((rows, cols)) + 1j * rng.standard_normal((rows, cols))


def random_state(d: int, seed, rank: int | None = None) -> np.ndarray:
    rng = _rng(seed)
    g = _ginibre(rng, d, rank or d)
    m = g @ g.conj().T
    return m / np.real(np.trace(m))


def random_unitary(d: int, seed) -> np.ndarray:
    """Haar unitary via QR with phase correction."""
    rng = _rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, d, d))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_isometry(rows: int, cols: int, seed) -> np.ndarray:
    rng = _rng(seed)
    q, r = np.linalg.qr(_ginibre(rng, rows, cols))
    ph = np.diag(r) / np.abs(np.diag(r))
    return q * ph


def random_instances(kind: str, dims, seed):
    """Seeded random instance of the requested ``kind``.

    Parameters
    ----------
    kind : str
        ``state``, ``positive_operator``, ``pure_bipartite``, ``cptp_channel``,
        ``lo_popescu_locc`` or ``ensemble``.
    dims : int or tuple
        Dimension ``d``; ``(d_A, d_B)`` for bipartite kinds; ``(d_in, d_out)``
        for channels.
    seed : int or numpy.random.Generator
        A 64-bit seed (PCG64) or a generator to draw from.
    """
    rng = _rng(seed)
    if isinstance(dims, (int, np.integer)):
        dims = (int(dims),)
    dims = tuple(int(x) for x in dims)
    if any(x < 1 for x in dims):
        raise ValueError(f"unsupported dims {dims}")
    if kind == "state":
        return density(random_state(dims[0], rng), "normalized")
    if kind == "positive_operator":
        m = random_state(dims[0], rng) * float(rng.uniform(0.25, 4.0))
        return density(m, "positive-semidefinite")
    if kind == "pure_bipartite":
        da, db = (dims + dims)[:2]
        v = _ginibre(rng, da * db, 1).ravel()
        return BipartitePureState((da, db), v / np.linalg.norm(v))
    if kind == "cptp_channel":
        din, dout = (dims + dims)[:2]
        v = random_isometry(dout * din * dout, din, rng)
        return channel_from_isometry(v, dout)
    if kind == "lo_popescu_locc":
        da, db = (dims + dims)[:2]
        branches = 3
        v = random_isometry(db * branches, db, rng)
        ks = tuple(v[j * db:(j + 1) * db, :] for j in range(branches))
        us = tuple(random_unitary(da, rng) for _ in range(branches))
        return LoPopescuLOCC(us, ks)
    if kind == "ensemble":
        d = dims[0]
        m = d + 1
        p = rng.dirichlet(np.ones(m))
        vs = []
        for _ in range(m):
            v = _ginibre(rng, d, 1).ravel()
            vs.append(v / np.linalg.norm(v))
        return PureStateEnsemble(p, tuple(vs))
    raise ValueError(f"unknown instance kind {kind!r}")


# --------------------------------------------------------------------------
# JSON helpers


def matrix_to_json(a) -> dict:
    m = as_matrix(a)
    return {"dim": m.shape[0], "re": np.real(m).tolist(), "im": np.imag(m).tolist()}


def matrix_from_json(obj: dict) -> np.ndarray:
    try:
        re = np.asarray(obj["re"], dtype=float)
        im = np.asarray(obj.get("im", np.zeros_like(re)), dtype=float)
        dim = int(obj.get("dim", re.shape[0]))
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed matrix record: {exc}") from exc
    if re.shape != (dim, dim) or im.shape != (dim, dim):
        raise ValueError(f"matrix record shape does not match dim={dim}")
    return re + 1j * im


def ensemble_to_json(ens: PureStateEnsemble) -> dict:
    return {"probs": ens.probs.tolist(), "states": [matrix_to_json(proj(v)) for v in ens.states]}


def ensemble_from_json(obj: dict) -> PureStateEnsemble:
    try:
        probs = obj["probs"]
        states = [matrix_from_json(s) for s in obj["states"]]
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed ensemble record: {exc}") from exc
    return PureStateEnsemble(np.asarray(probs, dtype=float), tuple(states))
