"""Dense symmetric spectra, multiplicity clustering, random orthogonal matrices
and Gram-factor algebra.

A Gram factor is an n×k matrix ``U`` with mutually orthogonal columns of a
common squared norm ``c``; ``U Uᵀ`` then has spectrum ``{0^(n-k), c^(k)}``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import ConstructionError, PreconditionError, RotationError
from .graphs import Graph, is_connected

NONZERO_THETA = 1e-8


def as_symmetric(A) -> np.ndarray:
    """Float copy of ``A`` symmetrized as ``(A + Aᵀ)/2``; rejects non-finite input."""
    A = np.array(A, dtype=float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise PreconditionError(f"expected a square matrix, got shape {A.shape}")
    if not np.all(np.isfinite(A)):
        raise PreconditionError("matrix has non-finite entries")
    return (A + A.T) / 2


def asymmetry(A) -> float:
    """Relative asymmetry ``max|A - Aᵀ| / max(1, max|A|)``."""
    A = np.asarray(A, dtype=float)
    return float(np.max(np.abs(A - A.T), initial=0.0) / max(1.0, np.max(np.abs(A), initial=0.0)))


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: np.ndarray
    eigenvectors: np.ndarray


def eigendecompose(A) -> Spectrum:
    """Ascending eigenvalues and orthonormal eigenvectors (columns)."""
    A = as_symmetric(A)
    if A.shape[0] < 1:
        raise PreconditionError("matrix must have order at least 1")
    w, V = np.linalg.eigh(A)
    return Spectrum(w, V)


def default_cluster_tol(eigenvalues) -> float:
    eigenvalues = np.asarray(eigenvalues, dtype=float)
    spread = float(eigenvalues.max() - eigenvalues.min()) if eigenvalues.size else 0.0
    return 1e-6 * max(1.0, spread)


@dataclass(frozen=True)
class MultiplicityPartition:
    """Distinct eigenvalues with multiplicities, sorted by multiplicity
    (descending) then value (ascending)."""

    pairs: tuple
    tol: float
    ill_separated: bool = False

    @property
    def multiplicities(self) -> list:
        return [m for _, m in self.pairs]

    @property
    def values(self) -> list:
        return [lam for lam, _ in self.pairs]

    @property
    def order(self) -> int:
        return sum(self.multiplicities)

    def __len__(self):
        return len(self.pairs)

    def to_dict(self) -> dict:
        return {
            "eigenvalues": [float(v) for v in self.values],
            "multiplicities": self.multiplicities,
            "tol": self.tol,
        }


def cluster_multiplicities(eigenvalues, tol: Optional[float] = None) -> MultiplicityPartition:
    """Greedy gap clustering of a spectrum.

    Consecutive (sorted) eigenvalues share a class iff their gap is ``<= tol``;
    each class is represented by its mean. A gap in ``(tol/10, 10·tol]`` makes
    the split ambiguous and sets ``ill_separated``.
    """
    if isinstance(eigenvalues, Spectrum):
        eigenvalues = eigenvalues.eigenvalues
    w = np.sort(np.asarray(eigenvalues, dtype=float))
    if tol is None:
        tol = default_cluster_tol(w)
    if tol <= 0:
        raise PreconditionError("cluster tolerance must be positive")
    classes = [[w[0]]] if w.size else []
    ill = False
    for prev, cur in zip(w[:-1], w[1:]):
        gap = cur - prev
        if tol / 10 < gap <= 10 * tol:
            ill = True
        if gap <= tol:
            classes[-1].append(cur)
        else:
            classes.append([cur])
    pairs = [(float(np.mean(c)), len(c)) for c in classes]
    pairs.sort(key=lambda p: (-p[1], p[0]))
    return MultiplicityPartition(tuple(pairs), float(tol), ill)


def random_orthogonal(k: int, seed=None) -> np.ndarray:
    """Haar-distributed k×k orthogonal matrix (QR of a Gaussian sample, R with positive diagonal)."""
    if k < 1:
        raise PreconditionError("k must be positive")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    Q, R = np.linalg.qr(rng.standard_normal((k, k)))
    return Q * np.where(np.diag(R) < 0, -1.0, 1.0)


def _zero_columns(M: np.ndarray, theta: float) -> list:
    scale = max(float(np.max(np.abs(M), initial=0.0)), np.finfo(float).tiny)
    return [j for j in range(M.shape[1]) if np.max(np.abs(M[:, j])) <= theta * scale]


def nonvanishing_rotation(M1, M2, seed=None, max_tries: int = 100, theta: float = NONZERO_THETA) -> np.ndarray:
    """Orthogonal R with every entry of ``M1ᵀ R M2`` bounded away from zero.

    ``M1`` is k×a and ``M2`` is k×b, neither with a zero column. Acceptance
    requires ``min|M1ᵀRM2| > theta·‖M1‖₂·‖M2‖₂``. Candidates are drawn with
    :func:`random_orthogonal` from one seeded generator.
    """
    M1 = np.asarray(M1, dtype=float)
    M2 = np.asarray(M2, dtype=float)
    if M1.ndim != 2 or M2.ndim != 2 or M1.shape[0] != M2.shape[0]:
        raise PreconditionError("M1 and M2 must both have k rows")
    for name, M in (("M1", M1), ("M2", M2)):
        bad = _zero_columns(M, theta)
        if bad:
            raise PreconditionError(f"{name} has zero columns {bad}")
    k = M1.shape[0]
    bound = theta * np.linalg.norm(M1, 2) * np.linalg.norm(M2, 2)

    def ok(R):
        return np.min(np.abs(M1.T @ R @ M2)) > bound

    if k == 1:
        R = np.ones((1, 1))
        if ok(R):
            return R
        raise RotationError("k = 1 and the scalar products already vanish")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    for _ in range(max_tries):
        R = random_orthogonal(k, rng)
        if ok(R):
            return R
    raise RotationError(f"no admissible rotation in {max_tries} tries")


@dataclass(frozen=True)
class GramFactor:
    """n×k factor with pairwise orthogonal columns of common squared norm."""

    U: np.ndarray
    norm_sq: float

    def __post_init__(self):
        U = np.array(self.U, dtype=float)
        if U.ndim != 2:
            raise PreconditionError("Gram factor must be a 2-d array")
        object.__setattr__(self, "U", U)
        c = float(self.norm_sq)
        if c <= 0:
            raise PreconditionError("column norm must be positive")
        G = U.T @ U
        off = G - np.diag(np.diag(G))
        if np.max(np.abs(off), initial=0.0) > 1e-10 * c:
            raise PreconditionError("columns are not pairwise orthogonal")
        if np.max(np.abs(np.diag(G) - c), initial=0.0) > 1e-10 * c:
            raise PreconditionError("columns do not share a common squared norm")

    @classmethod
    def from_columns(cls, U) -> "GramFactor":
        U = np.asarray(U, dtype=float)
        return cls(U, float(np.mean(np.sum(U * U, axis=0))))

    @property
    def n(self) -> int:
        return self.U.shape[0]

    @property
    def k(self) -> int:
        return self.U.shape[1]


def gram_assemble(F: GramFactor) -> np.ndarray:
    """``U Uᵀ``; spectrum ``{0^(n-k), c^(k)}``."""
    return F.U @ F.U.T


def gram_extract(A, k: int, tol: Optional[float] = None) -> GramFactor:
    """Recover a Gram factor from a matrix with spectrum ``{0^(n-k), c^(k)}``, c > 0."""
    spec = eigendecompose(A)
    w = spec.eigenvalues
    n = w.size
    if not 1 <= k <= n:
        raise PreconditionError(f"k={k} outside 1..{n}")
    scale = max(1.0, float(np.max(np.abs(w))))
    if tol is None:
        tol = 1e-6 * scale
    top = w[n - k:]
    low = w[: n - k]
    c = float(np.mean(top))
    if c <= tol or np.max(np.abs(top - c)) > tol or (low.size and np.max(np.abs(low)) > tol):
        raise PreconditionError(
            f"spectrum is not of the form {{0^({n - k}), c^({k})}} within tol {tol:g}"
        )
    return GramFactor(spec.eigenvectors[:, n - k:] * np.sqrt(c), c)


def entrywise_nonzero_gram(F: GramFactor, seed=None, max_tries: int = 100) -> GramFactor:
    """Rotate ``U`` to ``Q = U R`` with no zero entries; ``Q Qᵀ = U Uᵀ``."""
    U = F.U
    row_norms = np.linalg.norm(U, axis=1)
    zero_rows = np.flatnonzero(row_norms <= NONZERO_THETA * np.sqrt(F.norm_sq))
    if zero_rows.size:
        raise PreconditionError(f"factor has zero rows {zero_rows.tolist()} (isolated vertices)")
    R = nonvanishing_rotation(U.T, np.eye(F.k), seed=seed, max_tries=max_tries)
    return GramFactor(U @ R, F.norm_sq)


def _pattern_index(G: Graph):
    iu = np.array([u for u, _ in G.sorted_edges()], dtype=int)
    iv = np.array([v for _, v in G.sorted_edges()], dtype=int)
    return iu, iv


def generic_realization(G: Graph, target_eigs: Sequence[float], seed=None, max_tries: int = 20,
                        steps: int = 10) -> np.ndarray:
    """A matrix in S(G) with the given distinct eigenvalues and nowhere-zero eigenvectors.

    Starts from random edge weights, affinely matches the spectral range, then
    follows the straight line from the starting spectrum to the target with
    minimum-norm Newton corrections on (diagonal, edge weight) parameters.
    """
    if not is_connected(G) or G.n < 1:
        raise PreconditionError("generic_realization needs a connected graph")
    target = np.asarray(target_eigs, dtype=float)
    n = G.n
    if target.shape != (n,):
        raise PreconditionError(f"need {n} target eigenvalues")
    if np.any(np.diff(target) <= 0):
        raise PreconditionError("target eigenvalues must be strictly increasing")
    if n == 1:
        return target.reshape(1, 1).copy()
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    iu, iv = _pattern_index(G)
    spread = target[-1] - target[0]

    def build(x):
        A = np.diag(x[:n])
        A[iu, iv] = x[n:]
        A[iv, iu] = x[n:]
        return A

    def newton(x, goal, iters):
        for _ in range(iters):
            w, V = np.linalg.eigh(build(x))
            r = goal - w
            if np.max(np.abs(r)) < 1e-13 * max(1.0, spread):
                break
            J = np.hstack([(V ** 2).T, (2 * V[iu, :] * V[iv, :]).T])
            dx = np.linalg.lstsq(J, r, rcond=None)[0]
            x = x + dx
        return x

    for _ in range(max_tries):
        w0 = rng.uniform(0.5, 1.5, G.m) * rng.choice([-1.0, 1.0], G.m)
        x = np.concatenate([rng.standard_normal(n), w0])
        mu = np.linalg.eigvalsh(build(x))
        if mu[-1] - mu[0] <= 0:
            continue
        a = spread / (mu[-1] - mu[0])
        x = np.concatenate([a * x[:n] + (target[0] - a * mu[0]), a * x[n:]])
        mu = np.linalg.eigvalsh(build(x))
        for tau in np.linspace(0, 1, steps + 1)[1:]:
            x = newton(x, (1 - tau) * mu + tau * target, 8)
        x = newton(x, target, 30)
        A = build(x)
        w, V = np.linalg.eigh(A)
        scale = np.max(np.abs(A))
        if (np.max(np.abs(w - target)) <= 1e-10 * max(1.0, spread)
                and np.min(np.abs(x[n:])) > 1e-6 * scale
                and np.min(np.abs(V)) > 1e-8):
            return A
    raise ConstructionError(f"generic sampling failed after {max_tries} tries")
