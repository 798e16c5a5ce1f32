"""Numerical search for matrices in S(G) with spectrum {0^(n-k), 1^(k)}.

Such a matrix is ``A = U Uᵀ`` with ``U`` an n×k matrix of orthonormal columns,
so the search runs over orthonormal frames. All restarts are advanced together
as one stacked array. Candidates are polished by alternating projections and
only reported once :func:`mbkit.realizations.certify` accepts them.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Optional

import numpy as np

from . import graphs as gr
from .errors import CertificationError, GuardError, PreconditionError
from .obstructions import BoundsReport, bounds_report
from .realizations import RealizationCertificate, Tolerances, certify

SEARCH_GUARD = 16


@dataclass(frozen=True)
class SearchConfig:
    restarts: int = 200
    max_iters: int = 500
    step_size: float = 0.5
    step_growth: float = 1.2
    step_shrink: float = 0.5
    penalty_weight: float = 1.0
    zero_tol: float = 1e-10
    nonzero_tol: float = 1e-4
    seed: int = 0
    check_every: int = 25
    polish_iters: int = 300
    polish_candidates: int = 8

    def __post_init__(self):
        for name in ("restarts", "max_iters", "check_every", "polish_iters", "polish_candidates"):
            if int(getattr(self, name)) < 1:
                raise PreconditionError(f"{name} must be a positive integer")
        for name in ("step_size", "step_growth", "step_shrink", "penalty_weight", "zero_tol", "nonzero_tol"):
            if not getattr(self, name) > 0:
                raise PreconditionError(f"{name} must be positive")
        if self.zero_tol >= self.nonzero_tol:
            raise PreconditionError("zero_tol must be smaller than nonzero_tol")

    @property
    def hinge(self) -> float:
        return 10 * self.nonzero_tol

    @property
    def tolerances(self) -> Tolerances:
        return Tolerances(zero_tol=max(self.zero_tol, 1e-9), nonzero_tol=self.nonzero_tol)

    def to_dict(self) -> dict:
        return asdict(self)


@dataclass
class SearchResult:
    status: str
    certificate: Optional[RealizationCertificate]
    best_residual: float
    restarts_used: int
    iterations: int
    k: int = 0
    notes: list = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.status == "found"

    def to_dict(self) -> dict:
        return {
            "status": self.status,
            "k": self.k,
            "best_residual": self.best_residual,
            "restarts_used": self.restarts_used,
            "iterations": self.iterations,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "notes": list(self.notes),
        }


def pattern_masks(G: gr.Graph) -> tuple:
    """Boolean (non-edge, edge) masks over ordered off-diagonal pairs."""
    E = G.adjacency().astype(bool)
    N = ~E
    np.fill_diagonal(N, False)
    return N, E


def objective(U, N, E, mu: float, eps: float):
    """``f(U) = Σ_N A_ij² + μ Σ_E max(0, ε² - A_ij²)`` with ``A = U Uᵀ``.

    Works on a single frame (n×k) or a stack (r×n×k); sums run over ordered pairs.
    """
    A = U @ np.swapaxes(U, -1, -2)
    sq = A * A
    return np.sum(np.where(N, sq, 0.0), axis=(-2, -1)) + mu * np.sum(
        np.where(E, np.maximum(0.0, eps * eps - sq), 0.0), axis=(-2, -1)
    )


def gradient(U, N, E, mu: float, eps: float):
    """Euclidean gradient of :func:`objective`: ``2 G U`` with ``G = ∂f/∂A``."""
    A = U @ np.swapaxes(U, -1, -2)
    active = E & (A * A < eps * eps)
    GA = 2 * np.where(N, A, 0.0) - 2 * mu * np.where(active, A, 0.0)
    return 2 * GA @ U


def orthonormalize(U):
    """Nearest matrix with orthonormal columns (polar factor), batched."""
    W, _, Vt = np.linalg.svd(U, full_matrices=False)
    return W @ Vt


def _initial_frames(G: gr.Graph, k: int, cfg: SearchConfig) -> np.ndarray:
    frames = np.empty((cfg.restarts, G.n, k))
    for r in range(cfg.restarts):
        frames[r] = np.random.default_rng([cfg.seed, r]).standard_normal((G.n, k))
    # one warm start from the top-k adjacency eigenvectors
    _, V = np.linalg.eigh(G.adjacency().astype(float))
    frames[0] = V[:, G.n - k:] + 1e-3 * frames[0]
    return orthonormalize(frames)


def _residuals(U, N, E):
    A = U @ np.swapaxes(U, -1, -2)
    off = np.max(np.where(N, np.abs(A), 0.0), axis=(-2, -1), initial=0.0)
    scale = np.max(np.abs(A), axis=(-2, -1))
    edge = np.min(np.where(E, np.abs(A), np.inf), axis=(-2, -1), initial=np.inf) / scale
    return off, edge


def polish(U, N, k: int, iters: int, zero_tol: float):
    """Alternating projections between the pattern and the rank-k projectors."""
    for _ in range(iters):
        A = U @ np.swapaxes(U, -1, -2)
        A = np.where(N, 0.0, A)
        _, V = np.linalg.eigh(A)
        U = V[..., -k:]
        off, _ = _residuals(U, N, ~N)
        if np.all(off < zero_tol):
            break
    return U


def _try_certify(G, U, N, k, cfg, provenance):
    A = U @ U.T
    A[N] = 0.0
    return certify(A, G, k, cfg.tolerances, provenance)


def find_realization(G: gr.Graph, k: int, cfg: SearchConfig = SearchConfig()) -> SearchResult:
    """Search for ``A ∈ S(G)`` with multiplicity bipartition ``[n-k, k]``.

    A result with status ``found`` always carries a certified matrix; ``not-found``
    is inconclusive.
    """
    n = G.n
    if n > SEARCH_GUARD:
        raise GuardError(f"search limited to n <= {SEARCH_GUARD}")
    if not 1 <= k <= n // 2:
        raise PreconditionError(f"k={k} outside 1..{n // 2}")
    N, E = pattern_masks(G)
    mu, eps = cfg.penalty_weight, cfg.hinge
    U = _initial_frames(G, k, cfg)
    eta = np.full(cfg.restarts, cfg.step_size)
    f = objective(U, N, E, mu, eps)
    best = np.inf
    tried = set()

    def attempt(candidates, iters_done, polish_iters):
        nonlocal best
        off, edge = _residuals(U, N, E)
        order = sorted(candidates, key=lambda r: (off[r], r))
        P = polish(U[order], N, k, polish_iters, cfg.zero_tol)
        poff, pedge = _residuals(P, N, E)
        shortfall = np.maximum(0.0, cfg.nonzero_tol - np.concatenate([pedge, edge[order]]))
        best = min(best, float(np.min(np.maximum(np.concatenate([poff, off[order]]), shortfall))))
        hits = [i for i in range(len(order)) if poff[i] < cfg.zero_tol and pedge[i] > cfg.nonzero_tol]
        for i in sorted(hits, key=lambda i: (poff[i], order[i])):
            r = order[i]
            prov = {"name": "search", "params": {"k": k}, "seed": cfg.seed, "restart": int(r),
                    "iterations": iters_done, "residual": float(poff[i])}
            try:
                cert = _try_certify(G, P[i], N, k, cfg, prov)
            except CertificationError:
                continue
            return SearchResult("found", cert, float(poff[i]), int(r) + 1, iters_done, k)
        return None

    it = 0
    for it in range(1, cfg.max_iters + 1):
        grad = gradient(U, N, E, mu, eps)
        trial = orthonormalize(U - eta[:, None, None] * grad)
        ft = objective(trial, N, E, mu, eps)
        ok = ft <= f
        U = np.where(ok[:, None, None], trial, U)
        f = np.where(ok, ft, f)
        eta = np.clip(np.where(ok, eta * cfg.step_growth, eta * cfg.step_shrink), 1e-8, 10.0)
        if it % cfg.check_every == 0:
            off, edge = _residuals(U, N, E)
            ready = [r for r in np.argsort(off, kind="stable")[: cfg.polish_candidates]
                     if off[r] < 1e-2 and edge[r] > cfg.nonzero_tol and (r, it // 100) not in tried]
            for r in ready:
                tried.add((r, it // 100))
            if ready:
                res = attempt(ready, it, cfg.polish_iters)
                if res is not None:
                    return res
    off, _ = _residuals(U, N, E)
    final = list(np.argsort(off, kind="stable")[: 2 * cfg.polish_candidates])
    res = attempt(final, it, 4 * cfg.polish_iters)
    if res is not None:
        return res
    return SearchResult("not-found", None, best, cfg.restarts, it, k)


def minimal_bipartition(G: gr.Graph, cfg: SearchConfig = SearchConfig()) -> tuple:
    """``(MB estimate or None, {k: SearchResult}, BoundsReport)``.

    Searches k upward from the combinatorial lower bound; the first certificate
    gives the estimate, which is exact when the report's bounds meet.
    """
    if G.n > SEARCH_GUARD:
        raise GuardError(f"search limited to n <= {SEARCH_GUARD}")
    report = bounds_report(G)
    results = {}
    if report.q_gt_2:
        return None, results, report
    start = max(report.lower_bound or 1, 1)
    for k in range(start, G.n // 2 + 1):
        res = find_realization(G, k, cfg)
        results[k] = res
        if res.found:
            report = bounds_report(G, [res.certificate])
            return k, results, report
    return None, results, report


def achievable_bipartitions(G: gr.Graph, cfg: SearchConfig = SearchConfig()) -> dict:
    """``{k: certificate}`` for every k ≤ ⌊n/2⌋ the search realizes."""
    out = {}
    for k in range(1, G.n // 2 + 1):
        res = find_realization(G, k, cfg)
        if res.found:
            out[k] = res.certificate
    return out


def report_with(G: gr.Graph, results: dict) -> BoundsReport:
    return bounds_report(G, [r.certificate for r in results.values() if r.found])
