"""Explicit matrix constructions realizing two-eigenvalue multiplicity
bipartitions, each returning a :class:`RealizationCertificate`.

Vertex orders follow the graph builders in :mod:`mbkit.graphs`: joins place the
left operand first, clique unions lay cliques out consecutively.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Optional, Sequence

import numpy as np

from . import graphs as gr
from .errors import CertificationError, ConstructionError, PreconditionError, RotationError
from .realizations import (
    BIPARTITION,
    RealizationCertificate,
    Tolerances,
    certify,
    certify_spectrum,
    clone_realization,
    gram_factor_of,
)
from .spectra import (
    GramFactor,
    entrywise_nonzero_gram,
    generic_realization,
    nonvanishing_rotation,
)

RETRY_CAP = 32
DEFAULT_T = (2.0, 3.0, 5.0, 7.0, 11.0, 13.0)


def _rng(seed, attempt: int = 0) -> np.random.Generator:
    return np.random.default_rng(None if seed is None else [int(seed), attempt])


def _provenance(name: str, params: dict, seed=None, **extra) -> dict:
    out = {"name": name, "params": params, "seed": seed}
    out.update(extra)
    return out


# ----------------------------------------------------------------------------
# Complete multipartite graphs
# ----------------------------------------------------------------------------

def multipartite_matrix(parts: Sequence[int]) -> np.ndarray:
    """``b_uv = 1/sqrt(p_i p_j)`` across parts i ≠ j, zero inside a part."""
    parts = gr.normalize_parts(parts)
    owner = np.repeat(np.arange(len(parts)), parts)
    size = np.asarray(parts, dtype=float)[owner]
    B = 1.0 / np.sqrt(np.outer(size, size))
    B[owner[:, None] == owner[None, :]] = 0.0
    return B


def multipartite_three_eigs(parts: Sequence[int], tolerances: Tolerances = Tolerances()) -> RealizationCertificate:
    """K_{p_1..p_l} with spectrum {-1^(l-1), 0^(Σ(p_i-1)), (l-1)^(1)}."""
    parts = gr.normalize_parts(parts)
    ell = len(parts)
    if ell < 2:
        raise PreconditionError("need at least two parts")
    G = gr.complete_multipartite(parts)
    expected = {-1.0: ell - 1, 0.0: sum(p - 1 for p in parts), float(ell - 1): 1}
    return certify_spectrum(
        multipartite_matrix(parts), G, expected, tolerances,
        _provenance("multipartite-b", {"parts": parts}),
    )


# ----------------------------------------------------------------------------
# Joins built from Gram factors
# ----------------------------------------------------------------------------

def _check_joinable(cert: RealizationCertificate, who: str):
    if cert.kind != BIPARTITION:
        raise PreconditionError(f"{who} is not a bipartition certificate")
    iso = cert.graph.isolated_vertices()
    if iso:
        raise PreconditionError(f"{who} has isolated vertices {iso}")


def join_pair_matrix(A, B, k: int, seed=None, max_tries: int = 100):
    """``C = Xᵀ X`` with ``X = [M1, R M2]`` for 0/1-spectrum inputs ``A = M1ᵀM1``,
    ``B = M2ᵀM2``; returns ``(C, R)``. ``X Xᵀ = 2I`` so ``C² = 2C``."""
    from .spectra import gram_extract

    M1 = gram_extract(A, k).U.T
    M2 = gram_extract(B, k).U.T
    R = nonvanishing_rotation(M1, M2, seed=seed, max_tries=max_tries)
    X = np.hstack([M1, R @ M2])
    return X.T @ X, R


def join_equal_mb(cert_g: RealizationCertificate, cert_h: RealizationCertificate, seed=0,
                  tolerances: Tolerances = Tolerances()) -> RealizationCertificate:
    """Realize G ∨ H with partition ``[n1+n2-k, k]`` from two [·, k] realizations."""
    _check_joinable(cert_g, "left certificate")
    _check_joinable(cert_h, "right certificate")
    if cert_g.k != cert_h.k:
        raise PreconditionError(f"multiplicities differ: k={cert_g.k} vs k={cert_h.k}")
    k = cert_g.k
    A = gram_factor_of(cert_g)
    B = gram_factor_of(cert_h)
    H = gr.join(cert_g.graph, cert_h.graph)
    last = None
    for attempt in range(RETRY_CAP):
        try:
            C, _ = join_pair_matrix(A.U @ A.U.T, B.U @ B.U.T, k, seed=_rng(seed, attempt))
            prov = _provenance("join-equal-mb", {}, seed, attempt=attempt,
                               idempotence_residual=float(np.max(np.abs(C @ C - 2 * C))),
                               left=cert_g.provenance, right=cert_h.provenance)
            return certify(C, H, k, tolerances, prov)
        except (CertificationError, RotationError) as exc:
            last = exc
    raise ConstructionError(f"join_equal_mb failed after {RETRY_CAP} attempts: {last}")


def join_with_empty(cert_g: RealizationCertificate, seed=0,
                    tolerances: Tolerances = Tolerances()) -> RealizationCertificate:
    """Realize G ∨ K̄_k with partition ``[n, k]``; the second factor is the identity."""
    _check_joinable(cert_g, "certificate")
    k = cert_g.k
    if k < 2:
        raise PreconditionError("join_with_empty needs k >= 2")
    M1 = gram_factor_of(cert_g).U.T
    H = gr.join(cert_g.graph, gr.empty_graph(k))
    last = None
    for attempt in range(RETRY_CAP):
        try:
            R = nonvanishing_rotation(M1, np.eye(k), seed=_rng(seed, attempt))
            X = np.hstack([M1, R])
            prov = _provenance("join-with-empty", {}, seed, attempt=attempt, base=cert_g.provenance)
            return certify(X.T @ X, H, k, tolerances, prov)
        except (CertificationError, RotationError) as exc:
            last = exc
    raise ConstructionError(f"join_with_empty failed after {RETRY_CAP} attempts: {last}")


def join_with_cliques(G: gr.Graph, Z: GramFactor, sizes: Sequence[int], beta: Optional[float] = None,
                      seed=0, tolerances: Tolerances = Tolerances()) -> RealizationCertificate:
    """Realize G ∨ (K_{s_1} ∪ ... ∪ K_{s_d}) with partition ``[|V|+Σs_i-d, d]``.

    ``Z`` is a Gram factor with ``ZZᵀ ∈ S(G)`` and ``d`` columns. Column ``i`` of
    the entrywise-nonzero rotation ``Q`` is extended by ``α_i·1`` on clique ``i``
    with ``α_i = sqrt((β - ‖q_i‖²)/s_i)``, so every extended column has norm² β.
    """
    sizes = [int(s) for s in sizes]
    d = Z.k
    if len(sizes) != d:
        raise PreconditionError(f"need {d} clique sizes, one per factor column")
    if any(s < 1 for s in sizes):
        raise PreconditionError("clique sizes must be positive")
    if Z.n != G.n:
        raise PreconditionError("factor and graph orders differ")
    if G.isolated_vertices():
        raise PreconditionError(f"graph has isolated vertices {G.isolated_vertices()}")
    from .realizations import pattern_membership

    if not pattern_membership(Z.U @ Z.U.T, G, tolerances.zero_tol, tolerances.nonzero_tol).ok:
        raise PreconditionError("ZZᵀ is not in S(G)")
    H = gr.join(G, gr.cliques_union(sizes))
    last = None
    for attempt in range(RETRY_CAP):
        try:
            Q = entrywise_nonzero_gram(Z, seed=_rng(seed, attempt)).U
            norms = np.sum(Q * Q, axis=0)
            b = float(beta) if beta is not None else 1.0 + float(norms.max())
            if b <= norms.max():
                raise PreconditionError(f"beta={b} must exceed max ‖q_i‖² = {norms.max():g}")
            alpha = np.sqrt((b - norms) / np.asarray(sizes, dtype=float))
            ext = np.zeros((sum(sizes), d))
            off = 0
            for i, s in enumerate(sizes):
                ext[off:off + s, i] = alpha[i]
                off += s
            V = np.vstack([Q, ext])
            prov = _provenance("join-with-cliques", {"sizes": sizes, "beta": b}, seed, attempt=attempt)
            return certify(V @ V.T, H, d, tolerances, prov)
        except (CertificationError, RotationError) as exc:
            last = exc
    raise ConstructionError(f"join_with_cliques failed after {RETRY_CAP} attempts: {last}")


def _empty_join_from_spectrum(G: gr.Graph, target, drop_zero: bool, seed, name: str,
                              tolerances: Tolerances) -> RealizationCertificate:
    if not gr.is_connected(G):
        raise PreconditionError("G must be connected")
    if G.n < 2:
        raise PreconditionError("G needs at least two vertices")
    n = G.n
    last = None
    for attempt in range(RETRY_CAP):
        try:
            A = generic_realization(G, target, seed=_rng(seed, attempt))
            w, V = np.linalg.eigh(A)
            keep = slice(1, n) if drop_zero else slice(0, n)
            # rows √λ_i v_iᵀ are orthogonal and UᵀU = A
            U = np.sqrt(np.clip(w[keep], 0, None))[:, None] * V[:, keep].T
            row_sq = np.sum(U * U, axis=1)
            lam0 = 1.0 + float(row_sq.max())
            D = np.diag(np.sqrt(lam0 - row_sq))
            C = np.hstack([U, D])
            k = U.shape[0]
            H = gr.join(G, gr.empty_graph(k))
            prov = _provenance(name, {"graph6": _g6(G)}, seed, attempt=attempt, lambda0=lam0)
            return certify(C.T @ C, H, k, tolerances, prov)
        except (CertificationError, ConstructionError) as exc:
            last = exc
    raise ConstructionError(f"{name} failed after {RETRY_CAP} attempts: {last}")


def _g6(G):
    from .graph6 import encode_graph6

    return encode_graph6(G)


def join_empty_n(G: gr.Graph, seed=0, tolerances: Tolerances = Tolerances()) -> RealizationCertificate:
    """Realize G ∨ K̄_n (n = |G|) with partition ``[n, n]``."""
    return _empty_join_from_spectrum(G, np.arange(1.0, G.n + 1), False, seed, "join-empty-n", tolerances)


def join_empty_n_minus_1(G: gr.Graph, seed=0, tolerances: Tolerances = Tolerances()) -> RealizationCertificate:
    """Realize G ∨ K̄_{n-1} with partition ``[n, n-1]`` from a realization whose
    smallest eigenvalue is 0."""
    return _empty_join_from_spectrum(G, np.arange(0.0, G.n), True, seed, "join-empty-n-minus-1", tolerances)


# ----------------------------------------------------------------------------
# Ring matrices and joins of clique unions
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class RingMatrix:
    """Circulant k×k matrix with pairwise orthogonal rows of equal norm."""

    order: int
    param: float
    entries: np.ndarray

    @property
    def row_norm_sq(self) -> float:
        return float(np.sum(self.entries[0] ** 2))

    @property
    def p(self) -> Optional[float]:
        return float(self.entries[0, 0]) if self.order == 5 else None

    @property
    def r(self) -> Optional[float]:
        return float(self.entries[0, 3]) if self.order == 5 else None


def order5_coefficients(s: float) -> tuple:
    """``(p, r)`` for the order-5 ring matrix with first row ``(p, -1, s, r, 1)``.

    Orthogonality at circulant shift 1 forces ``r = s/(s+1)``; shift 2 forces
    ``p(s + r) = s - 1 - r``, i.e. ``p = (-s² + s + 1)/(s² + 2s)``.
    """
    r = s / (s + 1)
    p = (-s * s + s + 1) / (s * s + 2 * s)
    return p, r


def ring_matrix(k: int, t: float) -> RingMatrix:
    if k not in (2, 3, 4, 5):
        raise PreconditionError(f"order must be 2..5, got {k}")
    t = float(t)
    if not t > 1:
        raise PreconditionError(f"parameter must exceed 1, got {t}")
    if k == 2:
        first = [1.0, t]
        M = np.array([[1.0, t], [-t, 1.0]])
    else:
        if k == 3:
            first = [t, 1.0, -t / (t + 1)]
        elif k == 4:
            first = [t, -1.0, 1.0 / t, 1.0]
        else:
            p, r = order5_coefficients(t)
            first = [p, -1.0, t, r, 1.0]
        M = np.array([np.roll(first, i) for i in range(k)])
    G = M @ M.T
    if np.max(np.abs(G - np.diag(np.diag(G)))) > 1e-10 * G[0, 0]:
        raise ConstructionError(f"order-{k} ring matrix at {t} has non-orthogonal rows")
    return RingMatrix(k, t, M)


def canonical_blocks(blocks, Ms: Sequence[RingMatrix], tolerances: Tolerances = Tolerances(),
                     theta: float = 1e-8) -> RealizationCertificate:
    """Realize ⋁_j (K_{a_{j,1}} ∪ ... ∪ K_{a_{j,k}}) with partition ``[n-k, k]``.

    ``blocks[j][i]`` is the size of clique ``i`` in join factor ``j``; every
    vertex of that clique gets value ``[M_j]_{h,i}/sqrt(a_{j,i})`` in vector
    ``v_h``.
    """
    blocks = np.asarray(blocks, dtype=int)
    if blocks.ndim != 2 or blocks.shape[0] < 1 or blocks.shape[1] < 1:
        raise PreconditionError("blocks must be an l×k array")
    ell, k = blocks.shape
    if np.any(blocks < 1):
        raise PreconditionError("clique sizes must be positive")
    if len(Ms) != ell:
        raise PreconditionError(f"need {ell} ring matrices, got {len(Ms)}")
    if any(M.order != k for M in Ms):
        raise PreconditionError(f"all ring matrices must have order {k}")
    if len({M.param for M in Ms}) != ell:
        raise PreconditionError("ring matrix parameters must be distinct")
    for a, b in combinations(range(ell), 2):
        P = Ms[a].entries.T @ Ms[b].entries
        if np.min(np.abs(P)) <= theta * np.max(np.abs(P)):
            raise ConstructionError(f"M_{a}ᵀM_{b} has a zero entry")
    norms = [M.row_norm_sq for M in Ms]
    rows = np.array([np.sum(M.entries ** 2, axis=1) for M in Ms])
    if np.max(np.abs(rows - np.asarray(norms)[:, None])) > 1e-10 * max(norms):
        raise ConstructionError("ring matrix rows do not have equal norms")
    cols = []
    for j in range(ell):
        for i in range(k):
            a = blocks[j, i]
            cols.append(np.repeat(Ms[j].entries[:, i][None, :] / np.sqrt(a), a, axis=0))
    V = np.vstack(cols)
    G = gr.join_all([gr.cliques_union([int(x) for x in row]) for row in blocks])
    prov = _provenance("canonical-blocks", {"blocks": blocks.tolist(), "params": [M.param for M in Ms]})
    return certify(V @ V.T, G, k, tolerances, prov)


def example_three_cliques(sizes: Sequence[int], t: Optional[Sequence[float]] = None, seed=0,
                          tolerances: Tolerances = Tolerances()) -> RealizationCertificate:
    """Realize (K_a1 ∪ K_b1 ∪ K_c1) ∨ (K_a2 ∪ K_b2 ∪ K_c2) as ``I - 2Σ v_h v_hᵀ``.

    ``sizes = (a1, b1, c1, a2, b2, c2)``, all > 1; ``t`` are two distinct
    positive reals (default (2, 3)). If an entry required to be nonzero
    vanishes numerically, ``t`` is resampled.
    """
    sizes = [int(s) for s in sizes]
    if len(sizes) != 6 or min(sizes) < 2:
        raise PreconditionError("need six clique sizes, each > 1")
    t = (2.0, 3.0) if t is None else tuple(float(x) for x in t)
    if len(t) != 2 or min(t) <= 0:
        raise PreconditionError("need two positive parameters t1, t2")
    if t[0] == t[1]:
        raise PreconditionError("t1 and t2 must be distinct")
    G = gr.join(gr.cliques_union(sizes[:3]), gr.cliques_union(sizes[3:]))
    rng = _rng(seed)
    last = None
    cur = t
    for attempt in range(RETRY_CAP):
        pieces = []
        for i, ti in enumerate(cur):
            a, b, c = sizes[3 * i: 3 * i + 3]
            m = -ti / (ti + 1)
            vals = [(ti, 1.0, m), (m, ti, 1.0), (1.0, m, ti)]
            pieces.append(np.array([
                np.concatenate([np.full(a, x / np.sqrt(a)), np.full(b, y / np.sqrt(b)), np.full(c, z / np.sqrt(c))])
                for x, y, z in vals
            ]))
        V = np.hstack(pieces)  # 3 × n, rows are v_1, v_2, v_3
        V /= np.linalg.norm(V, axis=1, keepdims=True)
        A = np.eye(G.n) - 2 * V.T @ V
        try:
            prov = _provenance("three-cliques", {"sizes": sizes, "t": [float(x) for x in cur]}, seed, attempt=attempt)
            return certify(A, G, 3, tolerances, prov)
        except CertificationError as exc:
            last = exc
            cur = tuple(np.sort(rng.uniform(1.5, 12.0, 2)))
    raise ConstructionError(f"three_cliques failed after {RETRY_CAP} attempts: {last}")


# ----------------------------------------------------------------------------
# Graphs with holes
# ----------------------------------------------------------------------------

@dataclass(frozen=True)
class HoleParams:
    """Parameters of ((K_a1 minus K_{α,α}) ∪ K_b1) ∨ (K_a2 ∪ K_b2) ∨ ..."""

    alpha: int
    a: tuple
    b: tuple
    w: Optional[tuple] = None

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(int(x) for x in self.a))
        object.__setattr__(self, "b", tuple(int(x) for x in self.b))
        ell = len(self.a)
        w = tuple(float(i + 2) for i in range(ell)) if self.w is None else tuple(float(x) for x in self.w)
        object.__setattr__(self, "w", w)
        if ell < 2 or len(self.b) != ell or len(w) != ell:
            raise PreconditionError("need l >= 2 and matching lengths of a, b, w")
        if min(self.a) <= 2 or min(self.b) <= 2:
            raise PreconditionError("all a_i and b_i must exceed 2")
        if self.alpha < 1 or 2 * self.alpha > self.a[0]:
            raise PreconditionError("need 1 <= alpha and 2*alpha <= a_1")
        if sum(ai * (1 + wi ** 2) for ai, wi in zip(self.a[1:], w[1:])) <= self.alpha * (1 + w[0] ** 2):
            raise PreconditionError("sum_{i>=2} a_i(1+w_i^2) must exceed alpha(1+w_1^2) (a^2 > 0)")


def _two_clique_rows(a: Sequence[int], b: Sequence[int], w: Sequence[float]) -> np.ndarray:
    """Rows v_1, v_2 on the blocks K_{a_i} ∪ K_{b_i}: orthogonal with norm² Σ a_i(1+w_i²)."""
    v1, v2 = [], []
    for ai, bi, wi in zip(a, b, w):
        rho = np.sqrt(ai / bi)
        v1 += [np.ones(ai), np.full(bi, -rho * wi)]
        v2 += [np.full(ai, wi), np.full(bi, rho)]
    return np.vstack([np.concatenate(v1), np.concatenate(v2)])


def _two_clique_join(a, b) -> gr.Graph:
    return gr.join_all([gr.cliques_union([ai, bi]) for ai, bi in zip(a, b)])


def _offsets(a, b) -> list:
    out, off = [], 0
    for ai, bi in zip(a, b):
        out.append((off, off + ai))
        off += ai + bi
    return out


def bipartite_hole(params: HoleParams, seed=0, tolerances: Tolerances = Tolerances()) -> RealizationCertificate:
    """Remove K_{α,α} from the first clique of a join of two-clique unions; partition ``[n-3, 3]``.

    The ``+β`` group is the first α vertices of K_{a_1}, the ``-β`` group the next α.
    """
    a, b, alpha = params.a, params.b, params.alpha
    base = _two_clique_join(a, b)
    plus = range(alpha)
    minus = range(alpha, 2 * alpha)
    hole = sorted((u, v) for u in plus for v in minus)
    G = gr.Graph.from_edges(base.n, base.edges - set(hole))
    (a2_start, _) = _offsets(a, b)[1]
    rng = _rng(seed)
    w = params.w
    last = None
    for attempt in range(RETRY_CAP):
        try:
            p = HoleParams(alpha, a, b, w)
        except PreconditionError as exc:
            last = exc
            w = tuple(np.asarray(params.w) + rng.uniform(0.1, 1.5, len(a)))
            continue
        V = _two_clique_rows(a, b, w)
        beta = np.sqrt(1 + w[0] ** 2)
        a_sq = (sum(ai * (1 + wi ** 2) for ai, wi in zip(a, w)) - 2 * alpha * (1 + w[0] ** 2)) / 2
        v3 = np.zeros(base.n)
        v3[list(plus)] = beta
        v3[list(minus)] = -beta
        v3[a2_start] = np.sqrt(a_sq)
        v3[a2_start + 1] = -np.sqrt(a_sq)
        U = np.vstack([V, v3])
        try:
            prov = _provenance("bipartite-hole", {"alpha": alpha, "a": list(a), "b": list(b), "w": [float(x) for x in p.w]},
                               seed, attempt=attempt, hole=[list(e) for e in hole])
            return certify(U.T @ U, G, 3, tolerances, prov)
        except CertificationError as exc:
            last = exc
            w = tuple(np.asarray(params.w) + rng.uniform(0.1, 1.5, len(a)))
    raise ConstructionError(f"bipartite_hole failed after {RETRY_CAP} attempts: {last}")


def two_edge_beta_sq(norm_sq: float, c: float) -> float:
    """Larger root β² of ``2β⁴ - N β² + 2c² = 0`` (norm equation ``2β² + 2c²/β² = N``)."""
    disc = norm_sq ** 2 - 16 * c ** 2
    if disc < 0:
        raise PreconditionError(
            f"norm equation infeasible: ‖v_1‖² = {norm_sq:g} < 4|1 + w_1 w_2| = {4 * abs(c):g}"
        )
    return (norm_sq + np.sqrt(disc)) / 4


def two_edges_removed(a: Sequence[int], b: Sequence[int], w: Optional[Sequence[float]] = None, seed=0,
                      tolerances: Tolerances = Tolerances()) -> RealizationCertificate:
    """Join of two-clique unions with two disjoint edges removed between K_{a_1} and K_{a_2}.

    Missing edges: (first of K_a1, second of K_a2) and (second of K_a1, first of K_a2).
    The third vector is ``(β, -β)`` on the first two vertices of K_{a_1} and
    ``(γ, -γ)``, ``γ = (1 + w_1 w_2)/β``, on the first two vertices of K_{a_2}.
    """
    a = tuple(int(x) for x in a)
    b = tuple(int(x) for x in b)
    ell = len(a)
    if ell < 2 or len(b) != ell:
        raise PreconditionError("need l >= 2 and len(a) == len(b)")
    if min(a) < 2 or b[1] < 2 or min(b) < 1:
        raise PreconditionError("need a_i >= 2, b_2 >= 2 and b_i >= 1")
    w0 = tuple(float(i + 2) for i in range(ell)) if w is None else tuple(float(x) for x in w)
    if len(w0) != ell:
        raise PreconditionError("need one w per factor")
    base = _two_clique_join(a, b)
    a2 = _offsets(a, b)[1][0]
    removed = [(0, a2 + 1), (1, a2)]
    G = gr.Graph.from_edges(base.n, base.edges - set(removed))
    rng = _rng(seed)
    cur = w0
    last = None
    for attempt in range(RETRY_CAP):
        V = _two_clique_rows(a, b, cur)
        N = float(np.sum(V[0] ** 2))
        c = 1 + cur[0] * cur[1]
        beta_sq = two_edge_beta_sq(N, c)
        beta = np.sqrt(beta_sq)
        gamma = c / beta
        v3 = np.zeros(base.n)
        v3[0], v3[1] = beta, -beta
        v3[a2], v3[a2 + 1] = gamma, -gamma
        U = np.vstack([V, v3])
        try:
            prov = _provenance("two-edges-removed", {"a": list(a), "b": list(b), "w": [float(x) for x in cur]}, seed,
                               attempt=attempt, removed=[list(e) for e in removed])
            return certify(U.T @ U, G, 3, tolerances, prov)
        except CertificationError as exc:
            last = exc
            cur = tuple(np.asarray(w0) + rng.uniform(0.1, 1.5, ell))
    raise ConstructionError(f"two_edges_removed failed after {RETRY_CAP} attempts: {last}")


# ----------------------------------------------------------------------------
# Paths of cliques
# ----------------------------------------------------------------------------

def path_p2_vectors(n: int) -> np.ndarray:
    """The n-1 vectors (columns) with entries 1, 1, 2, -2 on clusters i, i+1."""
    U = np.zeros((2 * n, n - 1))
    for i in range(n - 1):
        U[2 * i: 2 * i + 4, i] = (1.0, 1.0, 2.0, -2.0)
    return U


def path_p2_realization(n: int, tolerances: Tolerances = Tolerances()) -> RealizationCertificate:
    """P_n ⊠ P_2 with spectrum {0^(n+1), 10^(n-1)} (stored normalized)."""
    if n < 2:
        raise PreconditionError("need n >= 2")
    U = path_p2_vectors(n)
    G = gr.strong_product_path_p2(n)
    return certify(U @ U.T, G, n - 1, tolerances, _provenance("path-p2", {"n": n}))


def path_of_cliques(sizes: Sequence[int], tolerances: Tolerances = Tolerances()) -> RealizationCertificate:
    """Path of cliques with cluster sizes ``c_1..c_m`` (each >= 2), partition ``[Σc - (m-1), m-1]``.

    Built from P_m ⊠ P_2 by cloning; vertices are reordered so clusters are contiguous.
    """
    sizes = [int(c) for c in sizes]
    m = len(sizes)
    if m < 2 or min(sizes) < 2:
        raise PreconditionError("need at least two clusters, each of size >= 2")
    cert = path_p2_realization(m, tolerances)
    cluster = [i for i in range(m) for _ in range(2)]
    for i, c in enumerate(sizes):
        for _ in range(c - 2):
            cert = clone_realization(cert, 2 * i)
            cluster.append(i)
    order = sorted(range(cert.n), key=lambda v: (cluster[v], v))
    G = cert.graph.relabel(order)
    G = gr.Graph(G.n, G.edges, [f"cluster {cluster[v]}" for v in order])
    A = cert.matrix[np.ix_(order, order)]
    return certify(A, G, m - 1, tolerances, _provenance("path-of-cliques", {"sizes": sizes}))
