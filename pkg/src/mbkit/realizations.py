"""Pattern membership A ∈ S(G), realization certificates, spectrum rescaling
and cloning of realizations."""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from typing import Optional

import numpy as np

from . import graphs as gr
from .errors import CertificationError, PreconditionError
from .graph6 import encode_graph6, parse_graph6
from .spectra import (
    MultiplicityPartition,
    as_symmetric,
    cluster_multiplicities,
    eigendecompose,
)

BIPARTITION = "bipartition"
THREE_EIGENVALUE = "three-eigenvalue"


@dataclass(frozen=True)
class Tolerances:
    """Relative thresholds; ``cluster_tol=None`` means ``1e-6·max(1, spread)``."""

    zero_tol: float = 1e-9
    nonzero_tol: float = 1e-8
    cluster_tol: Optional[float] = None

    def to_dict(self):
        return {"zero_tol": self.zero_tol, "nonzero_tol": self.nonzero_tol, "cluster_tol": self.cluster_tol}


@dataclass(frozen=True)
class Violation:
    i: int
    j: int
    kind: str  # "must-be-zero" | "must-be-nonzero"
    value: float


@dataclass(frozen=True)
class PatternReport:
    violations: tuple
    zero_tol: float
    nonzero_tol: float
    scale: float

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_dict(self):
        return {
            "ok": self.ok,
            "scale": self.scale,
            "zero_tol": self.zero_tol,
            "nonzero_tol": self.nonzero_tol,
            "violations": [[v.i, v.j, v.kind, v.value] for v in self.violations],
        }


def pattern_membership(A, G: gr.Graph, zero_tol: float = 1e-9, nonzero_tol: float = 1e-8) -> PatternReport:
    """Check the off-diagonal zero/nonzero pattern of ``A`` against ``G``.

    Thresholds are relative to ``max|a_ij|``; the diagonal is unconstrained.
    """
    A = np.asarray(A, dtype=float)
    if A.shape != (G.n, G.n):
        raise PreconditionError(f"matrix of shape {A.shape} does not match a graph on {G.n} vertices")
    scale = float(np.max(np.abs(A), initial=0.0))
    mag = np.abs(A)
    adj = G.adjacency().astype(bool)
    iu, ju = np.triu_indices(G.n, 1)
    edge = adj[iu, ju]
    vals = mag[iu, ju]
    bad_zero = ~edge & (vals > zero_tol * scale)
    bad_nonzero = edge & ~(vals > nonzero_tol * scale)
    out = []
    for idx in np.flatnonzero(bad_zero | bad_nonzero):
        i, j = int(iu[idx]), int(ju[idx])
        out.append(Violation(i, j, "must-be-nonzero" if edge[idx] else "must-be-zero", float(A[i, j])))
    return PatternReport(tuple(out), zero_tol, nonzero_tol, scale)


def plain(obj):
    """Recursively convert numpy scalars/arrays and tuples into JSON-ready values."""
    if isinstance(obj, dict):
        return {str(k): plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return plain(obj.tolist())
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.floating):
        return float(obj)
    return obj


@dataclass(frozen=True)
class RealizationCertificate:
    """A graph, a matrix in S(graph), and its verified eigenvalue multiplicities.

    Bipartition certificates are stored normalized: the eigenvalue of
    multiplicity ``n-k`` is ``eigenvalues[0]`` and the one of multiplicity ``k``
    is ``eigenvalues[1]`` (``(0, 1)`` unless rescaled).
    """

    graph: gr.Graph
    matrix: np.ndarray
    partition: MultiplicityPartition
    k: Optional[int]
    eigenvalues: tuple
    tolerances: Tolerances = Tolerances()
    provenance: dict = field(default_factory=dict)
    kind: str = BIPARTITION

    @property
    def n(self) -> int:
        return self.graph.n

    @property
    def multiplicities(self) -> list:
        return self.partition.multiplicities

    def rank(self, tol: Optional[float] = None) -> int:
        w = np.linalg.eigvalsh(self.matrix)
        if tol is None:
            tol = self.partition.tol
        base = self.eigenvalues[0] if self.kind == BIPARTITION else 0.0
        return int(np.sum(np.abs(w - base) > tol))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "graph6": encode_graph6(self.graph),
            "n": self.n,
            "k": self.k,
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "multiplicities": self.multiplicities,
            "matrix": [[float(x) for x in row] for row in self.matrix],
            "tolerances": self.tolerances.to_dict(),
            "provenance": plain(self.provenance),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)


def _check_pattern(A, G, tols: Tolerances):
    report = pattern_membership(A, G, tols.zero_tol, tols.nonzero_tol)
    if not report.ok:
        head = ", ".join(f"({v.i},{v.j}) {v.kind} {v.value:.3g}" for v in report.violations[:5])
        raise CertificationError(f"pattern violations: {head}", report=report)
    return report


def _snap(A, G) -> np.ndarray:
    """Set the (already verified, sub-tolerance) off-pattern entries to exact zeros."""
    N = ~G.adjacency().astype(bool)
    np.fill_diagonal(N, False)
    A = A.copy()
    A[N] = 0.0
    return A


def _partition(A, tols: Tolerances) -> MultiplicityPartition:
    part = cluster_multiplicities(eigendecompose(A), tols.cluster_tol)
    if part.ill_separated:
        raise CertificationError("eigenvalue clusters are ill-separated", partition=part)
    return part


def certify(A, G: gr.Graph, k: int, tolerances: Tolerances = Tolerances(), provenance=None,
            normalize: bool = True) -> RealizationCertificate:
    """Certify that ``A ∈ S(G)`` has spectrum ``{λ_a^(n-k), λ_b^(k)}``.

    With ``normalize`` the stored matrix is the affine image sending
    ``λ_a → 0`` and ``λ_b → 1``; the original pair goes into the provenance.
    When ``n - k == k`` the smaller eigenvalue plays ``λ_a``.
    """
    A = as_symmetric(A)
    n = G.n
    if A.shape != (n, n):
        raise PreconditionError(f"matrix of shape {A.shape} does not match a graph on {n} vertices")
    if not 1 <= k <= n // 2:
        raise CertificationError(f"claimed multiplicity k={k} outside 1..{n // 2}")
    _check_pattern(A, G, tolerances)
    A = _snap(A, G)
    part = _partition(A, tolerances)
    if part.multiplicities != [n - k, k]:
        raise CertificationError(
            f"spectrum has multiplicities {part.multiplicities}, expected {[n - k, k]}", partition=part
        )
    lam_a, lam_b = part.values
    prov = dict(provenance or {})
    if normalize and (lam_a, lam_b) != (0.0, 1.0):
        alpha = 1.0 / (lam_b - lam_a)
        A = alpha * A - alpha * lam_a * np.eye(n)
        prov.setdefault("original_eigenvalues", [lam_a, lam_b])
        _check_pattern(A, G, tolerances)
        part = _partition(A, tolerances)
        lam_a, lam_b = 0.0, 1.0
    return RealizationCertificate(G, A, part, k, (float(lam_a), float(lam_b)), tolerances, prov)


def certify_spectrum(A, G: gr.Graph, expected: dict, tolerances: Tolerances = Tolerances(),
                     provenance=None, atol: float = 1e-8) -> RealizationCertificate:
    """Certify ``A ∈ S(G)`` with the exact multi-eigenvalue spectrum ``expected``
    (``{eigenvalue: multiplicity}``, zero multiplicities ignored)."""
    A = as_symmetric(A)
    if A.shape != (G.n, G.n):
        raise PreconditionError(f"matrix of shape {A.shape} does not match a graph on {G.n} vertices")
    _check_pattern(A, G, tolerances)
    A = _snap(A, G)
    part = _partition(A, tolerances)
    want = sorted(((float(v), m) for v, m in expected.items() if m > 0), key=lambda p: (-p[1], p[0]))
    got = list(part.pairs)
    if [m for _, m in got] != [m for _, m in want] or any(
        abs(a - b) > atol for (a, _), (b, _) in zip(got, want)
    ):
        raise CertificationError(f"spectrum {got} does not match {want}", partition=part)
    return RealizationCertificate(
        G, A, part, None, tuple(v for v, _ in want), tolerances, dict(provenance or {}), THREE_EIGENVALUE
    )


def recertify(cert: RealizationCertificate) -> RealizationCertificate:
    """Re-run every check on the stored matrix, without renormalizing."""
    if cert.kind == BIPARTITION:
        out = certify(cert.matrix, cert.graph, cert.k, cert.tolerances, cert.provenance, normalize=False)
        if np.max(np.abs(np.subtract(out.eigenvalues, cert.eigenvalues))) > 1e-8 * max(
            1.0, float(np.max(np.abs(cert.eigenvalues)))
        ):
            raise CertificationError(
                f"stored eigenvalues {list(cert.eigenvalues)} disagree with computed {list(out.eigenvalues)}",
                partition=out.partition,
            )
        return replace(out, eigenvalues=cert.eigenvalues)
    expected = dict(zip(cert.eigenvalues, cert.multiplicities))
    return certify_spectrum(cert.matrix, cert.graph, expected, cert.tolerances, cert.provenance)


def rescale_spectrum(cert: RealizationCertificate, mu1: float, mu2: float) -> RealizationCertificate:
    """Affine image ``αA + βI`` sending the (n-k)-fold eigenvalue to ``mu1`` and the
    k-fold one to ``mu2``. Off-diagonal pattern is preserved since ``α ≠ 0``."""
    if cert.kind != BIPARTITION:
        raise PreconditionError("only bipartition certificates can be rescaled")
    if mu1 == mu2:
        raise PreconditionError("target eigenvalues must be distinct")
    lam_a, lam_b = cert.eigenvalues
    alpha = (mu2 - mu1) / (lam_b - lam_a)
    if alpha == 0 or not np.isfinite(alpha):
        raise PreconditionError("degenerate rescaling")
    beta = mu1 - alpha * lam_a
    A = alpha * cert.matrix + beta * np.eye(cert.n)
    prov = dict(cert.provenance)
    prov.setdefault("original_eigenvalues", list(cert.eigenvalues))
    out = certify(A, cert.graph, cert.k, cert.tolerances, prov, normalize=False)
    return replace(out, eigenvalues=(float(mu1), float(mu2)))


def gram_factor_of(cert: RealizationCertificate):
    """Gram factor of the normalized (0/1) form of a bipartition certificate."""
    from .spectra import gram_extract

    if cert.kind != BIPARTITION:
        raise PreconditionError("Gram factors exist only for bipartition certificates")
    A = cert.matrix
    if tuple(cert.eigenvalues) != (0.0, 1.0):
        A = rescale_spectrum(cert, 0.0, 1.0).matrix
    return gram_extract(A, cert.k)


def clone_realization(cert: RealizationCertificate, v: int) -> RealizationCertificate:
    """Realize ``clone_vertex(G, v)`` with partition ``[n+1-k, k]``.

    Row ``u_v`` of the Gram factor is replaced by two copies of ``u_v/√2``
    (the clone is appended as the last vertex), which leaves ``UᵀU`` unchanged.
    """
    if not 0 <= v < cert.n:
        raise PreconditionError(f"vertex {v} not in graph of order {cert.n}")
    F = gram_factor_of(cert)
    U = F.U
    row = U[v]
    if np.linalg.norm(row) <= 1e-8 * np.sqrt(F.norm_sq):
        raise PreconditionError(f"vertex {v} has a zero Gram row and cannot be cloned")
    U2 = np.vstack([U, row / np.sqrt(2)])
    U2[v] = row / np.sqrt(2)
    H = gr.clone_vertex(cert.graph, v)
    prov = {
        "name": "clone",
        "params": {"vertex": v},
        "seed": cert.provenance.get("seed"),
        "base": cert.provenance,
    }
    return certify(U2 @ U2.T, H, cert.k, cert.tolerances, prov)


# ----------------------------------------------------------------------------
# JSON
# ----------------------------------------------------------------------------

def certificate_from_dict(d: dict) -> RealizationCertificate:
    """Parse a certificate dict and re-verify it from the raw matrix and graph6."""
    for key in ("graph6", "n", "eigenvalues", "multiplicities", "matrix"):
        if key not in d:
            raise CertificationError(f"certificate is missing field {key!r}")
    G = parse_graph6(d["graph6"])
    if G.n != d["n"]:
        raise CertificationError(f"graph6 has {G.n} vertices but n={d['n']}")
    A = np.array(d["matrix"], dtype=float)
    if A.shape != (G.n, G.n):
        raise CertificationError(f"matrix shape {A.shape} does not match n={G.n}")
    t = d.get("tolerances") or {}
    tols = Tolerances(t.get("zero_tol", 1e-9), t.get("nonzero_tol", 1e-8), t.get("cluster_tol"))
    prov = d.get("provenance") or {}
    kind = d.get("kind", BIPARTITION)
    if kind == BIPARTITION:
        k = d.get("k")
        if not isinstance(k, int):
            raise CertificationError("bipartition certificate needs an integer k")
        cert = certify(A, G, k, tols, prov, normalize=False)
        stored = tuple(float(x) for x in d["eigenvalues"])
        if cert.multiplicities != list(d["multiplicities"]):
            raise CertificationError(
                f"multiplicities {cert.multiplicities} differ from stored {d['multiplicities']}",
                partition=cert.partition,
            )
        if np.max(np.abs(np.subtract(cert.eigenvalues, stored))) > 1e-8 * max(1.0, max(map(abs, stored))):
            raise CertificationError(
                f"eigenvalues {list(cert.eigenvalues)} differ from stored {list(stored)}",
                partition=cert.partition,
            )
        return replace(cert, eigenvalues=stored)
    expected = dict(zip((float(x) for x in d["eigenvalues"]), d["multiplicities"]))
    return certify_spectrum(A, G, expected, tols, prov)


def load_certificate(path) -> RealizationCertificate:
    with open(path) as fh:
        return certificate_from_dict(json.load(fh))


def save_certificate(cert: RealizationCertificate, path) -> None:
    with open(path, "w") as fh:
        fh.write(cert.to_json())
        fh.write("\n")
