"""Lower bounds on MB(G) and necessary conditions for q(G) = 2, with witnesses."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

from . import graphs as gr
from .errors import GuardError, PreconditionError
from .realizations import BIPARTITION, RealizationCertificate

Q2_GUARD = 128
UNION_SEARCH_MAX = 8
UNION_SEARCH_NODES = 2_000_000
MAX_UNION_WITNESSES = 16

CUT_EDGE = "cut-edge"
COMMON_NEIGHBOUR_DEFICIT = "common-neighbour-deficit"
UNION_DEFICIT = "neighbourhood-union-deficit"


@dataclass(frozen=True)
class ObstructionWitness:
    """A violated necessary condition for q(G) = 2.

    ``lhs > rhs`` is the violated inequality; for a cut edge it reads
    "components after removal (lhs) > 1 (rhs)".
    """

    kind: str
    vertices: tuple
    lhs: int
    rhs: int
    detail: tuple = ()

    def recheck(self, G: gr.Graph) -> bool:
        """True iff the witness still exhibits a violation in G."""
        if self.kind == CUT_EDGE:
            u, v = self.vertices
            if not G.has_edge(u, v):
                return False
            H = gr.Graph(G.n, G.edges - {(min(u, v), max(u, v))})
            return len(gr.components(H)) > len(gr.components(G))
        if self.kind == COMMON_NEIGHBOUR_DEFICIT:
            u, v = self.vertices
            return not G.has_edge(u, v) and len(G.neighbors(u) & G.neighbors(v)) == 1
        if self.kind == UNION_DEFICIT:
            if not gr.is_independent(G, self.vertices):
                return False
            union = set(gr.common_neighborhood_union(G, self.vertices))
            touching = [v for v in self.vertices if G.neighbors(v) & union]
            return 0 < len(union) < len(touching)
        return False

    def to_dict(self) -> dict:
        return {"kind": self.kind, "vertices": list(self.vertices), "lhs": self.lhs, "rhs": self.rhs,
                "detail": list(self.detail)}


def independent_set_bound(G: gr.Graph) -> tuple:
    """``(α(G), maximum independent set)``: an independent set of size k+1 rules out [n-k, k]."""
    S = gr.maximum_independent_set(G)
    return len(S), S


def induced_path_bound(G: gr.Graph) -> tuple:
    """``(edges of a longest induced path, the path)``."""
    path = gr.longest_induced_path(G)
    return max(len(path) - 1, 0), path


def interlacing_join_bound(q_g: int) -> int:
    """Lower bound ``ceil((q(G)+1)/2)`` on q(G ∨ K_1)."""
    if q_g < 1:
        raise PreconditionError("q(G) must be at least 1")
    return math.ceil((q_g + 1) / 2)


def cut_edges(G: gr.Graph) -> list:
    """Bridges of G (Tarjan low-link, iterative)."""
    disc = [-1] * G.n
    low = [0] * G.n
    out = []
    t = 0
    for root in range(G.n):
        if disc[root] >= 0:
            continue
        disc[root] = low[root] = t
        t += 1
        stack = [(root, -1, iter(sorted(G.neighbors(root))))]
        while stack:
            v, parent, it = stack[-1]
            w = next(it, None)
            if w is None:
                stack.pop()
                if parent >= 0:
                    low[parent] = min(low[parent], low[v])
                    if low[v] > disc[parent]:
                        out.append((min(parent, v), max(parent, v)))
                continue
            if w == parent:
                continue
            if disc[w] < 0:
                disc[w] = low[w] = t
                t += 1
                stack.append((w, v, iter(sorted(G.neighbors(w)))))
            else:
                low[v] = min(low[v], disc[w])
    return sorted(out)


@dataclass
class UnionSearch:
    """Outcome of the bounded independent-set search for union deficits."""

    witnesses: list
    max_size: int
    nodes: int
    exhausted: bool


def union_deficits(G: gr.Graph, max_size: int = UNION_SEARCH_MAX, node_budget: int = UNION_SEARCH_NODES,
                   max_witnesses: int = MAX_UNION_WITNESSES) -> UnionSearch:
    """Independent sets S (3 ≤ |S| ≤ max_size) whose pairwise common-neighbourhood
    union U is nonempty and smaller than the number of vertices of S adjacent to U.

    For ``A ∈ S(G)`` with ``A² = A`` the rows of ``A[S, V∖S]`` are pairwise
    orthogonal and overlap only on U, so the rows that meet U give that many
    orthogonal nonzero vectors in R^U.

    Sizes are tried in increasing order and the search stops after the first
    size that yields a witness. Subtrees are pruned once ``|U| >= target`` since
    U only grows with S.
    """
    adj = G.masks
    found: list = []
    nodes = 0
    exhausted = True

    def dfs(S: list, cand: int, union: int, target: int):
        nonlocal nodes, exhausted
        nodes += 1
        if nodes > node_budget:
            exhausted = False
            return
        if len(S) == target:
            size = gr._popcount(union)
            touching = sum(1 for u in S if adj[u] & union)
            if 0 < size < touching:
                found.append(ObstructionWitness(UNION_DEFICIT, tuple(S), touching, size,
                                                tuple(gr._bits(union))))
            return
        while cand and len(found) < max_witnesses and nodes <= node_budget:
            v = (cand & -cand).bit_length() - 1
            cand &= ~(1 << v)
            new_union = union
            for u in S:
                new_union |= adj[u] & adj[v]
            if gr._popcount(new_union) >= target:
                continue
            dfs(S + [v], cand & ~adj[v], new_union, target)

    full = (1 << G.n) - 1
    for target in range(3, max_size + 1):
        dfs([], full, 0, target)
        if found or nodes > node_budget:
            break
    return UnionSearch(found, max_size, nodes, exhausted)


def q2_necessary_conditions(G: gr.Graph, max_size: int = UNION_SEARCH_MAX,
                            node_budget: int = UNION_SEARCH_NODES) -> list:
    """Violations of necessary conditions for q(G) = 2 (an empty list proves nothing).

    Checks: no cut edge; no non-adjacent pair has exactly one common
    neighbour (a unique path of length two); for every independent S with a
    nonempty pairwise common-neighbourhood union U, at most |U| vertices of S
    are adjacent to U (searched up to ``max_size``).
    """
    if G.n > Q2_GUARD:
        raise GuardError(f"q=2 condition checks limited to n <= {Q2_GUARD}")
    if G.n < 3:
        raise PreconditionError("need at least three vertices")
    if not gr.is_connected(G):
        raise PreconditionError("G must be connected")
    out = []
    for u, v in cut_edges(G):
        out.append(ObstructionWitness(CUT_EDGE, (u, v), 2, 1))
    adj = G.masks
    for u in range(G.n):
        for v in range(u + 1, G.n):
            if adj[u] >> v & 1:
                continue
            common = adj[u] & adj[v]
            c = gr._popcount(common)
            if c == 1:
                out.append(ObstructionWitness(COMMON_NEIGHBOUR_DEFICIT, (u, v), 2, c, tuple(gr._bits(common))))
    out.extend(union_deficits(G, max_size, node_budget).witnesses)
    return out


def path_after_dominating_vertex(G: gr.Graph) -> Optional[tuple]:
    """``(v, m)`` if v is adjacent to every other vertex and G - v is a path on m >= 2 vertices."""
    for v in range(G.n):
        if G.degree(v) != G.n - 1:
            continue
        rest = [u for u in range(G.n) if u != v]
        H = G.induced_subgraph(rest)
        m = H.n
        if m >= 2 and H.m == m - 1 and gr.is_connected(H) and all(H.degree(u) <= 2 for u in range(m)):
            return v, m
    return None


@dataclass
class Bound:
    value: int
    source: str
    witness: list

    def to_dict(self) -> dict:
        return {"value": self.value, "source": self.source, "witness": self.witness}


@dataclass
class BoundsReport:
    """Aggregated evidence about MB(G). ``status`` is one of ``exact``,
    ``bounds``, ``q>2 witnessed`` or ``inconsistent``."""

    graph: gr.Graph
    lower: list = field(default_factory=list)
    upper: list = field(default_factory=list)
    obstructions: list = field(default_factory=list)
    q_lower: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def lower_bound(self) -> Optional[int]:
        return max((b.value for b in self.lower), default=None)

    @property
    def upper_bound(self) -> Optional[int]:
        return min((b.value for b in self.upper), default=None)

    @property
    def q_gt_2(self) -> bool:
        return bool(self.obstructions) or any(b.value > 2 for b in self.q_lower)

    @property
    def inconsistent(self) -> bool:
        lo, hi = self.lower_bound, self.upper_bound
        return (lo is not None and hi is not None and lo > hi) or (self.q_gt_2 and hi is not None)

    @property
    def mb(self) -> Optional[int]:
        lo, hi = self.lower_bound, self.upper_bound
        if self.inconsistent or self.q_gt_2 or hi is None:
            return None
        return hi if lo == hi else None

    @property
    def status(self) -> str:
        if self.inconsistent:
            return "inconsistent"
        if self.q_gt_2:
            return "q>2 witnessed"
        return "exact" if self.mb is not None else "bounds"

    def to_dict(self) -> dict:
        from .graph6 import encode_graph6

        return {
            "graph6": encode_graph6(self.graph),
            "n": self.graph.n,
            "status": self.status,
            "mb": self.mb,
            "lower_bound": self.lower_bound,
            "upper_bound": self.upper_bound,
            "lower": [b.to_dict() for b in self.lower],
            "upper": [b.to_dict() for b in self.upper],
            "obstructions": [w.to_dict() for w in self.obstructions],
            "q_lower": [b.to_dict() for b in self.q_lower],
            "notes": list(self.notes),
        }


def bounds_report(G: gr.Graph, certificates: Sequence[RealizationCertificate] = ()) -> BoundsReport:
    rep = BoundsReport(G)
    if G.n < 2:
        rep.notes.append("MB needs at least two vertices")
        return rep
    try:
        val, S = independent_set_bound(G)
        rep.lower.append(Bound(val, "independent-set", S))
    except GuardError as exc:
        rep.notes.append(f"independent-set bound skipped: {exc}")
    try:
        val, path = induced_path_bound(G)
        rep.lower.append(Bound(val, "induced-path", path))
    except GuardError as exc:
        rep.notes.append(f"induced-path bound skipped: {exc}")

    connected = gr.is_connected(G)
    if G.is_complete():
        rep.upper.append(Bound(1, "complete", []))
    elif connected:
        rep.lower.append(Bound(2, "mb2-recognizer-reject", ["not complete"]))
        form = gr.recognize_mb2_form(G)
        if form is None:
            rep.lower.append(Bound(3, "mb2-recognizer-reject", ["not of the MB=2 join form"]))
        else:
            rep.upper.append(Bound(2, "mb2-recognizer", [list(pq) for pq in form]))
    else:
        rep.notes.append("disconnected: recognizers and q=2 conditions skipped")

    if connected and G.n >= 3:
        try:
            rep.obstructions = q2_necessary_conditions(G)
        except GuardError as exc:
            rep.notes.append(f"q=2 conditions skipped: {exc}")
        rep.notes.append(f"union-deficit search bounded at |S| <= {UNION_SEARCH_MAX}")
        dom = path_after_dominating_vertex(G)
        if dom is not None:
            v, m = dom
            rep.q_lower.append(Bound(interlacing_join_bound(m), "interlacing", [v]))

    for cert in certificates:
        if cert.kind == BIPARTITION and cert.graph == G:
            rep.upper.append(Bound(cert.k, "certificate", [cert.provenance.get("name", "certificate")]))
    return rep
