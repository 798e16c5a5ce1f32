"""Simple labeled graphs, the graph families used by the constructions, and
exact combinatorial invariants at desk scale.

Vertices are ``0..n-1``. Every builder documents its vertex order so that
certificates built on top of it are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Optional, Sequence

import numpy as np

from .errors import GuardError, PreconditionError

INDEPENDENCE_GUARD = 64
INDUCED_PATH_GUARD = 24


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """A simple undirected graph on vertices ``0..n-1``.

    ``labels`` are free-form provenance strings and do not take part in
    equality.
    """

    n: int
    edges: frozenset = frozenset()
    labels: Optional[tuple] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "n", int(self.n))
        if self.n < 0:
            raise PreconditionError("vertex count must be nonnegative")
        clean = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise PreconditionError(f"edge {e} has an endpoint outside 0..{self.n - 1}")
            clean.add(_edge(int(u), int(v)))
        object.__setattr__(self, "edges", frozenset(clean))
        if self.labels is not None:
            labels = tuple(str(s) for s in self.labels)
            if len(labels) != self.n:
                raise PreconditionError("need exactly one label per vertex")
            object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable, labels=None) -> "Graph":
        return cls(n, frozenset(_edge(*e) for e in edges), labels)

    @classmethod
    def from_adjacency(cls, adj, labels=None) -> "Graph":
        adj = np.asarray(adj)
        n = adj.shape[0]
        return cls(n, frozenset((i, j) for i in range(n) for j in range(i + 1, n) if adj[i, j]), labels)

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def masks(self) -> tuple:
        """Neighbourhoods as integer bitmasks."""
        nb = [0] * self.n
        for u, v in self.edges:
            nb[u] |= 1 << v
            nb[v] |= 1 << u
        return tuple(nb)

    def has_edge(self, u: int, v: int) -> bool:
        return _edge(u, v) in self.edges

    def neighbors(self, v: int) -> set:
        return set(_bits(self.masks[v]))

    def degree(self, v: int) -> int:
        return bin(self.masks[v]).count("1")

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n, self.n), dtype=int)
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1
        return A

    def sorted_edges(self) -> list:
        return sorted(self.edges)

    def isolated_vertices(self) -> list:
        return [v for v in range(self.n) if self.masks[v] == 0]

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def relabel(self, order: Sequence[int]) -> "Graph":
        """Graph whose vertex ``i`` is old vertex ``order[i]``."""
        pos = {old: new for new, old in enumerate(order)}
        if sorted(pos) != list(range(self.n)):
            raise PreconditionError("order must be a permutation of the vertices")
        labels = None if self.labels is None else tuple(self.labels[o] for o in order)
        return Graph.from_edges(self.n, ((pos[u], pos[v]) for u, v in self.edges), labels)

    def induced_subgraph(self, vertices: Sequence[int]) -> "Graph":
        vertices = list(vertices)
        pos = {v: i for i, v in enumerate(vertices)}
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        labels = tuple(str(v) for v in vertices) if self.labels is None else tuple(self.labels[v] for v in vertices)
        return Graph.from_edges(len(vertices), edges, labels)


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _popcount(mask: int) -> int:
    return bin(mask).count("1")


# ----------------------------------------------------------------------------
# Builders
# ----------------------------------------------------------------------------

def empty_graph(n: int) -> Graph:
    return Graph(n)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, ((i, i + 1) for i in range(n - 1)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise PreconditionError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def hypercube_graph(d: int) -> Graph:
    """The d-cube; vertex ``x`` is the bitstring of ``x`` (most significant bit first)."""
    n = 1 << d
    edges = [(x, x ^ (1 << b)) for x in range(n) for b in range(d) if x < x ^ (1 << b)]
    return Graph.from_edges(n, edges, [format(x, f"0{d}b") for x in range(n)])


def normalize_parts(parts: Iterable[int]) -> list:
    parts = sorted((int(p) for p in parts), reverse=True)
    if not parts:
        raise PreconditionError("need at least one part")
    if parts[-1] < 1:
        raise PreconditionError("part sizes must be positive")
    return parts


def complete_multipartite(parts: Iterable[int]) -> Graph:
    """K_{p_1,...,p_l}; parts are sorted non-increasing and laid out consecutively."""
    parts = normalize_parts(parts)
    owner = [i for i, p in enumerate(parts) for _ in range(p)]
    n = len(owner)
    edges = [(u, v) for u, v in combinations(range(n), 2) if owner[u] != owner[v]]
    return Graph.from_edges(n, edges, [f"part {i}" for i in owner])


def _labels_or_index(G: Graph, prefix: str) -> list:
    if G.labels is None:
        return [f"{prefix}{v}" for v in range(G.n)]
    return list(G.labels)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    """G on vertices ``0..n_G-1`` followed by H shifted by ``n_G``."""
    off = G.n
    edges = list(G.edges) + [(u + off, v + off) for u, v in H.edges]
    labels = None
    if G.labels is not None or H.labels is not None:
        labels = _labels_or_index(G, "g") + _labels_or_index(H, "h")
    return Graph.from_edges(G.n + H.n, edges, labels)


def join(G: Graph, H: Graph) -> Graph:
    """Disjoint union plus every edge between G and H (same vertex order as the union)."""
    U = disjoint_union(G, H)
    cross = [(u, G.n + v) for u in range(G.n) for v in range(H.n)]
    return Graph.from_edges(U.n, list(U.edges) + cross, U.labels)


def join_all(graphs: Sequence[Graph]) -> Graph:
    out = graphs[0]
    for g in graphs[1:]:
        out = join(out, g)
    return out


def union_all(graphs: Sequence[Graph]) -> Graph:
    out = graphs[0]
    for g in graphs[1:]:
        out = disjoint_union(out, g)
    return out


def cliques_union(sizes: Sequence[int]) -> Graph:
    """K_{s_1} ∪ K_{s_2} ∪ ... laid out consecutively."""
    return union_all([complete_graph(s) for s in sizes])


def complement(G: Graph) -> Graph:
    edges = [e for e in combinations(range(G.n), 2) if e not in G.edges]
    return Graph.from_edges(G.n, edges, G.labels)


def clone_vertex(G: Graph, v: int) -> Graph:
    """Append a new vertex ``n`` adjacent to the closed neighbourhood N[v]."""
    if not 0 <= v < G.n:
        raise PreconditionError(f"vertex {v} not in graph of order {G.n}")
    new = G.n
    edges = list(G.edges) + [(u, new) for u in G.neighbors(v)] + [(v, new)]
    labels = None
    if G.labels is not None:
        labels = list(G.labels) + [G.labels[v] + "'"]
    return Graph.from_edges(G.n + 1, edges, labels)


def strong_product_path_p2(n: int) -> Graph:
    """P_n ⊠ P_2 with vertex order (1, 1', 2, 2', ..., n, n') mapped to 0..2n-1."""
    if n < 1:
        raise PreconditionError("n must be positive")
    edges = [(2 * i, 2 * i + 1) for i in range(n)]
    for i in range(n - 1):
        for a in (2 * i, 2 * i + 1):
            for b in (2 * i + 2, 2 * i + 3):
                edges.append((a, b))
    labels = [f"{i + 1}{s}" for i in range(n) for s in ("", "'")]
    return Graph.from_edges(2 * n, edges, labels)


# ----------------------------------------------------------------------------
# Structure
# ----------------------------------------------------------------------------

def components(G: Graph) -> list:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    seen = 0
    out = []
    for s in range(G.n):
        if seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= G.masks[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(sorted(_bits(comp)))
    return out


def is_connected(G: Graph) -> bool:
    return G.n <= 1 or len(components(G)) == 1


def join_components(G: Graph) -> list:
    """Vertex sets of the maximal join factors (components of the complement)."""
    return components(complement(G))


def join_factorize(G: Graph) -> list:
    """Maximal join decomposition of G as induced subgraphs, in order of smallest vertex.

    Each factor's labels are the original vertex indices (or labels).
    """
    return [G.induced_subgraph(c) for c in join_components(G)]


def _is_clique_union(G: Graph) -> Optional[list]:
    """Clique sizes if G is a disjoint union of cliques, else None."""
    sizes = []
    for comp in components(G):
        c = len(comp)
        if sum(G.degree(v) for v in comp) != c * (c - 1):
            return None
        sizes.append(c)
    return sizes


def recognize_mb2_form(G: Graph) -> Optional[list]:
    """Decide whether a connected G is (K_p1 ∪ K_q1) ∨ ... ∨ (K_pk ∪ K_qk), k > 1,
    excluding complete graphs and (K_p ∪ K_q) ∨ K_1.

    Returns one ``(p, q)`` pair per maximal join factor (``q = 0`` for a single
    vertex) when G has that form, otherwise ``None``.
    """
    if not is_connected(G):
        raise PreconditionError("recognize_mb2_form needs a connected graph")
    if G.n == 0 or G.is_complete():
        return None
    factors = join_factorize(G)
    if len(factors) < 2:
        return None
    witness = []
    for f in factors:
        sizes = _is_clique_union(f)
        if sizes is None or len(sizes) > 2:
            return None
        witness.append((sizes[0], sizes[1]) if len(sizes) == 2 else (sizes[0], 0))
    two = sum(1 for _, q in witness if q > 0)
    single = len(witness) - two
    if two == 1 and single == 1:
        return None
    return witness


# ----------------------------------------------------------------------------
# Exact invariants
# ----------------------------------------------------------------------------

def _color_sort(cand: int, adj: Sequence[int]):
    """Greedy sequential colouring of ``cand``; returns (vertices, colour bounds)."""
    order, bounds = [], []
    color = 0
    rest = cand
    while rest:
        color += 1
        avail = rest
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= ~adj[v] & ~(1 << v)
            rest &= ~(1 << v)
            order.append(v)
            bounds.append(color)
    return order, bounds


def _max_clique(n: int, adj: Sequence[int]) -> int:
    best = [0, 0]

    def expand(clique: int, size: int, cand: int):
        order, bounds = _color_sort(cand, adj)
        for idx in range(len(order) - 1, -1, -1):
            if size + bounds[idx] <= best[0]:
                return
            v = order[idx]
            new = cand & adj[v]
            if new:
                expand(clique | (1 << v), size + 1, new)
            elif size + 1 > best[0]:
                best[0], best[1] = size + 1, clique | (1 << v)
            cand &= ~(1 << v)

    if n:
        expand(0, 0, (1 << n) - 1)
    return best[1]


def maximum_independent_set(G: Graph) -> list:
    """One maximum independent set, by branch and bound with colouring bounds."""
    if G.n > INDEPENDENCE_GUARD:
        raise GuardError(f"exact independence search limited to n <= {INDEPENDENCE_GUARD}")
    full = (1 << G.n) - 1
    comp_adj = [full & ~G.masks[v] & ~(1 << v) for v in range(G.n)]
    return sorted(_bits(_max_clique(G.n, comp_adj)))


def independence_number(G: Graph) -> int:
    return len(maximum_independent_set(G))


def is_independent(G: Graph, S: Iterable[int]) -> bool:
    S = list(S)
    return all(not G.has_edge(u, v) for u, v in combinations(S, 2))


def longest_induced_path(G: Graph) -> list:
    """Vertices of a longest induced path (its length in edges is ``len - 1``)."""
    if G.n > INDUCED_PATH_GUARD:
        raise GuardError(f"exact induced-path search limited to n <= {INDUCED_PATH_GUARD}")
    if G.n == 0:
        return []
    adj = G.masks
    best = [[0]]

    def extend(path: list, inside: int):
        if len(path) > len(best[0]):
            best[0] = list(path)
        last = path[-1]
        body = inside & ~(1 << last)
        for w in _bits(adj[last] & ~inside):
            if adj[w] & body:
                continue
            path.append(w)
            extend(path, inside | (1 << w))
            path.pop()

    for s in range(G.n):
        extend([s], 1 << s)
    return best[0]


def longest_induced_path_length(G: Graph) -> int:
    return max(len(longest_induced_path(G)) - 1, 0)


def common_neighborhood_union(G: Graph, S: Iterable[int]) -> list:
    """Union over unordered pairs of S of N(u) ∩ N(v); S must be independent."""
    S = list(S)
    if not is_independent(G, S):
        raise PreconditionError("S is not an independent set")
    acc = 0
    for u, v in combinations(S, 2):
        acc |= G.masks[u] & G.masks[v]
    return sorted(_bits(acc))
