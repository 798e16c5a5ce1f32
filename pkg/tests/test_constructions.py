import numpy as np
import pytest
from hypothesis import given, strategies as st

from mbkit import constructions as cons
from mbkit import graphs as gr
from mbkit.errors import PreconditionError
from mbkit.realizations import gram_factor_of, recertify

from conftest import connected_graphs


def missing_edges(cert, base):
    return sorted(base.edges - cert.graph.edges)


def ring_cert(k, ts=(2, 3), blocks=None):
    blocks = blocks if blocks is not None else [[1] * k for _ in ts]
    return cons.canonical_blocks(blocks, [cons.ring_matrix(k, t) for t in ts])


# ---------------------------------------------------------------- multipartite

@pytest.mark.parametrize("parts,expected", [
    ([2, 2], {-1: 1, 0: 2, 1: 1}),
    ([1, 1], {-1: 1, 1: 1}),
    ([3, 2, 1], {-1: 2, 0: 3, 2: 1}),
])
def test_multipartite_examples(parts, expected):
    cert = cons.multipartite_three_eigs(parts)
    got = dict(zip(np.round(cert.partition.values, 8), cert.multiplicities))
    assert got == expected


def test_multipartite_needs_two_parts():
    with pytest.raises(PreconditionError):
        cons.multipartite_three_eigs([3])


# ---------------------------------------------------------------- joins

def test_join_equal_mb_examples():
    k33 = ring_cert(3)
    assert k33.graph == gr.complete_multipartite([3, 3])
    j = cons.join_equal_mb(k33, k33)
    assert j.multiplicities == [9, 3]
    assert j.graph == gr.complete_multipartite([3, 3, 3, 3])
    assert j.provenance["idempotence_residual"] <= 1e-8
    k2 = cons.certify(np.ones((2, 2)), gr.complete_graph(2), 1)
    assert cons.join_equal_mb(k2, k2).graph == gr.complete_graph(4)
    c4 = ring_cert(2)
    cc = cons.join_equal_mb(c4, c4)
    assert cc.multiplicities == [6, 2] and cc.graph == gr.join(c4.graph, c4.graph)


def test_join_equal_mb_errors():
    with pytest.raises(PreconditionError):
        cons.join_equal_mb(ring_cert(2), ring_cert(3))
    iso = cons.certify(np.diag([1.0, 0, 0]), gr.empty_graph(3), 1)
    with pytest.raises(PreconditionError):
        cons.join_equal_mb(iso, iso)


def test_join_pair_matrix_is_twice_idempotent():
    A = ring_cert(3).matrix
    C, R = cons.join_pair_matrix(A, A, 3, seed=1)
    assert np.max(np.abs(C @ C - 2 * C)) <= 1e-8
    assert np.max(np.abs(R.T @ R - np.eye(3))) <= 1e-10


def test_join_with_cliques_examples():
    c4 = ring_cert(2)
    j = cons.join_with_cliques(c4.graph, gram_factor_of(c4), [1, 1])
    assert j.n == 6 and j.multiplicities == [4, 2]
    k33 = ring_cert(3)
    j = cons.join_with_cliques(k33.graph, gram_factor_of(k33), [1, 1, 1])
    assert j.multiplicities == [6, 3]
    # three K_1 cliques form an independent set, so this is K_{3,3,3}
    assert j.graph == gr.complete_multipartite([3, 3, 3])
    j = cons.join_with_cliques(c4.graph, gram_factor_of(c4), [3, 2])
    assert j.n == 9 and j.multiplicities == [7, 2]
    with pytest.raises(PreconditionError):
        cons.join_with_cliques(c4.graph, gram_factor_of(c4), [1, 1], beta=0.1)
    with pytest.raises(PreconditionError):
        cons.join_with_cliques(c4.graph, gram_factor_of(c4), [1])


def test_join_with_empty_examples():
    c4 = ring_cert(2)
    assert cons.join_with_empty(c4).graph == gr.complete_multipartite([2, 2, 2])
    assert cons.join_with_empty(ring_cert(3)).multiplicities == [6, 3]
    k2 = cons.certify(np.ones((2, 2)), gr.complete_graph(2), 1)
    with pytest.raises(PreconditionError):
        cons.join_with_empty(k2)


def test_join_empty_n_examples():
    a = cons.join_empty_n(gr.path_graph(2))
    assert a.n == 4 and a.multiplicities == [2, 2]
    b = cons.join_empty_n(gr.path_graph(3))
    assert b.n == 6 and b.multiplicities == [3, 3]
    with pytest.raises(PreconditionError):
        cons.join_empty_n(gr.empty_graph(2))


def test_join_empty_n_minus_1_examples():
    t = cons.join_empty_n_minus_1(gr.path_graph(2))
    assert t.graph == gr.complete_graph(3) and t.multiplicities == [2, 1]
    assert cons.join_empty_n_minus_1(gr.path_graph(3)).multiplicities == [3, 2]
    c = cons.join_empty_n_minus_1(gr.cycle_graph(4))
    assert c.n == 7 and c.multiplicities == [4, 3]


@given(connected_graphs(min_n=2, max_n=6), st.integers(0, 50))
def test_empty_joins_property(G, seed):
    a = cons.join_empty_n(G, seed)
    assert a.graph == gr.join(G, gr.empty_graph(G.n)) and a.multiplicities == [G.n, G.n]
    b = cons.join_empty_n_minus_1(G, seed)
    assert b.graph == gr.join(G, gr.empty_graph(G.n - 1)) and b.multiplicities == [G.n, G.n - 1]


# ---------------------------------------------------------------- ring matrices

def test_ring_matrix_examples():
    assert cons.ring_matrix(2, 2).entries.tolist() == [[1, 2], [-2, 1]]
    M = cons.ring_matrix(3, 2).entries
    assert abs(M[0] @ M[1]) < 1e-12
    with pytest.raises(PreconditionError, match="order must be 2..5"):
        cons.ring_matrix(6, 2)
    with pytest.raises(PreconditionError):
        cons.ring_matrix(3, 1)


def test_order5_coefficients_make_rows_orthogonal():
    for s in (1.5, 2, 3, 7):
        M = cons.ring_matrix(5, s).entries
        G = M @ M.T
        assert np.max(np.abs(G - np.diag(np.diag(G)))) < 1e-10
    assert cons.ring_matrix(5, 2).r == pytest.approx(2 / 3)


@given(st.sampled_from([2, 3, 4, 5]), st.floats(1.05, 50))
def test_ring_rows_orthogonal_equal_norm(k, t):
    M = cons.ring_matrix(k, t).entries
    G = M @ M.T
    scale = G[0, 0]
    assert np.max(np.abs(G - scale * np.eye(k))) <= 1e-10 * scale


def test_canonical_blocks_examples():
    a = ring_cert(2)
    assert a.n == 4 and a.multiplicities == [2, 2] and a.graph == gr.cycle_graph(4).relabel([0, 2, 1, 3])
    b = cons.canonical_blocks([[2, 3, 2], [3, 2, 3]], [cons.ring_matrix(3, 2), cons.ring_matrix(3, 3)])
    assert b.multiplicities == [b.n - 3, 3]
    c = ring_cert(5)
    assert c.multiplicities == [5, 5]


def test_canonical_blocks_errors():
    with pytest.raises(PreconditionError):
        cons.canonical_blocks([[1, 1], [1, 1]], [cons.ring_matrix(2, 2), cons.ring_matrix(2, 2)])
    with pytest.raises(PreconditionError):
        cons.canonical_blocks([[1, 1], [1, 1]], [cons.ring_matrix(2, 2)])
    with pytest.raises(PreconditionError):
        cons.canonical_blocks([[0, 1], [1, 1]], [cons.ring_matrix(2, 2), cons.ring_matrix(2, 3)])


@given(st.sampled_from([2, 3, 4, 5]), st.integers(2, 3), st.data())
def test_canonical_blocks_property(k, ell, data):
    blocks = [[data.draw(st.integers(1, 3)) for _ in range(k)] for _ in range(ell)]
    cert = cons.canonical_blocks(blocks, [cons.ring_matrix(k, t) for t in cons.DEFAULT_T[:ell]])
    assert cert.multiplicities == [cert.n - k, k]
    assert cert.graph == gr.join_all([gr.cliques_union(r) for r in blocks])


def test_canonical_blocks_all_ones_is_multipartite():
    cert = ring_cert(3, ts=(2, 3, 5))
    assert cert.graph == gr.complete_multipartite([3, 3, 3])


# ---------------------------------------------------------------- three cliques

def test_three_cliques_examples():
    a = cons.example_three_cliques([2] * 6, (2, 3))
    assert a.n == 12 and a.multiplicities == [9, 3]
    assert a.provenance["original_eigenvalues"] == pytest.approx([1, -1])
    b = cons.example_three_cliques([2, 3, 4, 2, 3, 4], (2, 5))
    assert b.multiplicities == [15, 3]
    with pytest.raises(PreconditionError):
        cons.example_three_cliques([2] * 6, (2, 2))
    with pytest.raises(PreconditionError):
        cons.example_three_cliques([1, 2, 2, 2, 2, 2])


# ---------------------------------------------------------------- holes

@pytest.mark.parametrize("alpha,w,count", [(1, (1, 2), 1), (2, None, 4)])
def test_bipartite_hole_examples(alpha, w, count):
    p = cons.HoleParams(alpha, (4, 3), (3, 3), w)
    cert = cons.bipartite_hole(p)
    base = gr.join(gr.cliques_union([4, 3]), gr.cliques_union([3, 3]))
    miss = missing_edges(cert, base)
    assert len(miss) == count == alpha * alpha
    assert miss == sorted(tuple(e) for e in cert.provenance["hole"])
    assert cert.multiplicities == [cert.n - 3, 3]


def test_hole_params_validation():
    with pytest.raises(PreconditionError):
        cons.HoleParams(1, (4, 3), (2, 3))
    with pytest.raises(PreconditionError):
        cons.HoleParams(3, (5, 3), (3, 3))
    with pytest.raises(PreconditionError):  # a² ≤ 0
        cons.HoleParams(2, (4, 3), (3, 3), (10, 0.1))
    assert cons.HoleParams(1, (4, 3), (3, 3)).w == (2.0, 3.0)


@given(st.integers(1, 2), st.lists(st.integers(3, 5), min_size=4, max_size=6))
def test_bipartite_hole_property(alpha, sizes):
    ell = len(sizes) // 2
    a, b = tuple(sizes[:ell]), tuple(sizes[ell:2 * ell])
    a = (max(a[0], 2 * alpha),) + a[1:]
    cert = cons.bipartite_hole(cons.HoleParams(alpha, a, b))
    base = gr.join_all([gr.cliques_union([x, y]) for x, y in zip(a, b)])
    assert len(missing_edges(cert, base)) == alpha * alpha
    assert cert.multiplicities == [cert.n - 3, 3]


def test_two_edges_removed_examples():
    cert = cons.two_edges_removed((3, 3), (3, 3), (1, 1))
    base = gr.join(gr.cliques_union([3, 3]), gr.cliques_union([3, 3]))
    miss = missing_edges(cert, base)
    assert len(miss) == 2 and len({v for e in miss for v in e}) == 4
    assert cert.multiplicities == [9, 3]
    assert cert.provenance["params"]["w"] != [1.0, 1.0]  # equal w resampled
    three = cons.two_edges_removed((3, 3, 3), (3, 3, 3))
    assert three.multiplicities == [15, 3]


def test_two_edges_infeasible_norm_equation():
    with pytest.raises(PreconditionError):
        cons.two_edge_beta_sq(7.0, 2.0)
    assert cons.two_edge_beta_sq(8.0, 2.0) == pytest.approx(2.0)


def test_two_edges_removed_validation():
    with pytest.raises(PreconditionError):
        cons.two_edges_removed((3,), (3,))
    with pytest.raises(PreconditionError):
        cons.two_edges_removed((3, 3), (3, 1))


@given(st.lists(st.integers(2, 4), min_size=4, max_size=6), st.integers(0, 20))
def test_two_edges_removed_property(sizes, seed):
    ell = len(sizes) // 2
    a, b = tuple(sizes[:ell]), tuple(sizes[ell:2 * ell])
    cert = cons.two_edges_removed(a, b, seed=seed)
    base = gr.join_all([gr.cliques_union([x, y]) for x, y in zip(a, b)])
    miss = missing_edges(cert, base)
    assert len(miss) == 2 and len({v for e in miss for v in e}) == 4


# ---------------------------------------------------------------- paths of cliques

def test_path_p2_examples():
    assert cons.path_p2_realization(2).graph == gr.complete_graph(4)
    five = cons.path_p2_realization(5)
    assert five.multiplicities == [6, 4]
    assert five.provenance["original_eigenvalues"][1] == pytest.approx(10)
    assert cons.path_p2_realization(50).multiplicities == [51, 49]
    with pytest.raises(PreconditionError):
        cons.path_p2_realization(1)


@given(st.integers(2, 10))
def test_path_p2_is_optimal(n):
    cert = cons.path_p2_realization(n)
    assert gr.longest_induced_path_length(cert.graph) == n - 1 == cert.k


def test_path_of_cliques_examples():
    a = cons.path_of_cliques([2, 2, 2])
    assert a.multiplicities == [4, 2] and a.graph == gr.strong_product_path_p2(3)
    b = cons.path_of_cliques([3, 3])
    assert b.graph == gr.complete_graph(6) and b.multiplicities == [5, 1]
    c = cons.path_of_cliques([4, 2, 3])
    assert c.n == 9 and c.multiplicities == [7, 2]
    with pytest.raises(PreconditionError):
        cons.path_of_cliques([2, 1])


@given(st.lists(st.integers(2, 4), min_size=2, max_size=5))
def test_path_of_cliques_shape(sizes):
    cert = cons.path_of_cliques(sizes)
    G = cert.graph
    offs = np.cumsum([0] + sizes)
    cluster = np.repeat(np.arange(len(sizes)), sizes)
    for u in range(G.n):
        for v in range(u + 1, G.n):
            assert G.has_edge(u, v) == (abs(cluster[u] - cluster[v]) <= 1)
    assert cert.multiplicities == [sum(sizes) - len(sizes) + 1, len(sizes) - 1]
    assert offs[-1] == G.n


# ---------------------------------------------------------------- all outputs recertify

def test_every_construction_recertifies():
    c4 = ring_cert(2)
    certs = [
        cons.path_p2_realization(4), cons.path_of_cliques([2, 3]), ring_cert(4),
        cons.join_equal_mb(c4, c4), cons.join_with_empty(c4), cons.join_empty_n(gr.path_graph(3)),
        cons.example_three_cliques([2] * 6), cons.bipartite_hole(cons.HoleParams(1, (4, 3), (3, 3))),
        cons.two_edges_removed((3, 3), (3, 3)), cons.multipartite_three_eigs([3, 2, 1]),
    ]
    for cert in certs:
        again = recertify(cert)
        assert again.multiplicities == cert.multiplicities
        if cert.k is not None:
            assert cert.rank() == cert.k
