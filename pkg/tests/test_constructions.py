import itertools

import networkx as nx
import numpy as np
import pytest

from dezagraphs.constructions import (
    _extension_paley,
    certify_involution,
    conference_srg,
    construction1,
    construction2,
    dual_seidel_switch,
    hoffman_singleton,
    hs_vertex,
    k2_multipartite,
    paley,
    paley_frobenius_involution,
    srg_with_involution,
)
from dezagraphs.errors import AdjacentSwapError, GateError, NotAutomorphismError, NotInvolutionError
from dezagraphs.ffield import field_of_order
from dezagraphs.graph import Graph, Permutation, are_isomorphic, classify, complement, diameter

from conftest import BASES, base, doubled


def brute_paley(r):
    F = field_of_order(r)
    els = list(F.elements())
    squares = {(x * x).value for x in els if x != F.zero}
    edges = [(i, j) for i, j in itertools.combinations(range(r), 2) if (els[i] - els[j]).value in squares]
    return Graph.from_edges(r, edges)


@pytest.mark.parametrize("r", [5, 9, 13, 17, 25, 29])
def test_paley(r):
    g = paley(r)
    assert g == brute_paley(r)
    assert classify(g).srg == (r, (r - 1) // 2, (r - 5) // 4, (r - 1) // 4)


def test_paley5_is_c5():
    assert nx.is_isomorphic(nx.Graph(paley(5).edges()), nx.cycle_graph(5))


@pytest.mark.parametrize("r", [5, 9, 13, 17])
def test_paley_self_complementary(r):
    g = paley(r)
    assert are_isomorphic(g, complement(g)).isomorphic


@pytest.mark.parametrize("r", [3, 7, 15, 6])
def test_paley_rejects(r):
    with pytest.raises(ValueError):
        paley(r)


@pytest.mark.parametrize("q", [3, 5, 7, 9])
def test_frobenius_transpositions(q):
    E, g = _extension_paley(q)
    phi = Permutation(tuple(E.frobenius_index(i) for i in range(q * q)))
    assert phi.is_involution() and phi.is_automorphism_of(g)
    assert len(phi.fixed_points()) == q
    assert len(phi.transpositions()) == (q * q - q) // 2
    want_edge = q % 4 == 3
    assert all(g.has_edge(x, y) == want_edge for x, y in phi.transpositions())
    s = paley_frobenius_involution(q)
    assert all(not s.graph.has_edge(x, y) for x, y in s.involution.transpositions())


def test_certify_errors():
    g = Graph.cycle(5)
    with pytest.raises(NotInvolutionError):
        certify_involution(g, Permutation((1, 2, 3, 4, 0)))
    with pytest.raises(NotAutomorphismError):
        certify_involution(g, Permutation((1, 0, 2, 3, 4)))
    with pytest.raises(AdjacentSwapError):
        certify_involution(g, Permutation((0, 4, 3, 2, 1)))
    pet = base("conf3")
    certify_involution(pet.graph, pet.involution)
    with pytest.raises(GateError):
        srg_with_involution(Graph.from_edges(3, [(0, 1)]))


def test_dss_identity_is_noop():
    g = paley(9)
    assert dual_seidel_switch(g, Permutation.identity(9)) == g


def test_dss_p25():
    s = base("P25")
    rep = classify(dual_seidel_switch(s.graph, s.involution))
    assert rep.strictly_deza and rep.values == (5, 6)


def test_dss_diameter_three():
    for name in ("conf3", "HS"):
        s = base(name)
        assert diameter(dual_seidel_switch(s.graph, s.involution)) == 3


@pytest.mark.parametrize(
    "name,params",
    [("P9c", (18, 9, 8, 4)), ("P25", (50, 25, 24, 12)), ("conf3", (20, 7, 6, 2)), ("conf5", (52, 21, 20, 8)), ("HS", (100, 15, 14, 2))],
)
@pytest.mark.parametrize("which", ["C1", "C2"])
def test_constructions_params(name, params, which):
    rep = classify(doubled(name, which))
    assert rep.deza == params and rep.strictly_deza and rep.beta == 1


def test_construction1_plain_paley():
    assert classify(construction1(paley(9))).deza == (18, 9, 8, 4)
    assert classify(construction1(paley(25))).deza == (50, 25, 24, 12)


def test_construction1_complements():
    assert classify(construction1(base("conf5").complement())).deza == (52, 31, 30, 18)
    assert classify(construction1(base("HS").complement())).deza == (100, 85, 84, 72)


def test_construction1_needs_lambda_mu_minus_one():
    with pytest.raises(GateError):
        construction1(Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]))


@pytest.mark.parametrize("name", BASES)
def test_construction2_matrix_identity(name):
    s = base(name)
    a1 = construction1(s).adjacency.astype(np.int64)
    a2 = construction2(s).adjacency.astype(np.int64)
    assert np.array_equal(a1 @ a1, a2 @ a2)
    P = np.kron(s.involution.matrix().astype(np.int64), np.eye(2, dtype=np.int64))
    assert np.array_equal(P @ a1, a2)


def test_construction2_rejects_missing_or_identity():
    s = base("P25")
    with pytest.raises(GateError):
        construction2(s.without_involution())
    with pytest.raises(GateError):
        construction2(s.__class__(s.graph, s.params, Permutation.identity(25)))


@pytest.mark.parametrize("name", ["P25", "HS"])
def test_c1_c2_not_isomorphic(name):
    assert not are_isomorphic(doubled(name, "C1"), doubled(name, "C2")).isomorphic


@pytest.mark.parametrize("q,params", [(3, (10, 3, 0, 1)), (5, (26, 10, 3, 4)), (7, (50, 21, 8, 9))])
def test_conference(q, params):
    s = conference_srg(q)
    assert s.params == params
    C = s.conference.astype(np.int64)
    m = q * q + 1
    assert np.array_equal(C @ C.T, q * q * np.eye(m, dtype=np.int64))
    assert np.array_equal(C, C.T) and (np.diag(C) == 0).all()
    sums = set(C.sum(axis=1).tolist())
    assert len(sums) == 1 and abs(sums.pop()) == q
    B = s.graph.adjacency.astype(np.int64)
    assert np.array_equal(C, np.ones((m, m), dtype=np.int64) - np.eye(m, dtype=np.int64) - 2 * B)
    assert s.involution.fixed_points()[-1] == m - 1


def test_conference3_is_petersen():
    g = conference_srg(3).graph
    assert nx.is_isomorphic(nx.Graph(g.edges()), nx.petersen_graph())
    assert len(conference_srg(3).involution.fixed_points()) == 4


def test_hoffman_singleton():
    s = hoffman_singleton()
    assert s.params == (50, 7, 0, 1)
    assert nx.is_isomorphic(nx.Graph(s.graph.edges()), nx.hoffman_singleton_graph())
    phi = s.involution
    fixed = [hs_vertex(k, 0, i) for k in "PQ" for i in range(5)]
    assert phi.fixed_points() == fixed
    for k, (j1, j2) in itertools.product("PQ", [(1, 4), (2, 3)]):
        assert {phi(hs_vertex(k, j1, i)) // 5 for i in range(5)} == {hs_vertex(k, j2, 0) // 5}


def test_k2_multipartite():
    rep = classify(k2_multipartite(3, 2))
    assert rep.n == 12 and rep.is_deza
    n, k, b, a = rep.deza
    assert b == k - 1 and rep.beta > 1
    assert classify(k2_multipartite(2, 1)).tag == "complete"
    assert k2_multipartite(2, 1).n == 4
