import json
import random

import networkx as nx
import pytest

from dezagraphs.analysis import (
    conjugating_automorphism,
    bb_partners,
    decompose,
    find_special_involutions,
    involution_classes,
    quadruple_partition,
    w_set,
)
from dezagraphs.constructions import (
    construction1,
    construction2,
    dual_seidel_switch,
    k2_multipartite,
    srg_with_involution,
)
from dezagraphs.errors import DecompositionError, GateError, SizeBoundError
from dezagraphs.graph import Graph, Permutation, are_isomorphic, complement, strong_product_k2

from conftest import BASES, base, doubled

LEMMAS = {
    "ComB", "TwoAPairs", "APairNAPair", "partner_involution", "unique_x_prime", "x_double_prime",
    "xpb_eq_xbp", "xb_prime_in_N2", "W1", "W2", "W3", "W4", "W5", "W6", "W_size", "W_closed",
    "x_prime_NA", "xpb_not_adjacent", "a_even", "C_invariant", "quadruple_partition", "xxbyyb",
    "xpyp", "CxCy", "NA_A", "Gammap_regular", "Gammap_twins", "Gammap_all_or_none",
}


def relabel(g, seed):
    images = list(range(g.n))
    random.Random(seed).shuffle(images)
    return g.permuted(Permutation(tuple(images)))


# ------------------------------------------------------------ involutions


def test_petersen_involutions():
    pet = base("conf3").graph
    everything = find_special_involutions(pet, up_to_conjugacy=False)
    # one class: the 10 transpositions of S5 acting on the 2-subsets
    assert len(everything) == 10
    assert all(len(p.fixed_points()) == 4 for p in everything)
    reps = find_special_involutions(pet)
    assert len(reps) == 1 and len(reps[0].fixed_points()) == 4
    assert involution_classes(pet, everything) == [everything]


def test_petersen_complement_has_none():
    assert find_special_involutions(complement(base("conf3").graph)) == []


def test_hs_involutions(backend):
    s = base("HS")
    everything = find_special_involutions(s.graph, up_to_conjugacy=False)
    assert len(everything) == 525
    assert all(len(p.fixed_points()) == 10 for p in everything)
    assert s.involution in everything
    assert find_special_involutions(s.graph) == [s.involution]


def test_adjacent_mode_paley():
    # in P(q^2), q = 3 mod 4, the Frobenius map swaps only adjacent pairs
    g = complement(base("P9c").graph)
    found = find_special_involutions(g, mode="adjacent", up_to_conjugacy=False)
    phi = base("P9c").involution
    assert phi in found
    assert found == find_special_involutions(base("P9c").graph, up_to_conjugacy=False)


def test_involutions_invariant_under_relabeling():
    g = base("P25").graph
    images = list(range(25))
    random.Random(3).shuffle(images)
    sigma = Permutation(tuple(images))
    h = g.permuted(sigma)
    before = find_special_involutions(g, up_to_conjugacy=False)
    after = find_special_involutions(h, up_to_conjugacy=False)
    conj = sorted((sigma.compose(p).compose(sigma.inverse()) for p in before), key=lambda p: p.images)
    assert conj == after
    assert len(find_special_involutions(g)) == len(find_special_involutions(h))


def test_involution_limit_and_bounds():
    pet = base("conf3").graph
    assert len(find_special_involutions(pet, limit=3, up_to_conjugacy=False)) == 3
    with pytest.raises(SizeBoundError):
        find_special_involutions(pet, max_n=5)
    with pytest.raises(ValueError):
        find_special_involutions(pet, mode="sideways")


def test_conjugating_automorphism():
    pet = base("conf3").graph
    ps = find_special_involutions(pet, up_to_conjugacy=False)
    s = conjugating_automorphism(pet, ps[0], ps[5])
    assert s is not None and s.is_automorphism_of(pet)
    assert s.compose(ps[0]).compose(s.inverse()) == ps[5]
    assert conjugating_automorphism(pet, ps[0], Permutation.identity(10)) is None


def test_involutions_match_networkx_automorphisms():
    # oracle: enumerate all automorphisms of Petersen with networkx
    pet = base("conf3").graph
    h = nx.Graph(pet.edges())
    special = []
    for m in nx.algorithms.isomorphism.GraphMatcher(h, h).isomorphisms_iter():
        p = Permutation(tuple(m[i] for i in range(10)))
        if p.is_involution() and not p.is_identity():
            if all(not pet.has_edge(x, y) for x, y in p.transpositions()):
                special.append(p)
    assert sorted(special, key=lambda p: p.images) == find_special_involutions(pet, up_to_conjugacy=False)


# ------------------------------------------------------------ decomposition


@pytest.mark.parametrize("name", BASES)
@pytest.mark.parametrize("which", ["C1", "C2"])
def test_round_trip(name, which):
    s = base(name)
    r = decompose(doubled(name, which))
    assert r.tag == which
    assert r.srg == s.graph
    assert r.srg_params == s.params
    assert r.reconstructed_equal
    assert LEMMAS <= set(r.lemma_checks)
    assert all(r.lemma_checks.values())
    if which == "C2":
        assert r.involution == s.involution
    else:
        assert r.involution.is_identity()


@pytest.mark.parametrize("name", ["conf3", "P25", "HS"])
@pytest.mark.parametrize("which", ["C1", "C2"])
def test_round_trip_relabelled(name, which):
    g = relabel(doubled(name, which), 17)
    r = decompose(g)
    assert r.tag == which and r.reconstructed_equal and all(r.lemma_checks.values())
    assert are_isomorphic(r.srg, base(name).graph).isomorphic
    # the relabeling maps the input onto the canonical doubled graph of the recovered SRG
    assert g.permuted(r.relabeling) == doubled_from(r)


def doubled_from(r):
    s = srg_with_involution(r.srg, None if r.tag == "C1" else r.involution)
    return construction1(s) if r.tag == "C1" else construction2(s)


def test_quadruples_and_partners_p25():
    g = doubled("P25", "C2")
    m = bb_partners(g)
    qp = quadruple_partition(m)
    # 5 fixed points of phi give 5 A-pairs; 10 transpositions give 10 quadruples
    assert len(qp.a_pairs) == 5 and len(qp.quadruples) == 10
    assert sum(m.is_a) == 10 and len(m.na_vertices) == 40
    for x in m.na_vertices:
        w = w_set(g, m, x)
        assert len(w) == 12
    with pytest.raises(GateError):
        w_set(g, m, next(x for x in range(g.n) if m.is_a[x]))


def test_report_json():
    r = decompose(doubled("P25", "C2"))
    d = json.loads(json.dumps(r.to_dict()))
    assert d["tag"] == "C2" and d["srg_params"] == [25, 12, 5, 6]
    assert {"tag", "srg_params", "involution", "lemma_checks", "reconstructed_equal"} <= set(d)


@pytest.mark.parametrize("parts,size", [(3, 2), (2, 3), (4, 2), (3, 3)])
def test_k2_multipartite_rejected(parts, size):
    with pytest.raises(GateError, match="beta"):
        decompose(k2_multipartite(parts, size))


def test_gates():
    with pytest.raises(GateError):
        decompose(base("conf3").graph)  # SRG
    s = base("P25")
    with pytest.raises(GateError, match="k - 1"):
        decompose(dual_seidel_switch(s.graph, s.involution))
    with pytest.raises(GateError):
        decompose(Graph.complete(2))
    with pytest.raises(GateError):
        decompose(Graph.cycle(6))


def test_decomposition_error_lists_failures():
    err = DecompositionError("boom", failed=["W5"], checks={"W5": False, "W1": True})
    assert isinstance(err, GateError)
    assert err.failed == ["W5"] and err.checks["W1"]


def test_c1_of_c5():
    r = decompose(strong_product_k2(Graph.cycle(5)))
    assert r.tag == "C1" and r.srg == Graph.cycle(5)
