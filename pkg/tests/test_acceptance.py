"""Acceptance criteria 1-12, each with its time budget.

Every criterion prints one PASS/FAIL line. Under pytest the lines are
repeated in the terminal summary; run this file directly to get only them.
"""
import itertools
import time

import networkx as nx
import numpy as np
import pytest

from dezagraphs.analysis import decompose, find_special_involutions
from dezagraphs.constructions import (
    conference_srg,
    construction1,
    construction2,
    dual_seidel_switch,
    hoffman_singleton,
    k2_multipartite,
    paley,
    paley_frobenius_involution,
)
from dezagraphs.errors import GateError
from dezagraphs.graph import Permutation, are_isomorphic, beta_formula, classify, complement, diameter
from dezagraphs.spectra import eigenvalue_multiplicity, is_walk_regular

RESULTS: list[str] = []


def report(number, title, fn):
    t0 = time.perf_counter()
    detail, ok = "", False
    try:
        detail = fn() or ""
        ok = True
    except AssertionError as e:
        detail = str(e) or "assertion failed"
    except Exception as e:  # an unexpected error is a failure too
        detail = f"{type(e).__name__}: {e}"
    dt = time.perf_counter() - t0
    line = f"[{'PASS' if ok else 'FAIL'}] AC{number:>2} {title} ({dt:.2f}s){': ' + detail if detail else ''}"
    RESULTS.append(line)
    print(line)
    return ok, detail


def b_pairs_all_adjacent(g):
    n, k, b, a = classify(g).deza
    cn = g.common_neighbour_matrix()
    return all(g.has_edge(u, v) for u, v in itertools.combinations(range(g.n), 2) if cn[u, v] == k - 1)


def fixtures():
    return {
        "P(9)^c": paley_frobenius_involution(3),
        "P(25)": paley_frobenius_involution(5),
        "Petersen": conference_srg(3),
        "conference(5)": conference_srg(5),
        "HS": hoffman_singleton(),
    }


# ---------------------------------------------------------------------------


def ac1():
    t0 = time.perf_counter()
    for r in (5, 9, 13, 17, 25, 29):
        got = classify(paley(r)).srg
        want = (r, (r - 1) // 2, (r - 5) // 4, (r - 1) // 4)
        assert got == want, f"P({r}) gave {got}, expected {want}"
    dt = time.perf_counter() - t0
    assert dt < 1.0, f"took {dt:.2f}s, budget 1s"


def ac2():
    t0 = time.perf_counter()
    cases = [
        (paley(9), (18, 9, 8, 4)),
        (paley(25), (50, 25, 24, 12)),
        (conference_srg(5), (52, 21, 20, 8)),
        (hoffman_singleton(), (100, 15, 14, 2)),
    ]
    for s, want in cases:
        rep = classify(construction1(s))
        assert rep.deza == want and rep.strictly_deza and rep.beta == 1, f"got {rep.describe()}, want {want}"
    dt = time.perf_counter() - t0
    assert dt < 5.0, f"took {dt:.2f}s, budget 5s"


def ac3():
    for s, want in ((conference_srg(5), (52, 31, 30, 18)), (hoffman_singleton(), (100, 85, 84, 72))):
        rep = classify(construction1(s.complement()))
        assert rep.deza == want and rep.beta == 1, f"got {rep.describe()}, want {want}"


def ac4():
    t0 = time.perf_counter()
    for s in (paley_frobenius_involution(5), hoffman_singleton()):
        g1, g2 = construction1(s), construction2(s)
        r1, r2 = classify(g1), classify(g2)
        assert r2.strictly_deza and r2.deza == r1.deza, f"{r1.describe()} vs {r2.describe()}"
        assert not are_isomorphic(g1, g2).isomorphic, f"{s.name}: C1 and C2 isomorphic"
        assert b_pairs_all_adjacent(g1) and not b_pairs_all_adjacent(g2), "b-pair distinguisher did not fire"
    dt = time.perf_counter() - t0
    assert dt < 30.0, f"took {dt:.2f}s, budget 30s"


def ac5():
    for s in (conference_srg(3), hoffman_singleton()):
        d = diameter(dual_seidel_switch(s.graph, s.involution))
        assert d == 3, f"DSS({s.name}) has diameter {d}"
    s = paley_frobenius_involution(5)
    rep = classify(dual_seidel_switch(s.graph, s.involution))
    assert rep.strictly_deza and set(rep.values) == {5, 6}, rep.describe()


def ac6():
    pet = conference_srg(3).graph
    found = find_special_involutions(pet)
    assert len(found) == 1 and len(found[0].fixed_points()) == 4, f"Petersen: {found}"
    assert find_special_involutions(complement(pet)) == [], "Petersen complement has involutions"
    hs = hoffman_singleton().graph
    t0 = time.perf_counter()
    found = find_special_involutions(hs)
    dt = time.perf_counter() - t0
    assert len(found) == 1, f"HS: {len(found)} classes"
    assert dt < 60.0, f"HS search took {dt:.2f}s, budget 60s"
    raw = len(find_special_involutions(hs, up_to_conjugacy=False))
    return f"one conjugacy class each ({raw} HS involutions in total), HS search {dt:.2f}s"


def ac7():
    t0 = time.perf_counter()
    ok = 0
    for name, s in fixtures().items():
        for tag, build in (("C1", construction1), ("C2", construction2)):
            r = decompose(build(s))
            assert r.tag == tag, f"{name}/{tag}: tagged {r.tag}"
            assert r.srg == s.graph, f"{name}/{tag}: recovered SRG differs"
            assert all(r.lemma_checks.values()), f"{name}/{tag}: failed {[k for k, v in r.lemma_checks.items() if not v]}"
            assert r.reconstructed_equal
            ok += 1
    dt = time.perf_counter() - t0
    assert dt < 120.0, f"took {dt:.2f}s, budget 120s"
    return f"{ok}/10 round trips"


def ac8():
    rng = np.random.default_rng(8)
    checked = 0
    names = None
    for s in fixtures().values():
        for build in (construction1, construction2):
            g = build(s)
            for h in (g, g.permuted(Permutation(tuple(rng.permutation(g.n).tolist())))):
                r = decompose(h)
                failed = [k for k, v in r.lemma_checks.items() if not v]
                assert not failed, f"failed {failed}"
                names = set(r.lemma_checks)
                checked += 1
    required = {"ComB", "TwoAPairs", "APairNAPair", "W1", "W2", "W3", "W4", "W5", "W6", "x_double_prime",
                "xpb_eq_xbp", "quadruple_partition", "CxCy", "a_even"}
    assert required <= names, f"missing {required - names}"
    for parts, size in ((3, 2), (2, 3), (4, 2)):
        try:
            decompose(k2_multipartite(parts, size))
        except GateError as e:
            assert "beta" in str(e), str(e)
        else:
            raise AssertionError(f"k2_multipartite({parts},{size}) was decomposed")
    return f"{checked} fixtures x {len(names)} checks"


def ac9():
    graphs = []
    for s in fixtures().values():
        graphs += [construction1(s), construction2(s), dual_seidel_switch(s.graph, s.involution)]
    graphs += [k2_multipartite(3, 2), k2_multipartite(2, 3)]
    for g in graphs:
        rep = classify(g)
        n, k, b, a = rep.deza
        cn = g.common_neighbour_matrix().copy()
        np.fill_diagonal(cn, -1)
        counts = set((cn == b).sum(axis=1).tolist())
        assert counts == {beta_formula(n, k, b, a)}, f"{rep.describe()}: counts {counts}"
    assert beta_formula(18, 9, 8, 4) == 1 and beta_formula(10, 5, 4, 2) == 1
    return f"{len(graphs)} Deza fixtures"


def ac10():
    t0 = time.perf_counter()
    for name, s in fixtures().items():
        assert is_walk_regular(construction1(s)), f"C1({name}) not walk-regular"
        r = is_walk_regular(construction2(s))
        assert not r, f"C2({name}) walk-regular"
    dt = time.perf_counter() - t0
    assert dt < 30.0, f"took {dt:.2f}s, budget 30s"


def ac11():
    out = []
    for label, s in (("(18,9,8,4)", paley_frobenius_involution(3)), ("(20,7,6,2)", conference_srg(3))):
        g1, g2 = construction1(s), construction2(s)
        assert classify(g1).deza == classify(g2).deza
        m1, m2 = eigenvalue_multiplicity(g1, 1), eigenvalue_multiplicity(g2, 1)
        assert m1 != m2, f"{label}: multiplicities agree ({m1})"
        out.append(f"{label} C1={m1} C2={m2}")
    return "eigenvalue 1 multiplicity " + ", ".join(out)


def ac12():
    for q in (3, 5):
        C = conference_srg(q).conference.astype(np.int64)
        m = q * q + 1
        assert np.array_equal(C @ C.T, q * q * np.eye(m, dtype=np.int64)), f"q={q}: C C^T != q^2 I"
        sums = set(C.sum(axis=1).tolist())
        assert len(sums) == 1 and abs(next(iter(sums))) == q, f"q={q}: row sums {sums}"
    pet = nx.petersen_graph()
    g = conference_srg(3).graph
    assert nx.is_isomorphic(nx.Graph(g.edges()), pet)


CRITERIA = [
    (1, "Paley family parameters", ac1),
    (2, "Construction 1 parameters", ac2),
    (3, "Construction 1 on complements", ac3),
    (4, "Construction 2 not isomorphic to Construction 1", ac4),
    (5, "dual Seidel switching", ac5),
    (6, "special involution census", ac6),
    (7, "decomposition round trips", ac7),
    (8, "lemma checklist and beta gate", ac8),
    (9, "beta formula vs counts", ac9),
    (10, "walk-regularity split", ac10),
    (11, "eigenvalue 1 multiplicities", ac11),
    (12, "conference matrix identity", ac12),
]


@pytest.mark.parametrize("number,title,fn", CRITERIA, ids=[f"AC{c[0]}" for c in CRITERIA])
def test_acceptance(number, title, fn):
    ok, detail = report(number, title, fn)
    assert ok, detail


if __name__ == "__main__":
    import sys

    results = [report(*c)[0] for c in CRITERIA]
    print(f"{sum(results)}/{len(results)} criteria passed")
    sys.exit(0 if all(results) else 1)
