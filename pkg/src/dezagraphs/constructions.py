"""Graph families and transforms: Paley graphs, conference-matrix graphs,
Hoffman-Singleton, dual Seidel switching and the two doubling constructions.

Vertex orders are canonical so that outputs are reproducible byte for byte:
field enumeration order for Paley graphs, the border vertex last for
conference graphs, and ``(type, block, position)`` for Hoffman-Singleton.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Optional, Union

import numpy as np

from .errors import (
    AdjacentSwapError,
    GateError,
    InvariantError,
    NotAutomorphismError,
    NotInvolutionError,
)
from .ffield import QuadraticExtension, field_of_order, make_field, prime_power
from .graph import Graph, Permutation, classify, complement, strong_product_k2


@dataclass(frozen=True)
class SrgWithInvolution:
    """A strongly regular graph, optionally with a certified special involution.

    The involution, when present, is an automorphism of order at most 2 that
    only interchanges non-adjacent vertices.
    """

    graph: Graph
    params: tuple[int, int, int, int]
    involution: Optional[Permutation] = None
    name: str = ""
    conference: Optional[np.ndarray] = None

    def complement(self) -> SrgWithInvolution:
        g = complement(self.graph)
        return srg_with_involution(g, None, name=f"complement of {self.name}".strip())

    def without_involution(self) -> SrgWithInvolution:
        return replace(self, involution=None)


def certify_involution(g: Graph, p: Permutation, mode: str = "non-adjacent") -> None:
    """Raise unless ``p`` is an order-<=2 automorphism swapping only allowed pairs."""
    if p.n != g.n:
        raise GateError(f"permutation acts on {p.n} points, graph has {g.n} vertices")
    if not p.is_involution():
        raise NotInvolutionError("permutation squared is not the identity")
    if not p.is_automorphism_of(g):
        raise NotAutomorphismError("permutation is not an automorphism of the graph")
    for x, y in p.transpositions():
        adjacent = g.has_edge(x, y)
        if mode == "non-adjacent" and adjacent:
            raise AdjacentSwapError(f"involution swaps adjacent vertices {x} and {y}")
        if mode == "adjacent" and not adjacent:
            raise AdjacentSwapError(f"involution swaps non-adjacent vertices {x} and {y}")


def srg_with_involution(
    g: Graph, involution: Optional[Permutation] = None, name: str = ""
) -> SrgWithInvolution:
    rep = classify(g)
    if not rep.is_srg:
        raise GateError(f"{name or 'graph'} is not strongly regular ({rep.describe()})")
    if involution is not None:
        certify_involution(g, involution)
    return SrgWithInvolution(g, rep.srg, involution, name)


def _as_srg(s: Union[SrgWithInvolution, Graph]) -> SrgWithInvolution:
    if isinstance(s, Graph):
        return srg_with_involution(s)
    return s


# ---------------------------------------------------------------------------
# Paley graphs


def paley(r: int) -> Graph:
    """Paley graph P(r): field elements, adjacent when the difference is a square."""
    prime_power(r)
    if r % 4 != 1:
        raise GateError(f"Paley graphs need r = 1 (mod 4), got r={r}")
    F = field_of_order(r)
    adj = F.square_table[F.sub_matrix()]
    g = Graph(adj)
    expected = (r, (r - 1) // 2, (r - 5) // 4, (r - 1) // 4)
    if classify(g).srg != expected:
        raise InvariantError(f"P({r}) is not SRG{expected}")
    return g


def _extension_paley(q: int) -> tuple[QuadraticExtension, Graph]:
    p, m = prime_power(q)
    if p == 2:
        raise GateError("q must be odd")
    E = QuadraticExtension(make_field(p, m))
    Db = E.base.sub_matrix()
    idx = np.arange(q * q)
    X, Y = idx // q, idx % q
    diff = Db[np.ix_(X, X)] * q + Db[np.ix_(Y, Y)]
    return E, Graph(E.square_table[diff])


def paley_frobenius_involution(q: int) -> SrgWithInvolution:
    """P(q^2) over GF(q)[alpha], or its complement when q = 3 (mod 4),
    with the Frobenius map x + y*alpha -> x - y*alpha as involution."""
    E, g = _extension_paley(q)
    name = f"P({q}^2)"
    if q % 4 == 3:
        g = complement(g)
        name = f"complement of P({q}^2)"
    phi = Permutation(tuple(E.frobenius_index(i) for i in range(q * q)))
    s = srg_with_involution(g, phi, name=name)
    if len(phi.fixed_points()) != q:
        raise InvariantError("Frobenius should fix exactly the base field")
    return s


# ---------------------------------------------------------------------------
# switching and the two constructions


def dual_seidel_switch(g: Graph, p: Permutation) -> Graph:
    """Graph with adjacency ``P B`` for an involution ``p`` swapping non-adjacent pairs."""
    certify_involution(g, p)
    B = g.adjacency
    switched = B[np.asarray(p.images)]
    out = Graph(switched)
    Bi = B.astype(np.int64)
    Si = switched.astype(np.int64)
    if not np.array_equal(Si @ Si, Bi @ Bi):
        raise InvariantError("dual Seidel switching changed the square of the adjacency matrix")
    return out


def _require_lambda_mu(s: SrgWithInvolution) -> None:
    m, l, lam, mu = s.params
    if lam != mu - 1:
        raise GateError(f"construction needs lambda = mu - 1, got SRG{s.params}")


def construction1(s: Union[SrgWithInvolution, Graph]) -> Graph:
    """Strong product of K2 with an SRG having lambda = mu - 1."""
    s = _as_srg(s)
    _require_lambda_mu(s)
    return strong_product_k2(s.graph)


def construction2(s: SrgWithInvolution) -> Graph:
    """Strong product of K2 with the SRG, rewired along the involution's transpositions.

    Built twice, as ``(P x I2) A1`` and by edge rewiring, and the results compared.
    """
    _require_lambda_mu(s)
    p = s.involution
    if p is None:
        raise GateError("construction 2 needs an involution")
    if p.is_identity():
        raise GateError("construction 2 needs a non-identity involution")
    certify_involution(s.graph, p)
    a1 = strong_product_k2(s.graph).adjacency
    rowmap = np.array([2 * p(i) + e for i in range(p.n) for e in (0, 1)])
    a2 = a1[rowmap]

    rewired = strong_product_k2(dual_seidel_switch(s.graph, p)).adjacency.copy()
    for x, y in p.transpositions():
        for u, v in ((2 * x, 2 * x + 1), (2 * y, 2 * y + 1)):
            rewired[u, v] = rewired[v, u] = False
        for u, v in ((2 * x, 2 * y + 1), (2 * x + 1, 2 * y)):
            rewired[u, v] = rewired[v, u] = True
    if not np.array_equal(a2, rewired):
        raise InvariantError("matrix and rewiring descriptions of construction 2 disagree")
    i1 = a1.astype(np.int64)
    i2 = a2.astype(np.int64)
    if not np.array_equal(i2 @ i2, i1 @ i1):
        raise InvariantError("A2^2 != A1^2")
    return Graph(a2)


def k2_multipartite(parts: int, part_size: int) -> Graph:
    """Strong product of K2 with the complete multipartite graph K_{s,...,s}."""
    if parts < 2 or part_size < 1:
        raise GateError("need at least two parts of positive size")
    label = np.repeat(np.arange(parts), part_size)
    return strong_product_k2(Graph(label[:, None] != label[None, :]))


# ---------------------------------------------------------------------------
# conference matrices


def conference_srg(q: int) -> SrgWithInvolution:
    """SRG on q^2 + 1 vertices from a regular symmetric conference matrix.

    The Seidel matrix of P(q^2) (complemented when q = 3 mod 4) is bordered by an
    all-ones row and column (border vertex last), then Seidel-switched on the
    union of the first (q-1)/2 classes {x + y*alpha : y} to reach constant row
    sum q.  The Frobenius involution, extended to fix the border vertex, stays
    a special involution of the result.
    """
    base = paley_frobenius_involution(q)
    m = q * q + 1
    Bp = base.graph.adjacency.astype(np.int64)
    S = np.ones((q * q, q * q), dtype=np.int64) - np.eye(q * q, dtype=np.int64) - 2 * Bp
    Cp = np.zeros((m, m), dtype=np.int64)
    Cp[: q * q, : q * q] = S
    Cp[: q * q, -1] = 1
    Cp[-1, : q * q] = 1
    sign = np.ones(m, dtype=np.int64)
    for x in range((q - 1) // 2):
        sign[x * q : (x + 1) * q] = -1
    C = sign[:, None] * Cp * sign[None, :]
    if not np.array_equal(C @ C.T, (m - 1) * np.eye(m, dtype=np.int64)):
        raise InvariantError("C C^T != (m-1) I")
    sums = C.sum(axis=1)
    if not (sums == sums[0]).all() or abs(int(sums[0])) != q:
        raise InvariantError(f"row sums of C are not constant +-{q}: {sorted(set(sums.tolist()))}")
    B = (np.ones((m, m), dtype=np.int64) - np.eye(m, dtype=np.int64) - C) // 2
    g = Graph(B.astype(bool))
    phi = Permutation(base.involution.images + (q * q,))
    s = srg_with_involution(g, phi, name=f"conference({q})")
    r = int(sums[0])
    expected = (r * r + 1, (r * r - r) // 2, (r - 1) ** 2 // 4 - 1, (r - 1) ** 2 // 4)
    if s.params != expected:
        raise InvariantError(f"conference graph has {s.params}, expected {expected}")
    C.flags.writeable = False
    return replace(s, conference=C)


# ---------------------------------------------------------------------------
# Hoffman-Singleton


def hs_vertex(kind: str, block: int, pos: int) -> int:
    """Index of pentagon (``"P"``) or pentagram (``"Q"``) vertex ``pos`` of ``block``."""
    return {"P": 0, "Q": 1}[kind] * 25 + block * 5 + pos


def _hoffman_singleton_graph() -> Graph:
    edges = []
    for j in range(5):
        for i in range(5):
            edges.append((hs_vertex("P", j, i), hs_vertex("P", j, (i + 1) % 5)))
            edges.append((hs_vertex("Q", j, i), hs_vertex("Q", j, (i + 2) % 5)))
            for k in range(5):
                edges.append((hs_vertex("P", j, i), hs_vertex("Q", k, (i + j * k) % 5)))
    return Graph.from_edges(50, edges)


def hoffman_singleton() -> SrgWithInvolution:
    """Robertson's pentagon/pentagram model with the block-swapping involution.

    The involution fixes P0 and Q0 and swaps P1<->P4, P2<->P3, Q1<->Q4,
    Q2<->Q3; the position map on each swapped block pair is found by trying
    every dihedral map of the pentagon and keeping the unique combination that
    is an automorphism.
    """
    g = _hoffman_singleton_graph()
    dihedral = [(s, c) for s in (1, 4) for c in range(5)]
    pairs = [("P", 1, 4), ("P", 2, 3), ("Q", 1, 4), ("Q", 2, 3)]
    found = []
    for choice in itertools.product(dihedral, repeat=4):
        images = list(range(50))
        for (kind, j1, j2), (s, c) in zip(pairs, choice):
            for i in range(5):
                u = hs_vertex(kind, j1, i)
                v = hs_vertex(kind, j2, (s * i + c) % 5)
                images[u] = v
                images[v] = u
        p = Permutation(tuple(images))
        if p.is_automorphism_of(g):
            found.append(p)
    if len(found) != 1:
        raise InvariantError(f"expected one block-swapping automorphism, found {len(found)}")
    s = srg_with_involution(g, found[0], name="Hoffman-Singleton")
    if s.params != (50, 7, 0, 1):
        raise InvariantError(f"Hoffman-Singleton came out as SRG{s.params}")
    return s
