"""Simple graphs as symmetric boolean adjacency matrices, plus Deza vocabulary.

A :class:`Graph` is immutable.  Besides the numpy matrix it keeps each
adjacency row as a Python-int bitset (bit ``j`` of ``rows[i]`` is set iff
``i ~ j``); the search kernels and the BFS work on those.
"""
from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from . import _kernels
from .errors import GateError, Graph6Error, InvariantError, SizeBoundError

#: Default vertex bound for exact isomorphism testing.
ISO_MAX_N = 120


def size_bound(default: int) -> int:
    """Size bound, overridable through the ``DEZA_MAX_N`` environment variable."""
    raw = os.environ.get("DEZA_MAX_N")
    if raw:
        try:
            return int(raw)
        except ValueError:
            raise SizeBoundError(f"DEZA_MAX_N must be an integer, got {raw!r}") from None
    return default


class Graph:
    __slots__ = ("_adj", "_rows", "_cn", "__weakref__")

    def __init__(self, adjacency):
        adj = np.array(adjacency, dtype=bool, copy=True)
        if adj.ndim != 2 or adj.shape[0] != adj.shape[1]:
            raise ValueError("adjacency matrix must be square")
        if adj.shape[0] < 1:
            raise ValueError("a graph needs at least one vertex")
        if adj.diagonal().any():
            raise ValueError("adjacency matrix must have a zero diagonal")
        if not np.array_equal(adj, adj.T):
            raise ValueError("adjacency matrix must be symmetric")
        adj.flags.writeable = False
        self._adj = adj
        self._rows = None
        self._cn = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        adj = np.zeros((n, n), dtype=bool)
        for u, v in edges:
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            adj[u, v] = adj[v, u] = True
        return cls(adj)

    @classmethod
    def empty(cls, n: int) -> Graph:
        return cls(np.zeros((n, n), dtype=bool))

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(~np.eye(n, dtype=bool))

    @classmethod
    def cycle(cls, n: int) -> Graph:
        return cls.from_edges(n, ((i, (i + 1) % n) for i in range(n)))

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def rows(self) -> tuple[int, ...]:
        if self._rows is None:
            packed = np.packbits(self._adj, axis=1, bitorder="little")
            self._rows = tuple(int.from_bytes(r.tobytes(), "little") for r in packed)
        return self._rows

    def common_neighbour_matrix(self) -> np.ndarray:
        """``A @ A`` as int32; off-diagonal entries count common neighbours."""
        if self._cn is None:
            cn = _kernels.common_neighbours(self._adj, self.rows)
            cn.flags.writeable = False
            self._cn = cn
        return self._cn

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def neighbours(self, v: int) -> list[int]:
        return np.flatnonzero(self._adj[v]).tolist()

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1)

    def edges(self) -> list[tuple[int, int]]:
        iu, ju = np.nonzero(np.triu(self._adj, 1))
        return list(zip(iu.tolist(), ju.tolist()))

    @property
    def edge_count(self) -> int:
        return int(self._adj.sum()) // 2

    def permuted(self, perm: Permutation) -> Graph:
        """Relabel so that vertex ``i`` becomes ``perm(i)``."""
        inv = np.asarray(perm.inverse().images)
        return Graph(self._adj[np.ix_(inv, inv)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj.shape == other._adj.shape and bool(np.array_equal(self._adj, other._adj))

    def __hash__(self) -> int:
        return hash((self.n, np.packbits(self._adj).tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edge_count})"


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0..n-1}`` given by its image list."""

    images: tuple[int, ...]

    def __post_init__(self):
        images = tuple(int(i) for i in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(len(images))):
            raise ValueError("images do not form a permutation")

    @classmethod
    def identity(cls, n: int) -> Permutation:
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.images)

    def __len__(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def inverse(self) -> Permutation:
        inv = [0] * self.n
        for i, j in enumerate(self.images):
            inv[j] = i
        return Permutation(tuple(inv))

    def compose(self, other: Permutation) -> Permutation:
        """``self ∘ other``: apply ``other`` first."""
        return Permutation(tuple(self.images[j] for j in other.images))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.images))

    def is_involution(self) -> bool:
        return all(self.images[j] == i for i, j in enumerate(self.images))

    def fixed_points(self) -> list[int]:
        return [i for i, j in enumerate(self.images) if i == j]

    def transpositions(self) -> list[tuple[int, int]]:
        return [(i, j) for i, j in enumerate(self.images) if i < j]

    def matrix(self) -> np.ndarray:
        """Permutation matrix ``P`` with ``P[i, images[i]] = 1``."""
        P = np.zeros((self.n, self.n), dtype=np.int64)
        P[np.arange(self.n), self.images] = 1
        return P

    def is_automorphism_of(self, g: Graph) -> bool:
        idx = np.asarray(self.images)
        return bool(np.array_equal(g.adjacency[np.ix_(idx, idx)], g.adjacency))


# ---------------------------------------------------------------------------
# Deza vocabulary


def common_neighbours(g: Graph, u: int, v: int) -> int:
    if u == v:
        raise ValueError("common neighbours need two distinct vertices")
    return (g.rows[u] & g.rows[v]).bit_count()


def is_regular(g: Graph) -> bool:
    d = g.degrees()
    return bool((d == d[0]).all())


def complement(g: Graph) -> Graph:
    return Graph(~g.adjacency & ~np.eye(g.n, dtype=bool))


def eccentricity(g: Graph, v: int) -> float:
    rows = g.rows
    seen = 1 << v
    frontier = seen
    dist = 0
    full = (1 << g.n) - 1
    while seen != full:
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= rows[low.bit_length() - 1]
            f ^= low
        nxt &= ~seen
        if not nxt:
            return math.inf
        seen |= nxt
        frontier = nxt
        dist += 1
    return dist


def diameter(g: Graph) -> float:
    """Largest distance between two vertices; ``math.inf`` if disconnected."""
    return max(eccentricity(g, v) for v in range(g.n))


def distance_layers(g: Graph, v: int) -> list[int]:
    """Bitsets of the vertices at distance 0, 1, 2, ... from ``v``."""
    rows = g.rows
    seen = 1 << v
    layers = [seen]
    while True:
        nxt = 0
        f = layers[-1]
        while f:
            low = f & -f
            nxt |= rows[low.bit_length() - 1]
            f ^= low
        nxt &= ~seen
        if not nxt:
            return layers
        seen |= nxt
        layers.append(nxt)


def beta_formula(n: int, k: int, b: int, a: int) -> Fraction:
    """Number of vertices sharing ``b`` common neighbours with a given vertex.

    Non-integral values are returned unchanged: they rule out a Deza graph with
    these parameters.
    """
    if a > b:
        raise ValueError("expected a <= b")
    if a == b:
        return Fraction(n - 1)
    return Fraction(k * (k - 1) - a * (n - 1), b - a)


@dataclass(frozen=True)
class ParameterReport:
    n: int
    tag: str
    k: Optional[int] = None
    values: tuple[int, ...] = ()
    srg: Optional[tuple[int, int, int, int]] = None
    deza: Optional[tuple[int, int, int, int]] = None
    strictly_deza: bool = False
    diameter: float = math.inf
    beta: Optional[int] = None
    alpha: Optional[int] = None

    @property
    def is_deza(self) -> bool:
        return self.deza is not None

    @property
    def is_srg(self) -> bool:
        return self.srg is not None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "tag": self.tag,
            "k": self.k,
            "values": list(self.values),
            "srg": list(self.srg) if self.srg else None,
            "deza": list(self.deza) if self.deza else None,
            "strictly_deza": self.strictly_deza,
            "diameter": self.diameter if self.diameter != math.inf else "inf",
            "beta": self.beta,
            "alpha": self.alpha,
        }

    def describe(self) -> str:
        if self.tag == "SRG":
            body = "SRG(%d,%d,%d,%d)" % self.srg
        elif self.tag == "Deza":
            body = "Deza(%d,%d,%d,%d)" % self.deza
            if self.strictly_deza:
                body = "strictly " + body
        elif self.tag == "complete":
            body = f"complete K{self.n}"
        elif self.tag == "regular-other":
            body = f"{self.k}-regular on {self.n} vertices (not Deza)"
        else:
            return f"not regular on {self.n} vertices"
        if self.beta is not None:
            body += f" beta={self.beta}"
        diam = "inf" if self.diameter == math.inf else int(self.diameter)
        return f"{body} diameter={diam}"


def classify(g: Graph) -> ParameterReport:
    n = g.n
    diam = diameter(g) if n > 1 else 0
    if not is_regular(g):
        return ParameterReport(n=n, tag="not-regular", diameter=diam)
    k = int(g.degrees()[0])
    cn = g.common_neighbour_matrix()
    off = ~np.eye(n, dtype=bool)
    values = tuple(sorted(set(cn[off].tolist())))
    if len(values) > 2:
        return ParameterReport(n=n, tag="regular-other", k=k, values=values, diameter=diam)
    if k == n - 1:
        tag = "complete"
        srg = None
    else:
        tag = "Deza"
        srg = None
        adj = g.adjacency
        if 0 < k < n - 1:
            lam = set(cn[adj].tolist())
            mu = set(cn[off & ~adj].tolist())
            if len(lam) == 1 and len(mu) == 1:
                tag = "SRG"
                srg = (n, k, lam.pop(), mu.pop())
    if n == 1:
        return ParameterReport(n=1, tag="complete", k=0, diameter=0)
    a, b = values[0], values[-1]
    counts = (cn == b).sum(axis=1) - (np.diag(cn) == b)
    if not (counts == counts[0]).all():
        raise InvariantError("beta(v) varies over the vertices of a Deza graph")
    beta = int(counts[0])
    if beta_formula(n, k, b, a) != beta:
        raise InvariantError(
            f"counted beta={beta} disagrees with the formula {beta_formula(n, k, b, a)}"
        )
    strictly = tag == "Deza" and diam == 2
    return ParameterReport(
        n=n,
        tag=tag,
        k=k,
        values=values,
        srg=srg,
        deza=(n, k, b, a),
        strictly_deza=strictly,
        diameter=diam,
        beta=beta,
        alpha=n - 1 - beta,
    )


def _require_proper_deza(g: Graph) -> ParameterReport:
    rep = classify(g)
    if rep.tag != "Deza":
        raise GateError(f"expected a Deza graph that is not strongly regular, got {rep.tag}")
    n, k, b, a = rep.deza
    if a == b:
        raise GateError("children are undefined when a = b")
    return rep


def children(g: Graph) -> tuple[Graph, Graph]:
    """The graphs joining pairs with ``a`` and with ``b`` common neighbours."""
    rep = _require_proper_deza(g)
    _, _, b, a = rep.deza
    cn = g.common_neighbour_matrix()
    off = ~np.eye(g.n, dtype=bool)
    return Graph((cn == a) & off), Graph((cn == b) & off)


def clique_classes(g: Graph) -> Optional[list[list[int]]]:
    """Vertex classes if ``g`` is a disjoint union of complete graphs, else None."""
    rows = g.rows
    closed = [r | (1 << v) for v, r in enumerate(rows)]
    seen = 0
    classes = []
    for v in range(g.n):
        if (seen >> v) & 1:
            continue
        cls = closed[v]
        members = [u for u in range(g.n) if (cls >> u) & 1]
        if any(closed[u] != cls for u in members):
            return None
        seen |= cls
        classes.append(members)
    return classes


@dataclass(frozen=True)
class DdgWitness:
    is_ddg: bool
    child: Optional[str] = None
    class_sizes: tuple[int, ...] = ()
    thin: bool = False

    def __bool__(self) -> bool:
        return self.is_ddg


def is_ddg(g: Graph) -> DdgWitness:
    """Divisible-design test: is a child a disjoint union of cliques?"""
    gamma_a, gamma_b = children(g)
    for name, child in (("b", gamma_b), ("a", gamma_a)):
        classes = clique_classes(child)
        if classes is not None:
            sizes = tuple(sorted(len(c) for c in classes))
            return DdgWitness(True, name, sizes, thin=all(s == 2 for s in sizes))
    return DdgWitness(False)


def strong_product_k2(g: Graph) -> Graph:
    """Strong product with K2: vertex ``i`` becomes the adjacent pair ``2i, 2i+1``."""
    B = g.adjacency.astype(np.int8) + np.eye(g.n, dtype=np.int8)
    A = np.kron(B, np.ones((2, 2), dtype=np.int8)) - np.eye(2 * g.n, dtype=np.int8)
    return Graph(A.astype(bool))


# ---------------------------------------------------------------------------
# graph6 and edge lists


def _encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise Graph6Error(f"n={n} is too large for graph6")


def graph6_encode(g: Graph, max_n: int = 2**18) -> bytes:
    """graph6 bytes (no header, no trailing newline)."""
    n = g.n
    if n > max_n:
        raise Graph6Error(f"n={n} exceeds the graph6 encoding bound {max_n}")
    lo = np.tril_indices(n, -1)  # row j > column i, row-major: upper triangle column by column
    bits = g.adjacency[lo].astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    chunks = bits.reshape(-1, 6) @ np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8) + 63
    return _encode_n(n) + chunks.astype(np.uint8).tobytes()


def graph6_decode(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii", errors="replace")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[len(b">>graph6<<"):]
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[:1] in (b":", b";"):
        raise Graph6Error("sparse6 input is not supported")
    if data[:1] == b"&":
        raise Graph6Error("digraph6 input is not supported")
    if any(c < 63 or c > 126 for c in data):
        raise Graph6Error("graph6 bytes must lie in the range 63..126")
    vals = [c - 63 for c in data]
    if vals[0] != 63:
        n, pos = vals[0], 1
    elif len(vals) >= 2 and vals[1] != 63:
        if len(vals) < 4:
            raise Graph6Error("truncated graph6 size field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        pos = 4
    else:
        if len(vals) < 8:
            raise Graph6Error("truncated graph6 size field")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        pos = 8
    if n < 1:
        raise Graph6Error("graph6 graphs need at least one vertex")
    nbits = n * (n - 1) // 2
    body = vals[pos:]
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6} for n={n}")
    arr = np.array(body, dtype=np.uint8)
    bits = np.unpackbits(arr[:, None], axis=1)[:, 2:].ravel()
    if bits[nbits:].any():
        raise Graph6Error("nonzero padding bits in graph6 body")
    adj = np.zeros((n, n), dtype=bool)
    lo = np.tril_indices(n, -1)
    adj[lo] = bits[:nbits].astype(bool)
    return Graph(adj | adj.T)


def edge_list_text(g: Graph) -> str:
    return "".join(f"{u} {v}\n" for u, v in g.edges())


def parse_edge_list(text: str, n: Optional[int] = None) -> Graph:
    edges = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        u, v = (int(t) for t in line.split())
        edges.append((u, v))
    if n is None:
        n = 1 + max((max(e) for e in edges), default=0)
    return Graph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# invariants and isomorphism


def vertex_invariants(g: Graph) -> list[tuple]:
    """Degree plus sorted common-neighbour counts towards neighbours / non-neighbours."""
    cn = g.common_neighbour_matrix()
    adj = g.adjacency
    out = []
    for v in range(g.n):
        mask = adj[v]
        other = ~mask
        other[v] = False
        out.append(
            (
                int(mask.sum()),
                tuple(np.sort(cn[v, mask]).tolist()),
                tuple(np.sort(cn[v, other]).tolist()),
            )
        )
    return out


def refine_colours(rows: Sequence[int], colours: Sequence) -> list[int]:
    """Colour refinement to a stable partition.

    Colours are canonical: relabelled by sorted signature, so two graphs refined
    together in a disjoint union receive comparable colours.
    """
    n = len(rows)
    keys = sorted(set(colours))
    col = [keys.index(c) for c in colours]
    ncls = len(keys)
    while True:
        sig = []
        for v in range(n):
            r = rows[v]
            neigh = []
            while r:
                low = r & -r
                neigh.append(col[low.bit_length() - 1])
                r ^= low
            sig.append((col[v], tuple(sorted(neigh))))
        keys = sorted(set(sig))
        index = {s: i for i, s in enumerate(keys)}
        col = [index[s] for s in sig]
        if len(keys) == ncls:
            return col
        ncls = len(keys)


@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    mapping: Optional[Permutation] = field(default=None)
    nodes: int = 0

    def __bool__(self) -> bool:
        return self.isomorphic


def are_isomorphic(g1: Graph, g2: Graph, max_n: Optional[int] = None) -> IsoResult:
    """Exact backtracking isomorphism test with a certifying vertex map.

    ``mapping(v)`` is the vertex of ``g2`` that vertex ``v`` of ``g1`` goes to.
    """
    bound = size_bound(ISO_MAX_N) if max_n is None else max_n
    if max(g1.n, g2.n) > bound:
        raise SizeBoundError(f"isomorphism test limited to n <= {bound}")
    n = g1.n
    if n != g2.n or g1.edge_count != g2.edge_count:
        return IsoResult(False)
    inv1, inv2 = vertex_invariants(g1), vertex_invariants(g2)
    if sorted(inv1) != sorted(inv2):
        return IsoResult(False)
    rows = list(g1.rows) + [r << n for r in g2.rows]
    col = refine_colours(rows, inv1 + inv2)
    c1, c2 = col[:n], col[n:]
    if sorted(c1) != sorted(c2):
        return IsoResult(False)
    by_colour: dict[int, int] = {}
    for v, c in enumerate(c2):
        by_colour[c] = by_colour.get(c, 0) | (1 << v)
    cands = [by_colour[c] for c in c1]
    maps, nodes = _kernels.search_isomorphisms(list(g1.rows), list(g2.rows), n, cands, 1)
    if not maps:
        return IsoResult(False, nodes=nodes)
    perm = Permutation(tuple(maps[0]))
    if g1.permuted(perm) != g2:
        raise InvariantError("isomorphism search returned a non-isomorphism")
    return IsoResult(True, perm, nodes)
