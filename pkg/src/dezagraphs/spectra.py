"""Exact spectral checks with integer arithmetic only.

Closed-walk counts use Python integers, multiplicities of integer eigenvalues
use fraction-free elimination. Nothing here touches floating point.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

import numpy as np

from .graph import Graph


@dataclass(frozen=True)
class WalkProfile:
    """``counts[v][m - 2]`` is the number of closed walks of length m at v."""

    max_length: int
    counts: tuple[tuple[int, ...], ...]

    def at(self, v: int, m: int) -> int:
        return self.counts[v][m - 2]

    def column(self, m: int) -> list[int]:
        return [row[m - 2] for row in self.counts]

    def is_constant(self) -> bool:
        return all(row == self.counts[0] for row in self.counts)


@dataclass(frozen=True)
class WalkRegularity:
    walk_regular: bool
    first_failure: Optional[int] = None
    checked_up_to: int = 0

    def __bool__(self) -> bool:
        return self.walk_regular


def _closed_walks(g: Graph, max_length: int) -> Iterator[tuple[int, list[int]]]:
    """Yield ``(m, diag(A^m))`` for m = 2..max_length in order."""
    n = g.n
    nbrs = [np.flatnonzero(g.adjacency[i]) for i in range(n)]

    def step(M):
        out = np.empty((n, n), dtype=object)
        for i in range(n):
            out[i] = M[nbrs[i]].sum(axis=0) if len(nbrs[i]) else 0
        return out

    prev = np.eye(n, dtype=np.int64).astype(object)
    s = 0
    while 2 * s < max_length:
        cur = step(prev)
        s += 1
        # prev = A^(s-1), cur = A^s
        if s > 1:
            yield 2 * s - 1, [int(v) for v in (prev * cur).sum(axis=1)]
        if 2 * s <= max_length:
            yield 2 * s, [int(v) for v in (cur * cur).sum(axis=1)]
        prev = cur


def walk_profile(g: Graph, max_length: Optional[int] = None) -> WalkProfile:
    """Closed-walk counts at every vertex for lengths 2..max_length (default n - 1)."""
    L = max(2, g.n - 1) if max_length is None else max_length
    cols = [diag for _, diag in _closed_walks(g, L)]
    counts = tuple(tuple(col[v] for col in cols) for v in range(g.n))
    return WalkProfile(L, counts)


def is_walk_regular(g: Graph) -> WalkRegularity:
    """Walk-regularity, checking diag(A^m) for m = 2..n-1.

    Higher powers are combinations of lower ones by Cayley-Hamilton, so this
    range is enough. Stops at the first non-constant diagonal.
    """
    L = g.n - 1
    for m, diag in _closed_walks(g, L):
        if any(d != diag[0] for d in diag):
            return WalkRegularity(False, m, m)
    return WalkRegularity(True, None, max(L, 2) if g.n > 2 else L)


def integer_rank(M) -> int:
    """Rank of an integer matrix by Bareiss fraction-free elimination."""
    A = np.array(M, dtype=object)
    if A.ndim != 2:
        raise ValueError("expected a matrix")
    rows, cols = A.shape
    A = A.copy()
    prev = 1
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.flatnonzero(A[r:, c] != 0)
        if not len(nz):
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        piv = A[r, c]
        if r + 1 < rows:
            below = A[r + 1 :, c : c + 1]
            A[r + 1 :, c + 1 :] = (A[r + 1 :, c + 1 :] * piv - below * A[r, c + 1 :]) // prev
            A[r + 1 :, c] = 0
        prev = piv
        r += 1
    return r


def eigenvalue_multiplicity(g: Graph, lam: int) -> int:
    """Multiplicity of the integer eigenvalue ``lam`` as n - rank(A - lam I).

    Adjacency matrices are symmetric, so geometric and algebraic
    multiplicities coincide.
    """
    if int(lam) != lam:
        raise ValueError("only integer eigenvalues are supported")
    A = g.adjacency.astype(np.int64) - int(lam) * np.eye(g.n, dtype=np.int64)
    return g.n - integer_rank(A.astype(object))
