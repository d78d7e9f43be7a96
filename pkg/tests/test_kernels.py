"""The compiled and pure-Python kernels must agree exactly, node counts included."""
import numpy as np
import pytest

from dezagraphs import _kernels
from dezagraphs.graph import Graph, refine_colours, vertex_invariants

from conftest import base, doubled

needs_core = pytest.mark.skipif(_kernels._core is None, reason="compiled kernels not built")


def random_graph(n, p, seed):
    rng = np.random.default_rng(seed)
    m = np.triu(rng.random((n, n)) < p, 1)
    return Graph(m | m.T)


def test_backend_selection():
    assert _kernels.BACKEND in ("cython", "python")
    _kernels.set_backend("python")
    assert _kernels.active_backend() == "python"
    _kernels.set_backend(None)
    with pytest.raises(ValueError):
        _kernels.set_backend("fortran")


@pytest.mark.parametrize("n", [1, 5, 63, 64, 65, 130])
def test_common_neighbours(n, backend):
    g = random_graph(n, 0.4, n)
    A = g.adjacency.astype(np.int64)
    got = _kernels.common_neighbours(g.adjacency, list(g.rows))
    assert np.array_equal(got, A @ A)


def involution_cands(g):
    n = g.n
    col = refine_colours(list(g.rows), vertex_invariants(g))
    full = (1 << n) - 1
    out = []
    for v in range(n):
        same = sum(1 << u for u in range(n) if col[u] == col[v])
        out.append(same & ((full & ~g.rows[v]) | (1 << v)))
    return out


@needs_core
@pytest.mark.parametrize("name", ["conf3", "P25", "HS"])
def test_involution_search_parity(name):
    g = base(name).graph
    rows, cands = list(g.rows), involution_cands(g)
    py = _kernels.search_involutions(rows, g.n, cands, -1, backend="python")
    cy = _kernels.search_involutions(rows, g.n, cands, -1, backend="cython")
    assert py == cy


@needs_core
@pytest.mark.parametrize("seed", range(5))
def test_isomorphism_search_parity(seed):
    g = doubled("conf3", "C2")
    rng = np.random.default_rng(seed)
    perm = rng.permutation(g.n)
    h = Graph(g.adjacency[np.ix_(np.argsort(perm), np.argsort(perm))])
    full = [(1 << g.n) - 1] * g.n
    py = _kernels.search_isomorphisms(list(g.rows), list(h.rows), g.n, full, 1, backend="python")
    cy = _kernels.search_isomorphisms(list(g.rows), list(h.rows), g.n, full, 1, backend="cython")
    assert py == cy and len(py[0]) == 1
