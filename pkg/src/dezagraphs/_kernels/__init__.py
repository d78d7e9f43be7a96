"""Hot kernels: compiled core when available, pure Python otherwise.

Set ``DEZA_PURE=1`` to force the pure-Python backend at import, or call
:func:`set_backend` at run time.
"""
from __future__ import annotations

import importlib
import os

import numpy as np

from . import _pure

BACKEND = "python"
_core = None
if os.environ.get("DEZA_PURE", "") not in ("1", "true", "yes"):
    try:
        _core = importlib.import_module("._core", __name__)
        BACKEND = "cython"
    except ImportError:  # extension not built
        _core = None


_override = None


def set_backend(name) -> None:
    """Pin the backend used when callers pass none; ``None`` restores the default."""
    global _override
    if name is not None:
        _backend(name)
    _override = name


def active_backend() -> str:
    return "python" if _backend(None) is _pure else "cython"


def _backend(name):
    if name is None:
        name = _override
    if name is None:
        return _core if _core is not None else _pure
    if name == "cython":
        if _core is None:
            raise ImportError("compiled kernels are not built")
        return _core
    if name == "python":
        return _pure
    raise ValueError(f"unknown backend {name!r}")


def common_neighbours(adj: np.ndarray, rows=None, backend=None) -> np.ndarray:
    """Matrix of common-neighbour counts (diagonal holds the degrees)."""
    mod = _backend(backend)
    if mod is _pure:
        return _pure.common_neighbours(adj)
    n = adj.shape[0]
    if rows is None:
        rows = [int.from_bytes(np.packbits(r, bitorder="little").tobytes(), "little") for r in adj]
    return _core.common_neighbours(_core.pack_rows(rows, n), n)


def search_involutions(rows, n, cands, limit=-1, backend=None):
    mod = _backend(backend)
    if mod is _pure:
        return _pure.search_involutions(rows, n, cands, limit)
    return _core.search_involutions(_core.pack_rows(rows, n), n, _core.pack_rows(cands, n), limit)


def search_isomorphisms(rows1, rows2, n, cands, limit=1, backend=None):
    mod = _backend(backend)
    if mod is _pure:
        return _pure.search_isomorphisms(rows1, rows2, n, cands, limit)
    return _core.search_isomorphisms(
        _core.pack_rows(rows1, n), _core.pack_rows(rows2, n), n, _core.pack_rows(cands, n), limit
    )
