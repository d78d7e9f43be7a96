"""Pure-Python kernels over bitset rows (Python ints).

Both searches visit vertices in the same order as the compiled core: the
unassigned vertex with fewest candidates first (ties to the smaller index),
candidates in increasing order.  Results and node counts therefore agree
exactly between backends.
"""
from __future__ import annotations

import numpy as np


def common_neighbours(adj: np.ndarray) -> np.ndarray:
    a = adj.astype(np.int32)
    return a @ a


def _pick(cands, unassigned):
    best = -1
    best_count = 1 << 30
    u = unassigned
    while u:
        low = u & -u
        v = low.bit_length() - 1
        u ^= low
        c = cands[v].bit_count()
        if c < best_count:
            best, best_count = v, c
            if c == 0:
                break
    return best, best_count


def search_involutions(rows, n, cands, limit=-1):
    """Enumerate non-identity involutive automorphisms.

    ``cands[v]`` is the bitset of admissible images of ``v``; the caller
    folds vertex invariants and the swap-mode restriction into it.
    Returns ``(images_list, nodes)``.
    """
    full = (1 << n) - 1
    nrows = [full & ~r for r in rows]
    phi = [-1] * n
    results = []
    nodes = 0

    def rec(cands, unassigned):
        nonlocal nodes
        nodes += 1
        if not unassigned:
            if any(phi[i] != i for i in range(n)):
                results.append(list(phi))
            return 0 <= limit <= len(results)
        v, count = _pick(cands, unassigned)
        if count == 0:
            return False
        cv = cands[v]
        while cv:
            low = cv & -cv
            t = low.bit_length() - 1
            cv ^= low
            if t != v and not (cands[t] >> v) & 1:
                continue
            used = (1 << v) | (1 << t)
            rest = unassigned & ~used
            if t == v:
                masks = (nrows[v] & ~used, rows[v] & ~used)
            else:
                # index: adj(w, v) * 2 + adj(w, t)
                masks = (
                    nrows[t] & nrows[v] & ~used,
                    nrows[t] & rows[v] & ~used,
                    rows[t] & nrows[v] & ~used,
                    rows[t] & rows[v] & ~used,
                )
            new = list(cands)
            ok = True
            u = rest
            while u:
                low = u & -u
                w = low.bit_length() - 1
                u ^= low
                if t == v:
                    m = masks[(rows[w] >> v) & 1]
                else:
                    m = masks[((rows[w] >> v) & 1) * 2 + ((rows[w] >> t) & 1)]
                c = cands[w] & m
                if not c:
                    ok = False
                    break
                new[w] = c
            if ok:
                phi[v] = t
                phi[t] = v
                if rec(new, rest):
                    return True
                phi[v] = -1
                phi[t] = -1
        return False

    rec(list(cands), full)
    return results, nodes


def search_isomorphisms(rows1, rows2, n, cands, limit=1):
    """Enumerate isomorphisms from graph 1 onto graph 2 (``images_list, nodes``)."""
    full = (1 << n) - 1
    nrows2 = [full & ~r for r in rows2]
    phi = [-1] * n
    results = []
    nodes = 0

    def rec(cands, unassigned):
        nonlocal nodes
        nodes += 1
        if not unassigned:
            results.append(list(phi))
            return 0 <= limit <= len(results)
        v, count = _pick(cands, unassigned)
        if count == 0:
            return False
        rest = unassigned & ~(1 << v)
        cv = cands[v]
        while cv:
            low = cv & -cv
            t = low.bit_length() - 1
            cv ^= low
            masks = (nrows2[t] & ~low, rows2[t] & ~low)
            new = list(cands)
            ok = True
            u = rest
            while u:
                lw = u & -u
                w = lw.bit_length() - 1
                u ^= lw
                c = cands[w] & masks[(rows1[w] >> v) & 1]
                if not c:
                    ok = False
                    break
                new[w] = c
            if ok:
                phi[v] = t
                if rec(new, rest):
                    return True
                phi[v] = -1
        return False

    rec(list(cands), full)
    return results, nodes
