# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels over packed uint64 bit rows.

Mirrors ``_pure`` exactly: same vertex choice rule, same candidate order,
hence identical results and node counts.
"""
import numpy as np

from libc.stdint cimport uint64_t, int32_t


cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil


def pack_rows(rows, int n):
    """Pack Python-int bitsets into an ``(n, W)`` uint64 array."""
    cdef int W = (n + 63) // 64
    out = np.zeros((len(rows), W), dtype=np.uint64)
    mask = (1 << 64) - 1
    for i, r in enumerate(rows):
        for k in range(W):
            out[i, k] = (r >> (64 * k)) & mask
    return out


def common_neighbours(const uint64_t[:, ::1] bits, int n):
    cdef int W = bits.shape[1]
    out = np.zeros((n, n), dtype=np.int32)
    cdef int32_t[:, ::1] o = out
    cdef int i, j, k, c
    with nogil:
        for i in range(n):
            for j in range(i, n):
                c = 0
                for k in range(W):
                    c += __builtin_popcountll(bits[i, k] & bits[j, k])
                o[i, j] = c
                o[j, i] = c
    return out


cdef class _Search:
    cdef int n, W
    cdef bint involution
    cdef long limit
    cdef public long nodes
    cdef uint64_t[:, ::1] rows1
    cdef uint64_t[:, ::1] rows2
    cdef uint64_t[:, ::1] nrows2
    cdef uint64_t[:, :, ::1] stack
    cdef int[::1] phi
    cdef public list results

    def __init__(self, rows1, rows2, cands, int n, bint involution, long limit):
        self.n = n
        self.W = (n + 63) // 64
        self.involution = involution
        self.limit = limit
        self.nodes = 0
        self.results = []
        self.rows1 = np.ascontiguousarray(rows1, dtype=np.uint64)
        self.rows2 = np.ascontiguousarray(rows2, dtype=np.uint64)
        full = pack_rows([(1 << int(n)) - 1], n)[0]
        self.nrows2 = np.ascontiguousarray(~np.asarray(rows2, dtype=np.uint64) & full)
        stack = np.zeros((n + 1, n, self.W), dtype=np.uint64)
        stack[0] = cands
        self.stack = stack
        self.phi = np.full(n, -1, dtype=np.intc)

    cdef inline bint _adj1(self, int w, int v):
        return (self.rows1[w, v >> 6] >> (v & 63)) & 1

    cdef inline bint _has(self, int depth, int w, int t):
        return (self.stack[depth, w, t >> 6] >> (t & 63)) & 1

    cdef bint _propagate(self, int depth, int v, int t):
        cdef int w, k, n = self.n, W = self.W
        cdef uint64_t m, acc
        cdef bint aw, bw
        for w in range(n):
            if self.phi[w] != -1 or w == v:
                continue
            if self.involution and w == t:
                continue
            aw = self._adj1(w, v)
            bw = self.involution and self._adj1(w, t)
            acc = 0
            for k in range(W):
                if aw:
                    m = self.rows2[t, k]
                else:
                    m = self.nrows2[t, k]
                if self.involution and t != v:
                    if bw:
                        m &= self.rows1[v, k]
                    else:
                        m &= self.nrows2[v, k]
                m &= self.stack[depth, w, k]
                if self.involution and k == (v >> 6):
                    m &= ~((<uint64_t>1) << (v & 63))
                if k == (t >> 6):
                    m &= ~((<uint64_t>1) << (t & 63))
                self.stack[depth + 1, w, k] = m
                acc |= m
            if acc == 0:
                return False
        return True

    cdef bint _record(self):
        cdef int i
        cdef bint moved = False
        if self.involution:
            for i in range(self.n):
                if self.phi[i] != i:
                    moved = True
                    break
            if not moved:
                return False
        self.results.append([self.phi[i] for i in range(self.n)])
        return self.limit >= 0 and len(self.results) >= self.limit

    cdef bint _rec(self, int depth):
        cdef int v, t, k, b, c, best = -1, best_count = 1 << 30, n = self.n
        cdef uint64_t word
        self.nodes += 1
        for v in range(n):
            if self.phi[v] != -1:
                continue
            c = 0
            for k in range(self.W):
                c += __builtin_popcountll(self.stack[depth, v, k])
            if c < best_count:
                best = v
                best_count = c
                if c == 0:
                    break
        if best == -1:
            return self._record()
        if best_count == 0:
            return False
        v = best
        for k in range(self.W):
            word = self.stack[depth, v, k]
            while word:
                b = __builtin_ctzll(word)
                word &= word - 1
                t = k * 64 + b
                if self.involution and t != v and not self._has(depth, t, v):
                    continue
                if not self._propagate(depth, v, t):
                    continue
                self.phi[v] = t
                if self.involution:
                    self.phi[t] = v
                if self._rec(depth + 1):
                    return True
                self.phi[v] = -1
                if self.involution:
                    self.phi[t] = -1
        return False

    def run(self):
        self._rec(0)
        return self.results, self.nodes


def search_involutions(rows, int n, cands, long limit=-1):
    s = _Search(rows, rows, cands, n, True, limit)
    return s.run()


def search_isomorphisms(rows1, rows2, int n, cands, long limit=1):
    s = _Search(rows1, rows2, cands, n, False, limit)
    return s.run()
