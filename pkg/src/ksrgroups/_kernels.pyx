# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: grid orbit labelling and stabiliser/positivity scans."""
import numpy as np
cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64


cdef inline i64 _find(i64[::1] parent, i64 i) noexcept nogil:
    cdef i64 root = i, nxt
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        nxt = parent[i]
        parent[i] = root
        i = nxt
    return root


def orbit_labels(gens, long d):
    cdef i64[:, :, ::1] g = np.ascontiguousarray(gens, dtype=np.int64)
    cdef Py_ssize_t ng = g.shape[0]
    cdef Py_ssize_t n = g.shape[1] if g.ndim == 3 else 0
    cdef i64 size = 1
    cdef Py_ssize_t t
    for t in range(n):
        size *= d
    out = np.arange(size, dtype=np.int64)
    if n == 0 or ng == 0:
        return out
    cdef i64[::1] parent = out
    cdef i64[::1] pt = np.zeros(n, dtype=np.int64)
    cdef i64 idx, img, v, a, b
    cdef Py_ssize_t k, i, j
    with nogil:
        for idx in range(size):
            v = idx
            for i in range(n - 1, -1, -1):
                pt[i] = v % d
                v = v // d
            for k in range(ng):
                img = 0
                for i in range(n):
                    v = 0
                    for j in range(n):
                        v += g[k, i, j] * pt[j]
                    v = v % d
                    if v < 0:
                        v += d
                    img = img * d + v
                a = _find(parent, idx)
                b = _find(parent, img)
                if a < b:
                    parent[b] = a
                elif b < a:
                    parent[a] = b
        for idx in range(size):
            parent[idx] = _find(parent, idx)
    return out


def stabilizer_mask(mats, k, long d):
    cdef i64[:, :, ::1] m = np.ascontiguousarray(mats, dtype=np.int64)
    cdef i64[::1] kv = np.ascontiguousarray(k, dtype=np.int64)
    cdef Py_ssize_t count = m.shape[0], n = m.shape[1]
    out = np.ones(count, dtype=np.uint8)
    cdef cnp.uint8_t[::1] o = out
    cdef Py_ssize_t e, i, j
    cdef i64 v
    with nogil:
        for e in range(count):
            for i in range(n):
                v = -kv[i]
                for j in range(n):
                    v += m[e, i, j] * kv[j]
                if v % d != 0:
                    o[e] = 0
                    break
    return out.astype(bool)


def positive_mask(mats, roots):
    cdef i64[:, :, ::1] m = np.ascontiguousarray(mats, dtype=np.int64)
    cdef i64[:, ::1] rt = np.ascontiguousarray(roots, dtype=np.int64)
    cdef Py_ssize_t count = m.shape[0], r = m.shape[1]
    cdef Py_ssize_t nroots = rt.shape[1] if rt.shape[0] else 0
    out = np.ones(count, dtype=np.uint8)
    cdef cnp.uint8_t[::1] o = out
    cdef Py_ssize_t e, c, i, j
    cdef i64 s
    with nogil:
        for e in range(count):
            for c in range(nroots):
                s = 0
                for i in range(r):
                    for j in range(r):
                        s += m[e, i, j] * rt[j, c]
                if s <= 0:
                    o[e] = 0
                    break
    return out.astype(bool)
