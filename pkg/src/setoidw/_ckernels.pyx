# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: per matrix over an encoded tree table and PER law checks."""

import numpy as np
cimport numpy as cnp

cdef extern from *:
    int __builtin_ctzll(unsigned long long)

cnp.import_array()


def per_matrix(const long[::1] name_of, const long[::1] child_start,
               const long[::1] child_ids, const unsigned char[:, ::1] base_eq,
               const long[::1] pair_start, const long[::1] pair_i,
               const long[::1] pair_j):
    cdef Py_ssize_t n = name_of.shape[0]
    cdef Py_ssize_t na = base_eq.shape[0]
    out = np.zeros((n, n), dtype=np.uint8)
    cdef unsigned char[:, ::1] m = out
    cdef Py_ssize_t u, v, k, k0, k1, p, q, cu, cv
    cdef unsigned char ok
    with nogil:
        for u in range(n):
            p = name_of[u]
            cu = child_start[u]
            for v in range(n):
                q = name_of[v]
                if not base_eq[p, q]:
                    continue
                cv = child_start[v]
                k0 = pair_start[p * na + q]
                k1 = pair_start[p * na + q + 1]
                ok = 1
                for k in range(k0, k1):
                    if not m[child_ids[cu + pair_i[k]], child_ids[cv + pair_j[k]]]:
                        ok = 0
                        break
                m[u, v] = ok
    return out


def per_law_violations(const unsigned char[:, ::1] m, Py_ssize_t max_report=1000):
    cdef Py_ssize_t n = m.shape[0]
    cdef Py_ssize_t nw = (n + 63) // 64
    cdef Py_ssize_t i, j, w, b
    cdef unsigned long long miss
    sym = []
    for i in range(n):
        for j in range(n):
            if m[i, j] and not m[j, i] and len(sym) < max_report:
                sym.append((i, j))
    # packed rows; violation (i, j, k) iff j in row i, k in row j, k not in row i
    cdef unsigned long long[:, ::1] bits = np.zeros((n, max(nw, 1)), dtype=np.uint64)
    for i in range(n):
        for j in range(n):
            if m[i, j]:
                bits[i, j >> 6] |= (<unsigned long long>1) << (j & 63)
    trans = []
    for i in range(n):
        for j in range(n):
            if not m[i, j]:
                continue
            for w in range(nw):
                miss = bits[j, w] & ~bits[i, w]
                while miss and len(trans) < max_report:
                    b = __builtin_ctzll(miss)
                    trans.append((i, j, w * 64 + b))
                    miss &= miss - 1
    return sym, trans
