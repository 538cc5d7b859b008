# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled packed-vector hot loops; see _packedops_py for the contract."""

import numpy as np

cimport numpy as cnp  # noqa: F401  (buffer protocol)
from libc.stdint cimport int64_t, uint64_t

BACKEND = "cython"


def trim_select(packed, sizes, weights, fam, int k, unsigned long long guard):
    cdef uint64_t[::1] pk = np.ascontiguousarray(packed, dtype=np.uint64)
    cdef uint64_t[::1] fm = np.ascontiguousarray(fam, dtype=np.uint64)
    cdef int64_t[::1] sz = np.ascontiguousarray(sizes, dtype=np.int64)
    cdef int64_t[::1] wt = np.ascontiguousarray(weights, dtype=np.int64)
    out_arr = np.full((fm.shape[0], k), -1, dtype=np.int64)
    cdef int64_t[:, ::1] out = out_arr
    best_arr = np.empty(k, dtype=np.int64)
    cdef int64_t[::1] best = best_arr

    cdef Py_ssize_t s, m
    cdef int i
    cdef uint64_t word, g = guard
    cdef int64_t w
    for s in range(fm.shape[0]):
        word = fm[s] | g
        for i in range(k):
            best[i] = 0
        for m in range(pk.shape[0]):
            if ((word - pk[m]) & g) != g:
                continue
            i = <int> sz[m] - 1
            if i < 0 or i >= k:
                continue
            w = wt[m]
            if out[s, i] < 0 or w < best[i]:
                out[s, i] = m
                best[i] = w
    return out_arr


def bullet_pairs(packed_a, sizes_a, packed_b, sizes_b, int k,
                 unsigned long long rmask, unsigned long long guard):
    cdef uint64_t[::1] pa = np.ascontiguousarray(packed_a, dtype=np.uint64)
    cdef uint64_t[::1] pb = np.ascontiguousarray(packed_b, dtype=np.uint64)
    cdef int64_t[::1] sa = np.ascontiguousarray(sizes_a, dtype=np.int64)
    cdef int64_t[::1] sb = np.ascontiguousarray(sizes_b, dtype=np.int64)
    cdef uint64_t rg = rmask | guard, g = guard, s
    cdef Py_ssize_t i, j, cnt = 0
    cdef Py_ssize_t na = pa.shape[0], nb = pb.shape[0]

    ia_arr = np.empty(na * nb, dtype=np.int64)
    ib_arr = np.empty(na * nb, dtype=np.int64)
    ps_arr = np.empty(na * nb, dtype=np.uint64)
    cdef int64_t[::1] ia = ia_arr
    cdef int64_t[::1] ib = ib_arr
    cdef uint64_t[::1] ps = ps_arr

    for i in range(na):
        for j in range(nb):
            if sa[i] + sb[j] > k:
                continue
            s = pa[i] + pb[j]
            if ((rg - s) & g) != g:
                continue
            ia[cnt] = i
            ib[cnt] = j
            ps[cnt] = s
            cnt += 1
    return ia_arr[:cnt].copy(), ib_arr[:cnt].copy(), ps_arr[:cnt].copy()
