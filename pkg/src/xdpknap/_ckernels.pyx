# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernels. Semantics match ``_pykernels`` exactly."""

import numpy as np
cimport numpy as cnp

cnp.import_array()

NAME = "cython"


cpdef Py_ssize_t bin_index(double b, double c, Py_ssize_t T):
    cdef Py_ssize_t k
    if b >= c:
        return T
    k = <Py_ssize_t>(b * (T / <double>c))
    return k if k < T else T


def greedy_fill(p, w, double c):
    cdef const double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = pv.shape[0]
    taken_arr = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] taken = taken_arr
    cdef double S = 0.0, W = 0.0, S_at_r = 0.0, W_at_r = 0.0, wi
    cdef Py_ssize_t r = 0, idx
    for idx in range(n):
        wi = wv[idx]
        if W + wi <= c:
            S += pv[idx]
            W += wi
            taken[idx] = 1
        elif r == 0:
            r = idx + 1
            S_at_r = S
            W_at_r = W
    return taken_arr, S, W, r, S_at_r, W_at_r


def greedy_count(p, w, double c):
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = wv.shape[0], idx, count = 0
    cdef double W = 0.0, wi
    for idx in range(n):
        wi = wv[idx]
        if W + wi <= c:
            W += wi
            count += 1
    return count


def xdp_forward(p, w, double c, Py_ssize_t T):
    cdef const double[::1] pv = np.ascontiguousarray(p, dtype=np.float64)
    cdef const double[::1] wv = np.ascontiguousarray(w, dtype=np.float64)
    cdef Py_ssize_t n = pv.shape[0]
    XP_arr = np.zeros(T + 1, dtype=np.float64)
    XW_arr = np.zeros(T + 1, dtype=np.float64)
    XO_arr = np.full(T + 1, -1, dtype=np.int32)
    back_arr = np.zeros((n + 1, T + 1), dtype=np.int32)
    backbin_arr = np.zeros((n + 1, T + 1), dtype=np.int32)
    cdef double[::1] XP = XP_arr
    cdef double[::1] XW = XW_arr
    cdef cnp.int32_t[::1] XO = XO_arr
    cdef cnp.int32_t[:, ::1] back = back_arr
    cdef cnp.int32_t[:, ::1] backbin = backbin_arr
    cdef double scale = T / c
    cdef double S = 0.0, a, b, pi, wi
    cdef Py_ssize_t bestbin = 0, i, j, k
    XO[0] = 0
    with nogil:
        for i in range(1, n + 1):
            pi = pv[i - 1]
            wi = wv[i - 1]
            j = T
            while j >= 0:
                if XO[j] >= 0:
                    b = XW[j] + wi
                    if b <= c:
                        a = XP[j] + pi
                        if b >= c:
                            k = T
                        else:
                            k = <Py_ssize_t>(b * scale)
                            if k > T:
                                k = T
                        if a > XP[k]:
                            XP[k] = a
                            XW[k] = b
                            back[i, k] = XO[j]
                            backbin[i, k] = <cnp.int32_t>j
                            XO[k] = <cnp.int32_t>i
                            if a > S:
                                S = a
                                bestbin = k
                j -= 1
    return XP_arr, XW_arr, XO_arr, back_arr, backbin_arr, S, bestbin


def backtrack_chain(XO, back, backbin, Py_ssize_t bestbin):
    cdef const cnp.int32_t[::1] xo = np.ascontiguousarray(XO, dtype=np.int32)
    cdef const cnp.int32_t[:, ::1] bk = back
    cdef const cnp.int32_t[:, ::1] bb = backbin
    cdef Py_ssize_t k = bestbin, i = xo[bestbin], prev = bk.shape[0], m = 0, nxt
    out_arr = np.empty(max(i, 0), dtype=np.int64)
    cdef cnp.int64_t[::1] out = out_arr
    while i > 0:
        if i >= prev:
            raise RuntimeError(f"backtrack chain not decreasing at object {i} (bin {k})")
        out[m] = i
        m += 1
        prev = i
        nxt = bk[i, k]
        k = bb[i, k]
        i = nxt
    return out_arr[:m].copy()
