# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled candidate-scan kernel.

Mirrors ``_scan_py.scan_exponents`` exactly; candidates are walked with an
odometer so each step touches only the coefficient block of the digit that
changed.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

DEF INDET_CODE = -1073741824   # -(2**30)
DEF SKIP_CODE = 1073741824     # 2**30


def scan_exponents(
    cnp.ndarray[cnp.uint8_t, ndim=2] add_table,
    cnp.ndarray[cnp.uint8_t, ndim=2] mul_table,
    int p,
    int e,
    cnp.ndarray[cnp.uint8_t, ndim=2] basis,
    cnp.ndarray[cnp.uint8_t, ndim=1] target,
    int m,
    int dmax,
    int n,
    int L,
    bint exact_degree,
):
    cdef int q = 1
    cdef int i, y
    for i in range(e):
        q *= p
    cdef int R = m * (dmax + 1)
    cdef long long total = 1
    for i in range(R):
        total *= q
    cdef cnp.ndarray[cnp.int32_t, ndim=1] out = np.empty(total, dtype=np.int32)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] acc = target.copy()
    cdef cnp.ndarray[cnp.int32_t, ndim=1] digits = np.zeros(R, dtype=np.int32)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] negarr = np.zeros(q, dtype=np.uint8)
    for i in range(q):
        for y in range(q):
            if add_table[i, y] == 0:
                negarr[i] = <cnp.uint8_t> y
                break

    cdef cnp.uint8_t[:, :] add_t = add_table
    cdef cnp.uint8_t[:, :] mul_t = mul_table
    cdef cnp.uint8_t[:, :] bas = basis
    cdef cnp.uint8_t[:] neg_t = negarr
    cdef cnp.uint8_t[:] a = acc
    cdef cnp.int32_t[:] dig = digits
    cdef cnp.int32_t[:] res = out

    cdef int nL = n * L
    cdef long long idx
    cdef int r, v, row, base, old, new, delta, code, rexp, pos
    cdef bint any_top

    for idx in range(total):
        # max over rows of the first-nonzero fractional exponent
        code = INDET_CODE
        for row in range(n):
            base = row * L
            rexp = INDET_CODE
            for pos in range(L):
                if a[base + pos] != 0:
                    rexp = -(pos + 1)
                    break
            if rexp > code:
                code = rexp
            if code == -1:
                break
        if exact_degree:
            any_top = False
            for r in range(m):
                if dig[r * (dmax + 1) + dmax] != 0:
                    any_top = True
                    break
            if not any_top:
                code = SKIP_CODE
        res[idx] = code
        if idx == total - 1:
            break
        # odometer step: digit R-1 varies fastest
        r = R - 1
        while True:
            old = dig[r]
            new = old + 1
            if new == q:
                new = 0
            dig[r] = new
            delta = add_t[new, neg_t[old]]
            if delta != 0:
                for v in range(nL):
                    a[v] = add_t[a[v], mul_t[delta, bas[r, v]]]
            if new != 0:
                break
            r -= 1
    return out
