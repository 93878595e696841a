"""Reference (numpy) implementation of the candidate-scan kernel.

Semantics are shared with the compiled twin in ``_scan_cy.pyx``; the
agreement test in ``tests/test_kernel.py`` pins them together.

Candidates are polynomial vectors x = (x_1 .. x_m) with deg x_j <= dmax,
enumerated in lexicographic order on the concatenated coefficient digit
string (c_{1,0}, ..., c_{1,dmax}, c_{2,0}, ..., c_{m,dmax}), the leftmost
digit being the most significant.  For each candidate the kernel reports the
exponent of max_i || frac(sum_j x_j A_ij - theta_i) || over the first L
fractional coefficients:

* code -(v+1) when the first nonzero fractional coefficient over all rows
  sits at z^-(v+1)  (value norm exactly q^-(v+1));
* INDET when every row vanishes through z^-L;
* SKIP when ``exact_degree`` is set and no coordinate has degree dmax.
"""

from __future__ import annotations

import numpy as np

INDET = -(2**30)
SKIP = 2**30

_BLOCK = 4096


def scan_exponents(
    add_table: np.ndarray,
    mul_table: np.ndarray,
    p: int,
    e: int,
    basis: np.ndarray,
    target: np.ndarray,
    m: int,
    dmax: int,
    n: int,
    L: int,
    exact_degree: bool,
) -> np.ndarray:
    """Scan all q^(m*(dmax+1)) candidates; see module docstring for codes."""
    q = p**e
    R = m * (dmax + 1)
    total = q**R
    out = np.empty(total, dtype=np.int32)
    places = q ** np.arange(R - 1, -1, -1, dtype=np.int64)
    top_rows = np.arange(m) * (dmax + 1) + dmax
    basis_i64 = basis.astype(np.int64)
    target_i64 = target.astype(np.int64)
    for start in range(0, total, _BLOCK):
        idx = np.arange(start, min(start + _BLOCK, total), dtype=np.int64)
        digits = (idx[:, None] // places[None, :]) % q  # (B, R)
        if e == 1:
            acc = target_i64[None, :] + digits @ basis_i64
            acc %= p
        else:
            acc = np.broadcast_to(target, (len(idx), n * L)).copy()
            for r in range(R):
                scaled = mul_table[digits[:, r][:, None], basis[r][None, :]]
                acc = add_table[acc, scaled]
        nonz = acc.reshape(len(idx), n, L) != 0
        has = nonz.any(axis=2)
        pos = nonz.argmax(axis=2)
        row_exp = np.where(has, -(pos + 1), np.iinfo(np.int32).min)
        codes = np.where(has.any(axis=1), row_exp.max(axis=1), INDET)
        if exact_degree:
            top_ok = (digits[:, top_rows] != 0).any(axis=1)
            codes = np.where(top_ok, codes, SKIP)
        out[start : start + len(idx)] = codes
    return out
