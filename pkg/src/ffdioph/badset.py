"""Bad-set certification and the finite-depth Cantor machinery.

* ``bad_certify``: the exact minimum of ``||x||^(m/n) |<A x - theta>|`` over
  a height window, as a certificate "theta in Bad^eps(A) up to height
  q^h1" - never an asymptotic claim.
* ``phi_extract``: sparse subsequence extraction with the two-sided gap
  control Y_phi(i) >= q^l Y_phi(i-1) and Y_{phi(i-1)+1} >= q^-2l Y_phi(i),
  both asserted on output.
* ``survivor_tree``: the nested grids-minus-resonant-neighborhoods
  construction.  By the ultrametric, a grid ball of radius q^-(d_i + a)
  avoids the delta-neighborhood (delta = q^-a) of every resonant hyperplane
  of h_i exactly when its center c satisfies |<h_i . c>| >= delta, which is
  decided by exact finite-Laurent arithmetic on the center.
* ``dimension_lower_bound`` / ``ostro_cover``: the finite-depth evaluations
  of the lower- and upper-bound formulas, with exact rational logs (base-q
  logs of 2 enter through certified rational bounds).
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import kernel
from .contfrac import CFExpansion
from .errors import BudgetExceeded, PrecisionExceeded, PrefixTooShort
from .kernel import INDET, SKIP
from .laurent import Laurent
from .poly import Poly, all_polys
from .vectors import LaurentMatrix, LaurentVec, PolyVec

# -- Bad^eps certification --------------------------------------------------------


@dataclass
class BadCertificate:
    """Exact window minimum of the inhomogeneous product statistic.

    ``min_stat`` is the exact exponent (a Fraction, since ||x||^(m/n) scales
    by m/n) of the minimum over the window, or None when the statistic hits
    exactly zero (theta in the orbit closure at finite height).  ``passed``
    states min >= eps with eps = q^(-eps_num/eps_den).
    """

    eps_num: int
    eps_den: int
    h0: int
    h1: int
    min_stat: Fraction | None
    argmin: PolyVec | None
    passed: bool


def bad_certify(
    A: LaurentMatrix,
    theta: LaurentVec | None,
    eps: tuple[int, int],
    h0: int,
    h1: int,
    *,
    backend: str | None = None,
) -> BadCertificate:
    """Scan q^h0 <= ||x|| <= q^h1 for the minimum of ||x||^(m/n) |<A x - theta>|.

    All comparisons are exact on rational exponents.  A value that vanishes
    through the working precision either definitively fails the threshold
    (its upper bound already sits below eps) or raises PrecisionExceeded.
    """
    a, b = eps
    if b <= 0:
        raise ValueError("epsilon denominator must be positive")
    n, m = A.n, A.m
    target = Fraction(-a, b)
    best: Fraction | None = None
    best_vec: PolyVec | None = None
    zero_hit = False
    inexact = A.min_prec() is not None or (
        theta is not None and any(x.prec is not None for x in theta)
    )
    # depth at which a vanished value already proves its statistic < eps
    cap = int(Fraction(h1 * m, n) + Fraction(a, b)) + 1 if inexact else None
    for d in range(h0, h1 + 1):
        Ld = cap
        if Ld is not None:
            usable = kernel.usable_depth(A, theta, d)
            Ld = max(min(Ld, usable), 1)
        res = kernel.scan(
            A, theta, d, min_L=1, L=Ld, exact_degree=True, backend=backend
        )
        for idx in range(len(res.codes)):
            code = int(res.codes[idx])
            if code == SKIP:
                continue
            height = Fraction(d * m, n)
            if code == INDET:
                if res.all_exact:
                    zero_hit = True
                    best = None
                    best_vec = res.poly_vec_at(idx)
                    break
                bound = height - (res.L + 1)
                if bound < target:
                    # true statistic <= bound < eps: definitive failure
                    return BadCertificate(
                        a, b, h0, h1, bound, res.poly_vec_at(idx), False
                    )
                raise PrecisionExceeded(
                    f"statistic at height q^{d} vanishes through working "
                    f"precision {res.L} but the bound stays above epsilon"
                )
            stat = height + code
            if best is None or stat < best:
                best = stat
                best_vec = res.poly_vec_at(idx)
        if zero_hit:
            break
    if zero_hit:
        return BadCertificate(a, b, h0, h1, None, best_vec, False)
    passed = best is not None and best >= target
    return BadCertificate(a, b, h0, h1, best, best_vec, passed)


# -- subsequence extraction ---------------------------------------------------------


def phi_extract(Y_exps: list[int], l: int) -> list[int]:
    """Sparse subsequence indices (1-based) with the two-sided gap control.

    Greedy: from the current index c, take the smallest j > c with
    y_j >= y_c + l whose back-gap satisfies y_{c+1} >= y_j - 2l.  Raises
    PrefixTooShort when the prefix ends before the next index is certified,
    or when a jump makes the back-gap unsatisfiable for every later j.
    """
    y = list(Y_exps)
    if not y:
        raise PrefixTooShort("empty sequence")
    if any(b <= a for a, b in zip(y, y[1:])):
        raise ValueError("Y exponents must be strictly increasing")
    out = [1]
    c = 0  # 0-based position of the last extracted index
    while True:
        nxt = None
        stuck = False
        for j in range(c + 1, len(y)):
            if y[j] >= y[c] + l:
                if y[c + 1] >= y[j] - 2 * l:
                    nxt = j
                else:
                    stuck = True  # later j only grow, back-gap stays violated
                break
        if nxt is None:
            if stuck:
                raise PrefixTooShort(
                    f"jump after index {c + 1} exceeds the q^2l back-gap; "
                    "no admissible continuation exists"
                )
            break  # prefix exhausted without reaching the next l-gap
        out.append(nxt + 1)
        c = nxt
    for a, b in zip(out, out[1:]):  # certify both gap inequalities
        assert y[b - 1] >= y[a - 1] + l
        assert y[a] >= y[b - 1] - 2 * l
    return out


# -- survivor trees -------------------------------------------------------------------


@dataclass
class SurvivorLevel:
    index: int
    d_exp: int  # d_i: exponent of ||h_i||
    grid_exp: int  # centers carry coefficients z^-1 .. z^-grid_exp
    centers: list[tuple[tuple[int, ...], ...]]
    removed: int
    per_parent_min: int | None
    count_bound: Fraction | None  # (1 - q^-a) q^((d_i - d_{i-1}) n)


@dataclass
class SurvivorTree:
    h: list[PolyVec]
    n: int
    threshold_exp: int  # a: survivors satisfy |<h_i theta>| >= q^-a
    levels: list[SurvivorLevel]

    def centers_as_laurent(self, level: int) -> list[LaurentVec]:
        lv = self.levels[level]
        F = self.h[0].field
        out = []
        for c in lv.centers:
            vec = []
            for coord in c:
                vec.append(
                    Laurent.from_terms(
                        F, {-(i + 1): v for i, v in enumerate(coord)}, None
                    )
                )
            out.append(LaurentVec(vec))
        return out


def _bracket_ok(h_row: PolyVec, center, a: int, F) -> bool:
    """|<h . c>| >= q^-a for an exact grid center c, by direct convolution."""
    g = len(center[0])
    acc = [0] * (g + 1)  # coefficients of z^-1 .. z^-(g+1) of h . c (init 0)
    at, mt = F.add_table, F.mul_table
    for poly, coord in zip(h_row, center):
        for t, hc in enumerate(poly.coeffs):
            if not hc:
                continue
            # z^t * z^-(i+1) = z^(t-i-1): fractional when i + 1 > t
            for i, cv in enumerate(coord):
                if cv and i + 1 > t:
                    pos = i - t  # z^-(pos+1)
                    if pos <= g:
                        acc[pos] = int(at[acc[pos], mt[hc, cv]])
    return any(acc[:a])


def survivor_tree(
    h: list[PolyVec],
    n: int,
    l: int,
    depth: int,
    threshold_exp: int = 1,
    *,
    max_grid: int = 1 << 18,
) -> SurvivorTree:
    """Nested surviving balls for the rows h_1 .. h_depth.

    Level i uses the grid of prefix length d_i + a (a = threshold_exp) and
    keeps the balls whose center satisfies |<h_i . c>| >= q^-a; by the
    ultrametric every point of a surviving ball satisfies the same bound.
    ``depth = 0`` materializes the unfiltered level-1 grid.  Count bounds
    m_{i+1} >= (1 - q^-a) q^((d_{i+1} - d_i) n) are recorded per level and
    asserted by the caller's tests.
    """
    if not h:
        raise ValueError("need at least one row")
    F = h[0].field
    q = F.q
    a = threshold_exp
    d = [hr.norm().exp for hr in h]
    if any(e is None for e in d):
        raise ValueError("zero rows are not allowed")
    for prev, cur in zip(d, d[1:]):
        if cur < prev + l:
            raise ValueError(
                f"row norms must grow by q^{l}: got exponents {prev} -> {cur}"
            )
    levels: list[SurvivorLevel] = []
    g1 = d[0] + a
    if q ** (g1 * n) > max_grid:
        raise BudgetExceeded(f"level-1 grid q^{g1 * n} exceeds the budget")
    base = [tuple(digs) for digs in _tuples(q, g1)]
    grid0 = [tuple(combo) for combo in _product(base, n)]
    if depth == 0:
        levels.append(SurvivorLevel(0, d[0], g1, grid0, 0, None, None))
        return SurvivorTree(h, n, a, levels)
    parents = [None]
    prev_centers: list = [None]
    prev_g = 0
    for i in range(1, depth + 1):
        gi = d[i - 1] + a
        ext = gi - prev_g
        if q ** (ext * n) * max(len(prev_centers), 1) > max_grid:
            raise BudgetExceeded("grid refinement exceeds the budget")
        ext_tuples = [tuple(t) for t in _tuples(q, ext)]
        survivors = []
        removed = 0
        per_parent: list[int] = []
        for parent in prev_centers:
            kept = 0
            for combo in _product(ext_tuples, n):
                if parent is None:
                    center = combo
                else:
                    center = tuple(pc + cc for pc, cc in zip(parent, combo))
                if _bracket_ok(h[i - 1], center, a, F):
                    survivors.append(center)
                    kept += 1
                else:
                    removed += 1
            per_parent.append(kept)
        bound = (1 - Fraction(1, q**a)) * q ** ((d[i - 1] - (d[i - 2] if i >= 2 else -a)) * n) \
            if i >= 2 else None
        levels.append(
            SurvivorLevel(
                i,
                d[i - 1],
                gi,
                survivors,
                removed,
                min(per_parent) if per_parent else None,
                bound,
            )
        )
        prev_centers = survivors
        prev_g = gi
    return SurvivorTree(h, n, a, levels)


def _tuples(q: int, length: int):
    if length == 0:
        yield ()
        return
    for head in range(q):
        for rest in _tuples(q, length - 1):
            yield (head,) + rest


def _product(pool, repeat):
    from itertools import product as _p

    return _p(pool, repeat=repeat)


# -- dimension bound formulas ----------------------------------------------------------


@dataclass
class DimReport:
    value: Fraction  # finite-k evaluation (certified lower estimate)
    limit: Fraction  # the asymptotic target n - 1/l, for eyeball comparison
    k: int


def dimension_lower_bound(d: list[int], l: int, n: int, q: int = 2) -> DimReport:
    """Finite-k value of n log(m_1..m_{k-1}) / (-log(m_k eps_k^n)).

    Uses the conservative per-level count m_i = (1/2) q^((d_i - d_{i-1}) n)
    and ball separation eps_k = q^-(d_k + 1); base-q logs of 2 enter via a
    certified rational upper bound so the value is a true lower estimate.
    """
    if any(b <= a for a, b in zip(d, d[1:])):
        raise ValueError("d must be strictly increasing")
    k = len(d)
    if k < 2:
        return DimReport(Fraction(0), n - Fraction(1, l), k)
    log_q2 = _logq2_upper(q)
    num = sum(Fraction((d[i] - (d[i - 1] if i else 0)) * n) - log_q2 for i in range(1, k - 1))
    num += Fraction(d[0] * n) - log_q2  # i = 1 term uses d_1 - d_0 with d_0 = 0
    den = -(Fraction((d[k - 1] - d[k - 2]) * n) - log_q2) + n * (d[k - 1] + 1)
    return DimReport(n * num / den, n - Fraction(1, l), k)


def _logq2_upper(q: int, max_den: int = 40) -> Fraction:
    """Certified rational upper bound on log_q(2): p/r with 2^r <= q^p."""
    if q == 2:
        return Fraction(1)
    best = Fraction(1)
    for r in range(1, max_den + 1):
        p = 1
        while 2**r > q**p:
            p += 1
        if Fraction(p, r) < best:
            best = Fraction(p, r)
    return best


# -- the covering construction ---------------------------------------------------------


@dataclass
class CoverLevel:
    i: int
    k_lo: int
    k_hi: int
    removal_window: tuple[int, int]  # deg Q range [n_{k_i}, n_{k_{i+1}} - t]
    survivors: int
    max_per_parent: int
    per_parent_bound: int  # (1 - q^-t) q^(n_{k_{i+1}} - n_{k_i}), exact integer
    separation_ok: bool


@dataclass
class CoverReport:
    t: int
    k_seq: list[int]
    levels: list[CoverLevel]
    lambda_running_min: Fraction | None  # min over i of n_{k_i} / i (units log q)
    s_bound: float | None  # 1 + log(1 - q^-t)/log M for the supplied M


def ostro_cover(
    cf: CFExpansion,
    K: int,
    t: int,
    depth: int,
    M: Fraction | None = None,
    *,
    max_cylinders: int = 1 << 17,
) -> CoverReport:
    """The covering construction: sparse index ladder, removal balls around
    the orbit points {Q alpha}, and surviving-cylinder counts per level.

    Cylinders of order k are identified with coefficient prefixes of length
    n_k = deg Q_k (a bijection), so membership in a removal ball of radius
    q^-n_{k_{i+1}} is an exact prefix lookup.
    """
    import math

    q = cf.field.q
    ks = [K]
    for _ in range(depth):
        k = ks[-1] + 1
        cf.extend_to(k)
        while cf.deg_Q(k) - cf.deg_Q(ks[-1]) <= t + 4:
            k += 1
            cf.extend_to(k)
        ks.append(k)
    n_top = cf.deg_Q(ks[-1])
    if q**n_top > max_cylinders:
        raise BudgetExceeded(f"{q**n_top} cylinders exceed the budget")
    alpha = cf.alpha(2 * n_top + 2)
    # basis[s][v]: coefficient of z^-(v+1) in {z^s alpha}; orbit prefixes of
    # all window polynomials come from one (count x degs) @ (degs x n_top)
    basis = np.array(
        [[alpha.coeff_at(-(v + 1 + s)) for v in range(n_top)] for s in range(n_top)],
        dtype=np.int64,
    )
    # level-0 state: every cylinder of order k_0 (unfiltered)
    survivors: set[tuple[int, ...]] = {
        tuple(t0) for t0 in _tuples(q, cf.deg_Q(ks[0]))
    }
    levels: list[CoverLevel] = []
    for i in range(depth):
        k_lo, k_hi = ks[i], ks[i + 1]
        lo, hi = cf.deg_Q(k_lo), cf.deg_Q(k_hi)
        win_hi = hi - t
        plen = hi
        removal: set[tuple[int, ...]] = set()
        n_orbit = 0
        for deg in range(lo, win_hi + 1):
            digits = _all_digit_rows(q, deg)
            n_orbit += len(digits)
            pref = (digits @ basis[: deg + 1, :plen]) % cf.field.p if cf.field.e == 1 else None
            if pref is None:
                for row in digits:
                    acc = [0] * plen
                    at, mt = cf.field.add_table, cf.field.mul_table
                    for s, c in enumerate(row):
                        if c:
                            for v in range(plen):
                                acc[v] = int(at[acc[v], mt[c, basis[s, v]]])
                    removal.add(tuple(acc))
            else:
                for row in pref:
                    removal.add(tuple(int(x) for x in row))
        separation_ok = len(removal) == n_orbit
        ext = plen - cf.deg_Q(k_lo)
        new_survivors: set[tuple[int, ...]] = set()
        per_parent: dict[tuple[int, ...], int] = {}
        for parent in survivors:
            per_parent[parent] = 0
        for combo in _tuples(q, ext):
            for parent in survivors:
                cand = parent + tuple(combo)
                if cand not in removal:
                    new_survivors.add(cand)
                    per_parent[parent] += 1
        bound = q ** (hi - lo) - q ** (hi - lo - t)
        levels.append(
            CoverLevel(
                i + 1,
                k_lo,
                k_hi,
                (lo, win_hi),
                len(new_survivors),
                max(per_parent.values()) if per_parent else 0,
                bound,
                separation_ok,
            )
        )
        survivors = new_survivors
    lam = None
    for i in range(1, len(ks)):
        r = Fraction(cf.deg_Q(ks[i]), i)
        lam = r if lam is None else min(lam, r)
    s_bound = None
    if M is not None:
        s_bound = 1 + math.log(1 - q ** (-t)) / math.log(float(M))
    return CoverReport(t, ks, levels, lam, s_bound)


def _all_digit_rows(q: int, deg: int) -> np.ndarray:
    """Digit rows (c_0..c_deg) of all monic-led polynomials of exact degree deg."""
    count = (q - 1) * q**deg
    rows = np.zeros((count, deg + 1), dtype=np.int64)
    r = 0
    for lead in range(1, q):
        for code in range(q**deg):
            x = code
            for pos in range(deg):
                rows[r, pos] = x % q
                x //= q
            rows[r, deg] = lead
            r += 1
    return rows
