"""Dirichlet solving, best-approximation sequences, exponent witnesses.

For an n x m matrix A the linear forms M_j(y) = sum_i alpha_ij y_i are read
off the columns, and ``M(y) = |<A^T y>|``.  Everything here is exhaustive
enumeration at desk scale through the scan kernel, with selection rules
pinned to the canonical candidate order (max-degree shells, then
lexicographic on concatenated coefficient digit strings), so all outputs are
deterministic and reproducible.

Exponent "estimates" are finite-height witnesses, never limits: the tables
report e(H)/log_q H per height and the extreme values over the computed
range.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from . import kernel
from .errors import PrecisionExceeded, VerificationDefect
from .kernel import INDET, SKIP
from .norms import NormExp
from .vectors import LaurentMatrix, LaurentVec, PolyVec


def eval_M(A: LaurentMatrix, y: PolyVec) -> NormExp:
    """M(y) = |<A^T y>| = max over columns j of |<sum_i alpha_ij y_i>|."""
    return A.transpose().apply(y).bracket_dist()


def _shell_min(res: kernel.ScanResult, exclude_zero: bool):
    """(min_code, first_index) over a scan, honoring INDET semantics.

    INDET candidates are exactly zero when the scan was exact (they then
    dominate every finite value from below); otherwise they make the minimum
    undecidable and the scan refuses.
    """
    codes = res.codes
    start = 1 if exclude_zero else 0
    view = codes[start:]
    if len(view) == 0:
        return None, None
    has_indet = bool((view == INDET).any())
    if has_indet:
        if not res.all_exact:
            raise PrecisionExceeded(
                "minimum is attained by a value vanishing through the "
                f"working precision {res.L}"
            )
        first = start + int((view == INDET).argmax())
        return None, first  # exact zero
    masked = np.where(view == SKIP, np.int32(2**30), view)
    pos = int(masked.argmin())
    if masked[pos] == 2**30:
        return None, None  # shell empty (all skipped)
    return int(masked[pos]), start + pos


def dirichlet_solve(A: LaurentMatrix, c: int, *, backend: str | None = None) -> PolyVec:
    """Smallest (degree-lex) nonzero u with |<A u>| < q^(-c m/n), ||u|| <= q^c.

    Existence is a theorem (pigeonhole over the unit ball); failure raises
    VerificationDefect, the suite's strongest regression signal.
    """
    n, m = A.n, A.m
    min_L = -((-c * m) // n)  # ceil(c m / n)
    # the scan may run at exactly this depth: INDET then means the value is
    # below q^-(L+1) < q^(-c m/n), which passes the threshold outright
    cap = None if A.min_prec() is None else min_L
    for d in range(0, c + 1):
        res = kernel.scan(
            A, None, d, min_L=min_L, L=cap, exact_degree=True, backend=backend
        )
        codes = res.codes
        for idx in range(1 if d == 0 else 0, len(codes)):
            code = int(codes[idx])
            if code == SKIP:
                continue
            if code == INDET:
                # value <= q^-(L+1) < q^(-c m/n) since (L+1) n > c m
                return res.poly_vec_at(idx)
            if code * n < -c * m:  # q^code < q^(-c m/n), exactly
                return res.poly_vec_at(idx)
    raise VerificationDefect(
        f"Dirichlet solution missing for c = {c} on a {n}x{m} matrix"
    )


@dataclass
class BestApproxSeq:
    """Records (y_i, Y_i, M_i) of a best-approximation sequence for A^T.

    ``M_exps[i] is None`` encodes an exactly-zero form value (degenerate
    matrices); the sequence stops there.
    """

    A: LaurentMatrix
    vectors: list[PolyVec]
    Y_exps: list[int]
    M_exps: list[int | None]
    degenerate: bool = False

    def __len__(self):
        return len(self.vectors)


def best_approx_seq(
    A: LaurentMatrix, Y_max_exp: int, *, backend: str | None = None
) -> BestApproxSeq:
    """Inductive best-approximation construction, scanning norm shells.

    Y_{i+1} is the smallest q-power shell admitting M(z) < M_i; y_{i+1}
    minimizes M there, ties broken by the canonical candidate order.
    """
    AT = A.transpose()
    vectors: list[PolyVec] = []
    Y_exps: list[int] = []
    M_exps: list[int | None] = []
    degenerate = False
    current: int | None = None
    for d in range(0, Y_max_exp + 1):
        res = kernel.scan(AT, None, d, min_L=1, exact_degree=True, backend=backend)
        code, idx = _shell_min(res, exclude_zero=(d == 0))
        if idx is None:
            continue
        if code is None:  # exact zero attained: M cannot decrease further
            vectors.append(res.poly_vec_at(idx))
            Y_exps.append(d)
            M_exps.append(None)
            degenerate = True
            break
        if current is None or code < current:
            vectors.append(res.poly_vec_at(idx))
            Y_exps.append(d)
            M_exps.append(code)
            current = code
    return BestApproxSeq(A, vectors, Y_exps, M_exps, degenerate)


@dataclass
class BestApproxReport:
    """Checks of the classical best-approximation inequalities."""

    monotone_Y_step: bool  # Y_{i+1} >= q Y_i
    literal_Y_geq_qi: bool  # the stated Y_i >= q^i (flagged, not enforced)
    main_inequality: bool  # M_i < q^(n/m) Y_{i+1}^(-n/m)
    sharpened_m1: bool | None  # m = 1 only: M_i <= q^(n-1) Y_{i+1}^(-n)
    ratio_Yi: list[Fraction | None] = dc_field(default_factory=list)
    ratio_Yi1: list[Fraction | None] = dc_field(default_factory=list)


def check_best_approx_props(seq: BestApproxSeq) -> BestApproxReport:
    """Exponent-exact checks of Definition 3.1's consequences on a finite
    prefix, plus the empirical exponent tables feeding (iii)/(iv)."""
    if not seq.vectors:
        raise ValueError("empty sequence")
    n, m = seq.A.n, seq.A.m
    ys = seq.Y_exps
    monotone = all(b >= a + 1 for a, b in zip(ys, ys[1:])) and ys[0] == 0
    literal = all(y >= i + 1 for i, y in enumerate(ys))
    main = True
    sharp: bool | None = True if m == 1 else None
    for i in range(len(ys) - 1):
        Mi = seq.M_exps[i]
        if Mi is None:
            continue
        if not Mi * m < n * (1 - ys[i + 1]):
            main = False
        if m == 1 and not Mi <= (n - 1) - n * ys[i + 1]:
            sharp = False
    r1: list[Fraction | None] = []
    r2: list[Fraction | None] = []
    for i in range(len(ys)):
        Mi = seq.M_exps[i]
        if Mi is None:
            r1.append(None)
            r2.append(None)
            continue
        r1.append(Fraction(-Mi, ys[i]) if ys[i] else None)
        r2.append(
            Fraction(-Mi, ys[i + 1]) if i + 1 < len(ys) and ys[i + 1] else None
        )
    return BestApproxReport(monotone, literal, main, sharp, r1, r2)


INFINITE = "infinite"


@dataclass
class ExponentWitness:
    """Finite-height witnesses for the exponents, with the raw table.

    rows: (h, e_h) meaning min over ||x|| <= q^h of |<A x - theta>| is
    exactly q^-e_h; ``INFINITE`` marks an exactly-zero minimum (degenerate),
    in which case the estimates are the +infinity sentinel.
    """

    rows: list[tuple[int, int]]
    omega_witness: Fraction | str
    omega_hat_witness: Fraction | str

    def ratios(self) -> list[Fraction]:
        return [Fraction(e, h) for h, e in self.rows]


def exponent_estimates(
    A: LaurentMatrix,
    theta: LaurentVec | None,
    h_max: int,
    *,
    backend: str | None = None,
) -> ExponentWitness:
    """Tables e(q^h) for h = 1..h_max; homogeneous when theta is None.

    These are witnesses at finite height, not limits: omega_witness is the
    best (largest) ratio e(h)/h seen, omega_hat_witness the worst (smallest),
    which over growing h bound omega from below and omega-hat from above.
    """
    rows: list[tuple[int, int]] = []
    infinite = False
    for h in range(1, h_max + 1):
        res = kernel.scan(A, theta, h, min_L=1, backend=backend)
        code, idx = _shell_min(res, exclude_zero=(theta is None))
        if idx is None:
            continue
        if code is None:
            infinite = True
            break
        rows.append((h, -code))
    if infinite:
        return ExponentWitness(rows, INFINITE, INFINITE)
    if not rows:
        raise ValueError("no heights computed")
    ratios = [Fraction(e, h) for h, e in rows]
    return ExponentWitness(rows, max(ratios), min(ratios))


@dataclass
class BridgeReport:
    lhs: NormExp
    rhs_inhom: NormExp
    rhs_hom: NormExp
    holds: bool


def bridge_inequality_check(
    A: LaurentMatrix,
    x: PolyVec,
    y: PolyVec,
    theta: LaurentVec | None,
) -> BridgeReport:
    """|<y . theta>| <= max(||y|| |<A x - theta>|, ||x|| M(y)), exactly."""
    F = A.field
    from .laurent import Laurent

    acc = Laurent.exact_zero(F)
    if theta is not None:
        for yi, ti in zip(y, theta):
            acc = acc + ti.mul_poly(yi)
    lhs = LaurentVec([acc]).bracket_dist()
    Ax = A.apply(x)
    resid = Ax - theta if theta is not None else Ax
    rhs1 = y.norm() * resid.bracket_dist()
    rhs2 = x.norm() * eval_M(A, y)
    return BridgeReport(lhs, rhs1, rhs2, lhs <= max(rhs1, rhs2))
