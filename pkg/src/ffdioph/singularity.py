"""Singular-on-average statistics for one alpha.

Delta_{N,c} counts the dyadic scales l <= N at which ``||{Q alpha}|| <=
c 2^-l`` is solvable with ``0 < ||Q|| <= 2^l``.  By the decomposition of
polynomials in the convergent basis, the minimum of ||{Q alpha}|| over that
range is attained at the convergent denominator Q_k with ||Q_k|| <= 2^l <
||Q_{k+1}||, and ||{Q_k alpha}|| = 1/||Q_{k+1}|| exactly, so the per-scale
verdict is pure integer arithmetic on (dyadic exponent, q-degree) pairs; an
exhaustive oracle mode is kept for cross-checking that reduction.

Mixed-base comparisons 2^a <=> q^b are done on Python integers, never via
floats; the reported bounds use certified rational bounds on log_2 q.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import kernel
from .contfrac import CFExpansion
from .errors import CFTooShort, PrecisionExceeded, SpecExhausted
from .kernel import INDET
from .vectors import LaurentMatrix


def _interval_index(cf: CFExpansion, X: int) -> int:
    """k with ||Q_k|| <= X < ||Q_{k+1}||."""
    q = cf.field.q
    k = 0
    while True:
        try:
            cf.extend_to(k + 1)
        except (SpecExhausted, PrecisionExceeded) as err:
            raise CFTooShort(
                f"expansion cannot certify ||Q|| beyond X = {X}: {err}"
            ) from err
        if q ** cf.deg_Q(k + 1) > X:
            return k
        k += 1


def has_solution_at(
    cf: CFExpansion,
    X: int,
    c: Fraction,
    oracle: bool = False,
    *,
    backend: str | None = None,
) -> bool:
    """Whether ||{Q alpha}|| <= c/X has a solution with 0 < ||Q|| <= X.

    Criterion mode: the minimum over the range is ||{Q_k alpha}|| =
    q^-(deg Q_{k+1}) at the interval index k.  Oracle mode enumerates every
    candidate Q instead.
    """
    c = Fraction(c)
    k = _interval_index(cf, X)
    if oracle:
        return _has_solution_oracle(cf, X, c, backend=backend)
    # q^-(deg Q_{k+1}) <= c / X, cross-multiplied over the integers
    return c.denominator * X <= c.numerator * cf.field.q ** cf.deg_Q(k + 1)


def _has_solution_oracle(cf, X, c, *, backend=None) -> bool:
    q = cf.field.q
    dmax = 0
    while q ** (dmax + 1) <= X:
        dmax += 1
    # enough precision that every candidate's value is resolvable: values
    # cannot sit below q^-(deg Q_{k+2}) for candidates in this range
    k = _interval_index(cf, X)
    L = cf.deg_Q(k + 2) + 2
    A = LaurentMatrix([[cf.alpha(L + dmax)]])
    res = kernel.scan(A, None, dmax, min_L=L, backend=backend)
    best = None
    for idx in range(1, len(res.codes)):
        code = int(res.codes[idx])
        if code == INDET:
            raise AssertionError("irrational alpha cannot vanish")  # guard
        if best is None or code < best:
            best = code
    # q^best <= c / X
    return c.denominator * X <= c.numerator * cf.field.q ** (-best)


@dataclass
class SingularityReport:
    N: int
    c: Fraction
    delta: int
    per_l: list[bool] = dc_field(default_factory=list)

    @property
    def ratio(self) -> Fraction:
        return Fraction(self.delta, self.N) if self.N else Fraction(0)


def delta_Nc(cf: CFExpansion, N: int, c: Fraction) -> SingularityReport:
    """Delta_{N,c}: per-scale verdicts for l = 1..N via the criterion."""
    c = Fraction(c)
    per_l = [has_solution_at(cf, 2**l, c) for l in range(1, N + 1)]
    return SingularityReport(N, c, sum(per_l), per_l)


@dataclass
class GrowthTable:
    rows: list[tuple[int, int, Fraction]]
    diverging: bool


def growth_rate(cf: CFExpansion, K: int) -> GrowthTable:
    """(k, deg Q_k, deg Q_k / k) for k <= K; flags divergence when the ratio
    strictly increases over the last half of the range."""
    cf.extend_to(K)
    rows = [(k, cf.deg_Q(k), Fraction(cf.deg_Q(k), k)) for k in range(1, K + 1)]
    half = rows[len(rows) // 2 :]
    diverging = all(b[2] > a[2] for a, b in zip(half, half[1:])) and len(half) > 1
    return GrowthTable(rows, diverging)


def log2_lower(q: int, max_den: int = 40) -> Fraction:
    """Certified rational lower bound on log2(q) by integer power checks."""
    best = Fraction(0)
    for r in range(1, max_den + 1):
        p = (q**r).bit_length() - 1  # 2^p <= q^r
        if Fraction(p, r) > best:
            best = Fraction(p, r)
    return best


def _log2_inv_upper(c: Fraction) -> int:
    """Smallest integer a with 2^a >= 1/c (so a >= log2(1/c))."""
    a = 0
    while 2**a * c.numerator < c.denominator:
        a += 1
    return a


@dataclass
class ScanRow:
    N: int
    c: Fraction
    delta: int
    ratio: Fraction
    interval_k: int
    certified_bound: Fraction  # the global (log2(1/c)+1)(k+1)/log2||Q_k||
    interval_rate: Fraction  # exact failure rate inside the current interval


@dataclass
class ScanReport:
    rows: list[ScanRow]
    verdict: str
    threshold: Fraction


def singular_on_average_scan(
    cf: CFExpansion,
    N_list: list[int],
    c_list: list[Fraction],
    threshold: Fraction = Fraction(1, 4),
) -> ScanReport:
    """Delta/N matrix plus the certified deficiency bounds.

    certified_bound is the global chain (log2(1/c)+1)(k+1)/log2||Q_k||
    (an upper bound on (N - Delta)/N, evaluated with certified rational
    bounds); interval_rate is the exact per-interval failure rate at scale N,
    also a certified quantity.  The verdict is "consistent with singular on
    average" iff for every c the Delta/N trend over the three largest N is
    nondecreasing and the bound at the largest N is below the threshold; the
    tool never claims the limit itself.
    """
    rows: list[ScanRow] = []
    q = cf.field.q
    l2q = log2_lower(q)
    for c in c_list:
        c = Fraction(c)
        a_up = _log2_inv_upper(c)
        for N in N_list:
            rep = delta_Nc(cf, N, c)
            k = _interval_index(cf, 2**N)
            bound = Fraction(a_up + 1) * (k + 1) / (Fraction(cf.deg_Q(k)) * l2q) \
                if cf.deg_Q(k) else Fraction(10**6)
            lo = 1
            # exact failure rate over the current CF interval's scales <= N
            while 2**lo < q ** cf.deg_Q(k):
                lo += 1
            fails = sum(
                1 for l in range(lo, N + 1) if not has_solution_at(cf, 2**l, c)
            )
            width = max(N - lo + 1, 1)
            rows.append(
                ScanRow(N, c, rep.delta, rep.ratio, k, bound, Fraction(fails, width))
            )
    verdict = "consistent with singular on average"
    for c in c_list:
        sub = [r for r in rows if r.c == Fraction(c)]
        tail = sub[-3:]
        if not all(b.ratio >= a.ratio for a, b in zip(tail, tail[1:])):
            verdict = "not singular on average"
        if sub and sub[-1].certified_bound > threshold:
            verdict = "not singular on average"
    if not rows:
        verdict = "empty scan"
    return ScanReport(rows, verdict, threshold)
