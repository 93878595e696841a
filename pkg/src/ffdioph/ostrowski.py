"""Ostrowski numeration with respect to an irrational alpha.

Every polynomial Q with deg Q < deg Q_{k+1} decomposes uniquely as
``Q = B_1 Q_0 + ... + B_{k+1} Q_k`` with deg B_i < deg A_i, and every beta in
the unit ball expands as ``beta = sum sigma_{k+1} D_k`` over the difference
basis ``D_k = Q_k alpha - P_k`` under the same digit constraint.  The set of
series sharing a digit prefix of length n is a closed disc of diameter
``q^-(deg Q_n + 1)`` around the partial sum; cylinders are represented by
radius exponents so deep inventories stay O(1) in memory.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .contfrac import CFExpansion
from .errors import BudgetExceeded, DepthTooSmall, InvalidPrefix, PrecisionExceeded
from .laurent import Laurent
from .poly import Poly, all_polys

MAX_PREFIXES = 1 << 20


@dataclass
class OstrowskiDigits:
    """Digits sigma_1, sigma_2, ... of one beta with respect to cf's alpha."""

    base: CFExpansion
    digits: list[Poly]

    def reconstruct(self, prec: int | None = None) -> Laurent:
        """Partial sum sum sigma_{k+1} D_k of the expansion."""
        cf = self.base
        n = len(self.digits)
        if prec is None:
            prec = cf.deg_Q(n) + 1 if n else 1
        acc = None
        for k, s in enumerate(self.digits):
            if s.is_zero():
                continue
            tail = max(1, prec - cf.deg_Q(k))
            term = cf.d(k, tail=tail).mul_poly(s)
            acc = term if acc is None else acc + term
        if acc is None:
            return Laurent.zero_to_prec(cf.field, prec)
        return acc.truncate(prec)


def decompose_poly(Q: Poly, cf: CFExpansion, k: int) -> list[Poly]:
    """Digits (B_1, ..., B_{k+1}) of Q in the Q_j basis, greedy from the top.

    Requires deg Q < deg Q_{k+1}; ties cannot occur because the Q_j norms are
    distinct powers of q.
    """
    cf.extend_to(k + 1)
    if not Q.is_zero() and Q.deg >= cf.deg_Q(k + 1):
        raise DepthTooSmall(
            f"deg Q = {Q.deg} >= deg Q_{k + 1} = {cf.deg_Q(k + 1)}"
        )
    digits: list[Poly] = [Poly.zero(cf.field)] * (k + 1)
    rem = Q
    for j in range(k, -1, -1):
        B, rem = divmod(rem, cf.Q(j))
        if not B.is_zero() and B.deg >= cf.A(j + 1).deg:
            raise AssertionError("digit degree bound violated")  # unreachable
        digits[j] = B
    return digits


def expand_beta(beta: Laurent, cf: CFExpansion, depth: int) -> OstrowskiDigits:
    """First ``depth`` Ostrowski digits of beta (||beta|| < 1).

    Needs beta known through z^-(deg Q_{depth+1}); never guesses unknown
    digits.  After extraction the remainder has norm <= q^-(deg Q_depth+1).
    """
    if beta.coeffs and beta.off >= 0:
        raise ValueError("expand_beta needs ||beta|| < 1")
    cf.extend_to(depth + 1)
    need = cf.deg_Q(depth + 1)
    if beta.prec is not None and beta.prec < need:
        raise PrecisionExceeded(
            f"beta needs precision >= deg Q_{depth + 1} = {need}, has {beta.prec}"
        )
    digits: list[Poly] = []
    r = beta
    for k in range(depth):
        # D_k generous enough that all divisions stay certified given the
        # precondition prec(beta) >= deg Q_{depth+1}
        D = cf.d(k, tail=need)
        ratio = r * D.inv()
        sigma = ratio.int_part()
        if not sigma.is_zero() and sigma.deg >= cf.A(k + 1).deg:
            raise AssertionError("digit degree bound violated")  # unreachable
        digits.append(sigma)
        if not sigma.is_zero():
            r = r - D.mul_poly(sigma)
    return OstrowskiDigits(cf, digits)


@dataclass
class Cylinder:
    """A digit-prefix cylinder: closed disc around ``center`` of diameter
    q^radius_exp (radius_exp = -(deg Q_n + 1))."""

    prefix: tuple[Poly, ...]
    center: Laurent
    radius_exp: int

    def contains(self, beta: Laurent) -> bool:
        """Membership: beta agrees with the center through z^radius_exp + 1."""
        return (beta - self.center).norm() <= _ball_norm(self.radius_exp)


def _ball_norm(radius_exp: int):
    from .norms import NormExp

    return NormExp(radius_exp)


def validate_prefix(prefix, cf: CFExpansion):
    cf.extend_to(len(prefix))
    for i, s in enumerate(prefix, start=1):
        if not s.is_zero() and s.deg >= cf.A(i).deg:
            raise InvalidPrefix(
                f"digit sigma_{i} = {s!r} has degree >= deg A_{i} = {cf.A(i).deg}"
            )


def cylinder_of(prefix, cf: CFExpansion, prec: int | None = None) -> Cylinder:
    """Cylinder of the digit prefix: center sum sigma_{k+1} D_k, diameter
    q^-(deg Q_n + 1) (Kim-Nakada cylinder geometry)."""
    prefix = tuple(prefix)
    validate_prefix(prefix, cf)
    n = len(prefix)
    cf.extend_to(n + 1)
    radius_exp = -(cf.deg_Q(n) + 1) if n else -1
    if prec is None:
        prec = cf.deg_Q(n) + 1 if n else 1
    center = None
    for k, s in enumerate(prefix):
        if s.is_zero():
            continue
        tail = prec - cf.deg_Q(k + 1)
        term = cf.d(k, tail=max(tail, 1)).mul_poly(s)
        center = term if center is None else center + term
    if center is None:
        center = Laurent.zero_to_prec(cf.field, prec)
    else:
        center = center.truncate(prec)
    return Cylinder(prefix, center, radius_exp)


def enumerate_prefixes(cf: CFExpansion, n: int) -> list[tuple[Poly, ...]]:
    """All of L_n(alpha): exactly q^(deg Q_n) valid digit tuples of length n."""
    cf.extend_to(max(n, 1))
    total = cf.field.q ** cf.deg_Q(n) if n else 1
    if total > MAX_PREFIXES:
        raise BudgetExceeded(f"{total} prefixes exceed the enumeration budget")
    slots = []
    for i in range(1, n + 1):
        slots.append(all_polys(cf.field, cf.A(i).deg - 1))
    return [tuple(combo) for combo in product(*slots)]
