"""Continued fractions over F_q((z^-1)): the Artin map and its identities.

An element alpha of the open unit ball has the expansion
``alpha = [0; A_1, A_2, ...]`` generated by ``T(x) = 1/x - [1/x]``, with
polynomial partial quotients of degree >= 1 and convergents built by

    P_{k+1} = A_{k+1} P_k + P_{k-1},   Q_{k+1} = A_{k+1} Q_k + Q_{k-1},

seeded with ``P_(-1) = Q_0 = 1`` and ``Q_(-1) = P_0 = 0``.  The recurrence
output is the canonical representative (no monic rescaling), under which the
classical identity suite holds verbatim.

Sources of expansions:

* exact rationals (terminating Euclid),
* partial-quotient specs (exact, unbounded), and
* truncated series with certification guard: a digit ``A_{k+1}`` from an
  input of precision K is kept iff ``2 deg Q_{k+1} <= K``, the exact
  condition for the digit to be stable under every perturbation of the
  unknown tail (the cylinder of series sharing A_1 .. A_n is the punctured
  ball of radius q^-(2 deg Q_n + 1) around P_n/Q_n); expansion past the
  guard refuses loudly rather than emitting corrupted digits.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Callable, Sequence

from .errors import PrecisionExceeded, SpecExhausted
from .fields import Fq
from .laurent import Laurent, series_of_rational
from .norms import NormExp
from .poly import Poly, gcd


class PQSpec:
    """A source of partial quotients A_1, A_2, ... (all of degree >= 1).

    ``complete=True`` (lists) means the spec is a full, finite continued
    fraction whose value is exactly rational; incomplete specs are prefixes
    or unbounded generators.
    """

    def __init__(
        self,
        func: Callable[[int], Poly],
        count: int | None = None,
        complete: bool = False,
    ):
        self._func = func
        self.count = count
        self.complete = complete

    @classmethod
    def from_list(cls, polys: Sequence[Poly], complete: bool = True) -> "PQSpec":
        polys = list(polys)
        return cls(lambda k: polys[k - 1], count=len(polys), complete=complete)

    @classmethod
    def constant(cls, A: Poly) -> "PQSpec":
        """The spec with A_k = A for every k ('all:<poly>')."""
        return cls(lambda k: A)

    @classmethod
    def from_func(cls, func: Callable[[int], Poly], count: int | None = None) -> "PQSpec":
        return cls(func, count=count)

    def get(self, k: int) -> Poly:
        """A_k (1-indexed)."""
        if self.count is not None and k > self.count:
            raise SpecExhausted(f"partial-quotient spec has only {self.count} terms")
        A = self._func(k)
        if A.is_zero() or A.deg < 1:
            raise ValueError(f"partial quotient A_{k} = {A!r} has degree < 1")
        return A


class CFExpansion:
    """Append-only continued-fraction state for one alpha."""

    def __init__(self, field: Fq, source):
        self.field = field
        self.source = source
        self.partial_quotients: list[Poly] = []
        self._P = [Poly.one(field), Poly.zero(field)]  # P_{-1}, P_0
        self._Q = [Poly.zero(field), Poly.one(field)]  # Q_{-1}, Q_0
        self.terminated = False  # rational source fully expanded
        self._alpha_cache: Laurent | None = None

    # -- construction -------------------------------------------------------
    @classmethod
    def from_rational(cls, P: Poly, Q: Poly) -> "CFExpansion":
        """CF of the rational P/Q with deg P < deg Q (value in the unit ball)."""
        if Q.is_zero():
            raise ZeroDivisionError("zero denominator")
        g = gcd(P, Q)
        if not g.is_one() and not g.is_zero():
            P, Q = P // g, Q // g
        if not P.is_zero() and P.deg >= Q.deg:
            raise ValueError("rational source must have norm < 1")
        cf = cls(P.field, ("rational", P, Q))
        cf._rem = (Q, P)  # Euclid state: next quotient is rem[0] // rem[1]
        return cf

    @classmethod
    def from_pqspec(cls, field: Fq, spec: PQSpec) -> "CFExpansion":
        return cls(field, ("pqspec", spec))

    @classmethod
    def from_series(cls, x: Laurent) -> "CFExpansion":
        """CF of a (possibly truncated) series with ||x|| < 1.

        Exact inputs take the rational route via x = N / z^j; truncated
        inputs expand a rational proxy under the certification guard.
        """
        if x.coeffs and x.off >= 0:
            raise ValueError("series source must have norm < 1")
        j = -(x.off - len(x.coeffs) + 1) if x.coeffs else 0
        N = Poly(x.field, list(reversed([c for c in x.coeffs]))) if x.coeffs else Poly.zero(x.field)
        # N = x * z^j as a polynomial (lowest exponent shifted up to 0)
        if x.is_exact():
            return cls.from_rational(N, Poly.z_pow(x.field, j))
        if x.prec < 1:
            raise PrecisionExceeded("series source needs precision >= 1")
        proxy_num = N if not x.coeffs else Poly(
            x.field, [0] * (x.prec - j) + list(N.coeffs)
        )
        # proxy = (known part of x) * z^prec / z^prec
        cf = cls(x.field, ("series", x))
        cf._rem = (Poly.z_pow(x.field, x.prec), proxy_num)
        cf._guard = x.prec
        return cf

    # -- accessors ------------------------------------------------------------
    def k_max(self) -> int:
        return len(self.partial_quotients)

    def A(self, k: int) -> Poly:
        """Partial quotient A_k, 1-indexed."""
        self.extend_to(k)
        return self.partial_quotients[k - 1]

    def P(self, k: int) -> Poly:
        self.extend_to(k)
        return self._P[k + 1]

    def Q(self, k: int) -> Poly:
        self.extend_to(k)
        return self._Q[k + 1]

    def deg_Q(self, k: int) -> int:
        return self.Q(k).deg

    # -- expansion ------------------------------------------------------------
    def extend_to(self, k: int):
        """Ensure quotients A_1 .. A_k are computed (k >= -1 is a no-op)."""
        while len(self.partial_quotients) < k:
            if not self._step():
                break
        if len(self.partial_quotients) < k:
            if self.terminated:
                raise SpecExhausted(
                    f"expansion terminated after {len(self.partial_quotients)} quotients"
                )
            raise PrecisionExceeded(
                f"largest certified index is k = {len(self.partial_quotients)}"
            )

    def _step(self) -> bool:
        kind = self.source[0]
        if kind == "pqspec":
            spec: PQSpec = self.source[1]
            k = len(self.partial_quotients) + 1
            try:
                A = spec.get(k)
            except SpecExhausted:
                if spec.complete:
                    self.terminated = True
                    return False
                raise
            self._push(A)
            return True
        r0, r1 = self._rem
        if r1.is_zero():
            # for a series proxy, the proxy's CF ending certifies nothing
            # about alpha's; only a true rational source terminates
            if kind == "rational":
                self.terminated = True
            return False
        A, r2 = divmod(r0, r1)
        if kind == "series":
            # certification guard: the digit tuple (A_1..A_{k+1}) is shared by
            # every series within q^-(K+1) of the input iff the cylinder
            # radius q^-(2 deg Q_{k+1} + 1) is at least that, i.e.
            # 2 deg Q_{k+1} <= K
            Qnext = A * self._Q[-1] + self._Q[-2]
            if 2 * Qnext.deg > self._guard:
                return False
        self._rem = (r1, r2)
        self._push(A)
        return True

    def _push(self, A: Poly):
        if A.is_zero() or A.deg < 1:
            raise ValueError(f"partial quotient of degree < 1: {A!r}")
        self.partial_quotients.append(A)
        self._P.append(A * self._P[-1] + self._P[-2])
        self._Q.append(A * self._Q[-1] + self._Q[-2])
        self._alpha_cache = None

    # -- regeneration -----------------------------------------------------------
    def alpha(self, prec: int) -> Laurent:
        """The value of the expansion as a series correct through z^-prec.

        Uses ||alpha - P_k/Q_k|| = q^-(deg Q_k + deg Q_{k+1}), consuming
        quotients until the error drops below the requested precision; the
        result of a terminated (rational) expansion is exact.
        """
        if self.source[0] == "series":
            x: Laurent = self.source[1]
            if prec <= x.prec:
                return x.truncate(prec)
            raise PrecisionExceeded(
                f"series source has precision {x.prec} < requested {prec}"
            )
        if self._alpha_cache is not None:
            c = self._alpha_cache
            if c.prec is None or c.prec >= prec:
                return c if c.prec is None else c.truncate(prec)
        k = 0
        while True:
            try:
                self.extend_to(k + 1)
            except SpecExhausted:
                if not self.terminated:
                    raise
                val = series_of_rational(self.P(self.k_max()), self.Q(self.k_max()), prec)
                self._alpha_cache = val
                return val
            if self.deg_Q(k) + self.deg_Q(k + 1) > prec:
                break
            k += 1
        val = series_of_rational(self.P(k), self.Q(k), prec)
        if val.is_exact():
            val = val.truncate(prec)  # convergent, not alpha: cap the claim
        self._alpha_cache = val
        return val

    def alpha_prec_cap(self) -> int | None:
        """Highest precision alpha() can serve (None when regenerable at will)."""
        return self.source[1].prec if self.source[0] == "series" else None

    def d(self, k: int, tail: int = 1) -> Laurent:
        """D_k = Q_k alpha - P_k, certified through ``tail`` coefficients past
        the leading term (whose exponent is -deg Q_{k+1})."""
        if k == -1:
            return Laurent.from_poly(-Poly.one(self.field))
        self.extend_to(k + 1)
        need = self.deg_Q(k) + self.deg_Q(k + 1)
        prec = need + tail
        cap = self.alpha_prec_cap()
        if cap is not None:
            if cap < need:
                raise PrecisionExceeded(
                    f"series precision {cap} cannot certify D_{k}"
                )
            prec = min(prec, cap)
        a = self.alpha(prec)
        return a.mul_poly(self.Q(k)) - Laurent.from_poly(self.P(k))

    def d_norm(self, k: int) -> NormExp:
        """||D_k|| = 1/||Q_{k+1}||, from the identity (no series arithmetic)."""
        self.extend_to(k + 1)
        return NormExp(-self.deg_Q(k + 1))


def cf_expand(source, max_k: int | None = None, field: Fq | None = None) -> CFExpansion:
    """Expand a continued fraction from a rational pair, PQSpec, or Laurent.

    With ``max_k`` the expansion is driven eagerly to that index (raising
    PrecisionExceeded/SpecExhausted if unreachable); terminating expansions
    stop silently at their last quotient only when ``max_k is None``.
    """
    if isinstance(source, CFExpansion):
        cf = source
    elif isinstance(source, Laurent):
        cf = CFExpansion.from_series(source)
    elif isinstance(source, PQSpec):
        if field is None:
            raise ValueError("field is required for PQSpec sources")
        cf = CFExpansion.from_pqspec(field, source)
    elif isinstance(source, tuple) and len(source) == 2:
        cf = CFExpansion.from_rational(*source)
    else:
        raise TypeError(f"cannot expand {source!r}")
    if max_k is not None:
        try:
            cf.extend_to(max_k)
        except SpecExhausted:
            if not cf.terminated:
                raise
    return cf


def cf_step(x: Laurent) -> tuple[Poly, Laurent]:
    """One step of the Artin map: (A, next) with A = [1/x], next = {1/x}.

    Requires x nonzero with ||x|| < 1; refuses when the remaining precision
    cannot certify the digit.
    """
    if x.known_zero():
        raise ZeroDivisionError("continued-fraction step at zero")
    if x.coeffs and x.off >= 0:
        raise ValueError("cf_step needs ||x|| < 1")
    inv = x.inv()  # raises IndeterminateZero if leading coeff unknown
    if inv.prec is not None and inv.prec < 0:
        raise PrecisionExceeded("precision cannot certify the integral part")
    A, nxt = inv.int_frac()
    return A, nxt


def cf_step_rational(P: Poly, Q: Poly) -> tuple[Poly, Poly, Poly]:
    """Exact step on x = P/Q: returns (A, P', Q') with {Q/P} = P'/Q'."""
    if P.is_zero():
        raise ZeroDivisionError("continued-fraction step at zero")
    A, r = divmod(Q, P)
    return A, r, P


def cf_from_partial_quotients(spec: PQSpec, prec: int, field: Fq) -> Laurent:
    """Value of [0; A_1, A_2, ...] to the requested precision.

    Consumes quotients until deg Q_k + deg Q_{k+1} > prec (convergent error
    bound); a complete finite spec yields its exact rational value.
    """
    cf = CFExpansion.from_pqspec(field, spec)
    return cf.alpha(prec)


@dataclass
class CFIdentityReport:
    """Pass/fail per item of the classical identity suite at one index."""

    k: int
    coprime: bool
    norm_monotone: bool
    norm_product: bool
    determinant: bool
    d_recurrence: bool
    d_norm: bool
    notes: dict = dc_field(default_factory=dict)

    @property
    def all_pass(self) -> bool:
        return all(
            (
                self.coprime,
                self.norm_monotone,
                self.norm_product,
                self.determinant,
                self.d_recurrence,
                self.d_norm,
            )
        )


def verify_identities(cf: CFExpansion, k: int) -> CFIdentityReport:
    """Check the identity suite at index k (needs quotients through k+2)."""
    cf.extend_to(k + 2)
    F = cf.field
    Pk, Qk = cf.P(k), cf.Q(k)
    coprime = gcd(Pk, Qk).is_one() or Pk.is_zero()
    degs = [cf.deg_Q(j) for j in range(k + 1)]
    norm_monotone = degs[0] == 0 and all(a < b for a, b in zip(degs, degs[1:]))
    norm_product = cf.deg_Q(k) == sum(cf.A(i).deg for i in range(1, k + 1))
    sign = Poly(F, [F.minus_one]) ** k
    determinant = (cf.P(k - 1) * Qk - Pk * cf.Q(k - 1)) == sign
    # Lemma on differences, with every D_j recomputed from one regenerated
    # alpha rather than trusted from the recurrence; this precision certifies
    # the leading coefficient of D_{k+1} and needs quotients through k+3
    prec = cf.deg_Q(k + 1) + cf.deg_Q(k + 2)
    cap = cf.alpha_prec_cap()
    if cap is not None:
        prec = min(prec, cap)
    a = cf.alpha(prec)
    one = Laurent.from_poly(Poly.one(F))

    def D(j: int) -> Laurent:
        if j == -1:
            return -one
        return a.mul_poly(cf.Q(j)) - Laurent.from_poly(cf.P(j))

    lhs = D(k + 1) - (D(k).mul_poly(cf.A(k + 1)) + D(k - 1))
    d_rec = not lhs.coeffs
    d_norm = D(k).norm() == cf.d_norm(k)
    return CFIdentityReport(
        k, coprime, norm_monotone, norm_product, determinant, d_rec, d_norm
    )
