"""Truncated Laurent series in z^-1 over F_q, with explicit precision.

A series ``x = sum a_i z^(-i)`` is stored as the field indices of its
coefficients from the top exponent downward, together with ``prec``:

* ``prec = K`` (an int) means the coefficients of ``z^-i`` are known exactly
  for all ``i <= K`` and unknown beyond;
* ``prec = None`` means the element is *exact*: it equals the stored finite
  sum, every unstored coefficient being truly zero.

Every operation computes the provably valid precision of its result and any
query that would depend on unknown coefficients raises
:class:`~ffdioph.errors.PrecisionExceeded` instead of guessing.  A series
whose known coefficients all vanish is "known zero" only when exact;
otherwise its zero status is indeterminate.

Norms are q-exponents (:class:`~ffdioph.norms.NormExp`), never floats.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import DivideByZero, IndeterminateZero, PrecisionExceeded
from .fields import Fq
from .norms import NormExp
from .poly import Poly, conv_indices


class Laurent:
    """Immutable truncated Laurent series."""

    __slots__ = ("field", "off", "coeffs", "prec")

    def __init__(
        self,
        field: Fq,
        off: int,
        coeffs: Sequence[int],
        prec: int | None,
    ):
        """Low-level constructor; prefer the ``from_*`` classmethods.

        ``coeffs[i]`` is the coefficient (as a field index) of ``z**(off-i)``.
        """
        idx = [field.coerce_index(c) for c in coeffs]
        # normalize: strip known-zero coefficients at both ends
        while idx and idx[0] == 0:
            idx.pop(0)
            off -= 1
        while idx and idx[-1] == 0:
            idx.pop()
        if idx and prec is not None and off - len(idx) + 1 < -prec:
            raise ValueError("stored coefficients extend beyond declared precision")
        self.field = field
        self.off = off if idx else 0
        self.coeffs = tuple(idx)
        self.prec = prec

    # -- constructors ------------------------------------------------------
    @classmethod
    def exact_zero(cls, field: Fq) -> "Laurent":
        return cls(field, 0, (), None)

    @classmethod
    def zero_to_prec(cls, field: Fq, prec: int) -> "Laurent":
        return cls(field, 0, (), prec)

    @classmethod
    def from_poly(cls, P: Poly) -> "Laurent":
        if P.is_zero():
            return cls.exact_zero(P.field)
        return cls(P.field, P.deg, tuple(reversed(P.coeffs)), None)

    @classmethod
    def from_terms(cls, field: Fq, terms, prec: int | None = None) -> "Laurent":
        """Build from a {exponent: coefficient} mapping."""
        if not terms:
            return cls(field, 0, (), prec)
        top = max(terms)
        bot = min(terms)
        coeffs = [terms.get(e, 0) for e in range(top, bot - 1, -1)]
        return cls(field, top, coeffs, prec)

    # -- basic structure -----------------------------------------------------
    def is_exact(self) -> bool:
        return self.prec is None

    def known_zero(self) -> bool:
        return not self.coeffs and self.prec is None

    def vanishes_to_prec(self) -> bool:
        return not self.coeffs and self.prec is not None

    @property
    def top(self) -> int:
        """Degree of the series; raises if zero or indeterminate."""
        if self.coeffs:
            return self.off
        if self.prec is None:
            raise ValueError("exact zero has no degree")
        raise IndeterminateZero(
            f"all coefficients vanish to precision {self.prec}; degree unknown"
        )

    def top_bound(self) -> int | None:
        """Upper bound on the degree: exact for nonzero, -(prec+1) when the
        series vanishes to its precision, None (minus infinity) for zero."""
        if self.coeffs:
            return self.off
        if self.prec is None:
            return None
        return -(self.prec + 1)

    def norm(self) -> NormExp:
        if self.coeffs:
            return NormExp(self.off)
        if self.prec is None:
            return NormExp.zero()
        raise IndeterminateZero(
            f"all coefficients vanish to precision {self.prec}; norm unknown"
        )

    def coeff_at(self, e: int) -> int:
        """Coefficient of z^e; raises PrecisionExceeded when unknown."""
        if self.coeffs:
            if e > self.off:
                return 0
            i = self.off - e
            if i < len(self.coeffs):
                return self.coeffs[i]
        if self.prec is None or e >= -self.prec:
            return 0
        raise PrecisionExceeded(
            f"coefficient of z^{e} unknown (precision {self.prec})"
        )

    def frac_coeff_block(self, L: int) -> list[int]:
        """Known coefficients of z^-1 .. z^-L, for kernel basis building."""
        return [self.coeff_at(-i) for i in range(1, L + 1)]

    # -- arithmetic ----------------------------------------------------------
    def _check_field(self, other: "Laurent"):
        if self.field is not other.field:
            raise ValueError("operands from different fields")

    def __add__(self, other: "Laurent") -> "Laurent":
        self._check_field(other)
        F = self.field
        prec = _min_prec(self.prec, other.prec)
        terms: dict[int, int] = {}
        for s in (self, other):
            for i, c in enumerate(s.coeffs):
                e = s.off - i
                if prec is not None and e < -prec:
                    continue  # beyond the valid joint precision
                terms[e] = F.add(terms.get(e, 0), c)
        return Laurent.from_terms(F, terms, prec)

    def __neg__(self) -> "Laurent":
        F = self.field
        return Laurent(F, self.off, [F.neg(c) for c in self.coeffs], self.prec)

    def __sub__(self, other: "Laurent") -> "Laurent":
        return self + (-other)

    def scale(self, c) -> "Laurent":
        F = self.field
        ci = F.coerce_index(c)
        if ci == 0:
            return Laurent.exact_zero(F) if self.prec is None else self.drop_coeffs()
        return Laurent(F, self.off, [F.mul(ci, x) for x in self.coeffs], self.prec)

    def drop_coeffs(self) -> "Laurent":
        return Laurent(self.field, 0, (), self.prec)

    def shift(self, n: int) -> "Laurent":
        """Multiply by z^n."""
        prec = None if self.prec is None else self.prec - n
        return Laurent(self.field, self.off + n, self.coeffs, prec)

    def __mul__(self, other: "Laurent") -> "Laurent":
        self._check_field(other)
        F = self.field
        if self.known_zero() or other.known_zero():
            return Laurent.exact_zero(F)
        prec = _mul_prec(self, other)
        if not self.coeffs or not other.coeffs:
            return Laurent(F, 0, (), prec)
        out = conv_indices(F, self.coeffs, other.coeffs)
        off = self.off + other.off
        if prec is not None:
            keep = off + prec + 1  # entries with exponent >= -prec
            out = out[:keep]
        return Laurent(F, off, out, prec)

    def mul_poly(self, P: Poly) -> "Laurent":
        return self * Laurent.from_poly(P)

    def add_poly(self, P: Poly) -> "Laurent":
        return self + Laurent.from_poly(P)

    def inv(self, prec: int | None = None) -> "Laurent":
        """Multiplicative inverse to the requested/intrinsic precision.

        For an inexact input with precision K and degree t, the intrinsic
        output precision is K + 2t; an explicit ``prec`` may lower it.  For
        exact non-monomial inputs ``prec`` is required (the expansion is
        infinite).
        """
        F = self.field
        if self.known_zero():
            raise DivideByZero("inverse of zero series")
        if not self.coeffs:
            raise IndeterminateZero(
                "cannot invert: all coefficients vanish to precision "
                f"{self.prec}, leading coefficient unknown"
            )
        t = self.off
        intrinsic = None if self.prec is None else self.prec + 2 * t
        target = _min_prec(intrinsic, prec)
        if target is None:
            if len(self.coeffs) == 1:
                return Laurent(F, -t, (F.inv(self.coeffs[0]),), None)
            raise ValueError("prec is required to invert an exact non-monomial")
        count = target - t + 1  # coefficients from z^-t down to z^-target
        if count <= 0:
            raise PrecisionExceeded(
                f"no inverse coefficients are certified (precision {self.prec})"
            )
        c_inv = F.inv(self.coeffs[0])
        x = self.coeffs
        r = [c_inv]
        at, mt, neg = F.add_table, F.mul_table, F.neg_table
        for k in range(1, count):
            acc = 0
            for j in range(1, min(k, len(x) - 1) + 1):
                acc = at[acc, mt[x[j], r[k - j]]]
            r.append(int(mt[neg[acc], c_inv]))
        # a non-monomial has an infinite inverse expansion (units of the
        # Laurent-polynomial ring are monomials), so the result stays truncated
        return Laurent(F, -t, r, target)

    def truncate(self, prec: int) -> "Laurent":
        """Forget coefficients below z^-prec (weaken the precision)."""
        if self.prec is not None and self.prec <= prec:
            return self
        kept = [(self.off - i, c) for i, c in enumerate(self.coeffs) if self.off - i >= -prec]
        return Laurent.from_terms(self.field, dict(kept), prec)

    def int_frac(self) -> tuple[Poly, "Laurent"]:
        """Split into ([x], {x}) at z^0; requires precision >= 0."""
        if self.prec is not None and self.prec < 0:
            raise PrecisionExceeded("fractional split needs precision >= 0")
        F = self.field
        int_coeffs: dict[int, int] = {}
        frac_terms: dict[int, int] = {}
        for i, c in enumerate(self.coeffs):
            e = self.off - i
            if e >= 0:
                int_coeffs[e] = c
            else:
                frac_terms[e] = c
        deg = max(int_coeffs, default=-1)
        P = Poly(F, [int_coeffs.get(i, 0) for i in range(deg + 1)])
        return P, Laurent.from_terms(F, frac_terms, self.prec)

    def frac(self) -> "Laurent":
        return self.int_frac()[1]

    def int_part(self) -> Poly:
        return self.int_frac()[0]

    # -- comparisons ---------------------------------------------------------
    def agrees_with(self, other: "Laurent", through: int) -> bool:
        """True when both series have equal coefficients for z^-i, i <= through."""
        for e in range(max(self._top_or(other), other._top_or(self)), -through - 1, -1):
            if self.coeff_at(e) != other.coeff_at(e):
                return False
        return True

    def _top_or(self, other: "Laurent") -> int:
        return self.off if self.coeffs else (other.off if other.coeffs else 0)

    def __eq__(self, other):
        return (
            isinstance(other, Laurent)
            and self.field is other.field
            and self.off == other.off
            and self.coeffs == other.coeffs
            and self.prec == other.prec
        )

    def __hash__(self):
        return hash((id(self.field), self.off, self.coeffs, self.prec))

    def __repr__(self):
        if not self.coeffs:
            body = "0"
        else:
            parts = []
            for i, c in enumerate(self.coeffs):
                if not c:
                    continue
                e = self.off - i
                if e == 0:
                    parts.append(f"{c}")
                else:
                    ze = "z" if e == 1 else f"z^{e}"
                    parts.append(ze if c == 1 else f"{c}*{ze}")
            body = " + ".join(parts)
        tail = " (exact)" if self.prec is None else f" + O(z^-{self.prec + 1})"
        return body + tail


def _min_prec(a: int | None, b: int | None) -> int | None:
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _mul_prec(x: Laurent, y: Laurent) -> int | None:
    """Valid precision of a product: min(Kx - top(y), Ky - top(x)).

    The error term O(z^-(Kx+1)) of x multiplies y, contaminating exponents
    from top(y) - Kx - 1 upward-in-error, so coefficients of z^-i stay exact
    for i <= Kx - top(y); symmetrically for y.  Vanishing-to-precision
    factors use their degree upper bound -(K+1).
    """
    out: int | None = None
    tx, ty = x.top_bound(), y.top_bound()
    if x.prec is not None:
        if ty is None:  # y exactly zero is handled by the caller
            return None
        out = _min_prec(out, x.prec - ty)
    if y.prec is not None:
        if tx is None:
            return None
        out = _min_prec(out, y.prec - tx)
    return out


def series_of_rational(P: Poly, Q: Poly, prec: int) -> Laurent:
    """Expand the rational function P/Q as a Laurent series to ``prec``.

    The result is flagged exact when the long division terminates (i.e. Q
    divides P * z^k for some k, which over F_q[z] means Q is a monomial times
    a divisor of P).
    """
    F = P.field
    if Q.is_zero():
        raise DivideByZero("rational function with zero denominator")
    if P.is_zero():
        return Laurent.exact_zero(F)
    # Q = z^shift * Qcore with Qcore(0) != 0; the expansion is finite exactly
    # when Qcore divides P, in which case P/Q = (P // Qcore) * z^-shift.
    qc = list(Q.coeffs)
    shift = 0
    while qc and qc[0] == 0:
        qc.pop(0)
        shift += 1
    Qcore = Poly(F, qc)
    if (P % Qcore).is_zero():
        exact = Laurent.from_poly(P // Qcore).shift(-shift)
        return exact if shift <= prec else exact.truncate(prec)
    top = P.deg - Q.deg
    count = prec + top + 1
    if count <= 0:
        return Laurent.zero_to_prec(F, prec)
    # forward substitution: r solves Q * r = P in descending exponents
    pc = list(reversed(P.coeffs))  # coefficient of z^(deg P - i)
    qrev = list(reversed(Q.coeffs))
    lead_inv = F.inv(qrev[0])
    at, mt, neg = F.add_table, F.mul_table, F.neg_table
    r: list[int] = []
    for k in range(count):
        acc = pc[k] if k < len(pc) else 0
        for j in range(1, min(k, len(qrev) - 1) + 1):
            acc = at[acc, neg[mt[qrev[j], r[k - j]]]]
        r.append(int(mt[acc, lead_inv]))
    return Laurent(F, top, r, prec)
