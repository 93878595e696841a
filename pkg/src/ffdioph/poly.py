"""Polynomials over F_q, the "integers" of this setting.

Coefficients are stored lowest degree first as field indices, normalized so
the last entry is nonzero; the zero polynomial has an empty coefficient tuple
and degree ``None`` (the minus-infinity sentinel).  The norm of a nonzero
polynomial is ``q**deg``.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

from .errors import DivideByZero
from .fields import Fq

# deg 0-polynomial sentinel; compares below every int via helpers in norms.py
MINUS_INF = None

_CONV_THRESHOLD = 48  # schoolbook below this length, numpy convolution above


class Poly:
    """Immutable polynomial in F_q[z]."""

    __slots__ = ("field", "coeffs")

    def __init__(self, field: Fq, coeffs: Iterable = ()):
        idx = [field.coerce_index(c) for c in coeffs]
        while idx and idx[-1] == 0:
            idx.pop()
        self.field = field
        self.coeffs = tuple(idx)

    # -- constructors -----------------------------------------------------
    @classmethod
    def zero(cls, field: Fq) -> "Poly":
        return cls(field, ())

    @classmethod
    def one(cls, field: Fq) -> "Poly":
        return cls(field, (1,))

    @classmethod
    def z_pow(cls, field: Fq, n: int, c: int = 1) -> "Poly":
        """The monomial c * z^n."""
        if n < 0:
            raise ValueError("monomial degree must be >= 0")
        return cls(field, (0,) * n + (field.coerce_index(c),))

    # -- structure ---------------------------------------------------------
    @property
    def deg(self) -> int | None:
        """Degree, or None for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else MINUS_INF

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def leading(self) -> int:
        if not self.coeffs:
            raise ValueError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        c = self.field.inv(self.leading())
        return self.scale(c)

    # -- arithmetic ----------------------------------------------------
    def __add__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = F.add(out[i], c)
        return Poly(F, out)

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __neg__(self) -> "Poly":
        F = self.field
        return Poly(F, [F.neg(c) for c in self.coeffs])

    def scale(self, c) -> "Poly":
        F = self.field
        ci = F.coerce_index(c)
        return Poly(F, [F.mul(ci, x) for x in self.coeffs])

    def __mul__(self, other: "Poly") -> "Poly":
        F = self.field
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(F)
        return Poly(F, conv_indices(F, a, b))

    def shift(self, n: int) -> "Poly":
        """Multiply by z^n (n >= 0)."""
        if self.is_zero():
            return self
        return Poly(self.field, (0,) * n + self.coeffs)

    def __divmod__(self, other: "Poly") -> tuple["Poly", "Poly"]:
        F = self.field
        if other.is_zero():
            raise DivideByZero("polynomial division by zero")
        r = list(self.coeffs)
        d = other.coeffs
        dd = len(d) - 1
        lead_inv = F.inv(d[-1])
        qcoeffs = [0] * max(len(r) - dd, 0)
        for i in range(len(r) - 1, dd - 1, -1):
            c = r[i]
            if c:
                f = F.mul(c, lead_inv)
                qcoeffs[i - dd] = f
                for j in range(dd + 1):
                    r[i - dd + j] = F.sub(r[i - dd + j], F.mul(f, d[j]))
        return Poly(F, qcoeffs), Poly(F, r)

    def __floordiv__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return divmod(self, other)[1]

    def __pow__(self, n: int) -> "Poly":
        out = Poly.one(self.field)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other):
        return (
            isinstance(other, Poly)
            and self.field is other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((id(self.field), self.coeffs))

    def __bool__(self):
        return bool(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i in reversed(range(len(self.coeffs))):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(f"{c}")
            else:
                zi = "z" if i == 1 else f"z^{i}"
                terms.append(zi if c == 1 else f"{c}*{zi}")
        return " + ".join(terms)


def conv_indices(F: Fq, a: Sequence[int], b: Sequence[int]) -> list[int]:
    """Coefficient convolution over F_q on raw index sequences."""
    if F.e == 1 and min(len(a), len(b)) >= 2 and max(len(a), len(b)) >= _CONV_THRESHOLD:
        out = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return [int(c) for c in out % F.p]
    out = [0] * (len(a) + len(b) - 1)
    mt, at = F.mul_table, F.add_table
    for i, ai in enumerate(a):
        if ai:
            row = mt[ai]
            for j, bj in enumerate(b):
                if bj:
                    out[i + j] = at[out[i + j], row[bj]]
    return [int(c) for c in out]


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    while not b.is_zero():
        a, b = b, a % b
    return a.monic() if not a.is_zero() else a


def ext_gcd(a: Poly, b: Poly) -> tuple[Poly, Poly, Poly]:
    """(g, s, t) with g = gcd monic and s*a + t*b = g."""
    F = a.field
    r0, r1 = a, b
    s0, s1 = Poly.one(F), Poly.zero(F)
    t0, t1 = Poly.zero(F), Poly.one(F)
    while not r1.is_zero():
        qu, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - qu * s1
        t0, t1 = t1, t0 - qu * t1
    if r0.is_zero():
        return r0, s0, t0
    c = F.inv(r0.leading())
    return r0.scale(c), s0.scale(c), t0.scale(c)


def all_polys(F: Fq, max_deg: int) -> list[Poly]:
    """All polynomials of degree <= max_deg (including 0), in index order.

    Index order = lexicographic on the digit string (c_0, ..., c_maxdeg) with
    c_0 most significant, matching the scan kernels' candidate order.
    """
    out = []
    q = F.q
    for code in range(q ** (max_deg + 1)):
        digits = []
        for pos in range(max_deg, -1, -1):
            digits.append((code // q**pos) % q)
        out.append(Poly(F, digits))
    return out
