"""Vectors and matrices over F_q[z] and F_q((z^-1)).

The norm of a vector is the max of its coordinate norms; the bracket distance
``|<x>|`` is the distance to the nearest polynomial vector, i.e. the max of
the coordinate fractional-part norms.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import PrecisionExceeded
from .fields import Fq
from .laurent import Laurent
from .norms import NormExp
from .poly import Poly


class PolyVec:
    """Immutable vector of polynomials."""

    __slots__ = ("field", "entries")

    def __init__(self, entries: Iterable[Poly]):
        self.entries = tuple(entries)
        if not self.entries:
            raise ValueError("empty vector")
        self.field = self.entries[0].field

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def is_zero(self) -> bool:
        return all(p.is_zero() for p in self.entries)

    def norm(self) -> NormExp:
        degs = [p.deg for p in self.entries if not p.is_zero()]
        return NormExp(max(degs)) if degs else NormExp.zero()

    def __add__(self, other: "PolyVec") -> "PolyVec":
        return PolyVec(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "PolyVec") -> "PolyVec":
        return PolyVec(a - b for a, b in zip(self.entries, other.entries))

    def __eq__(self, other):
        return isinstance(other, PolyVec) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __repr__(self):
        return "(" + ", ".join(map(repr, self.entries)) + ")"


class LaurentVec:
    """Immutable vector of Laurent series."""

    __slots__ = ("field", "entries")

    def __init__(self, entries: Iterable[Laurent]):
        self.entries = tuple(entries)
        if not self.entries:
            raise ValueError("empty vector")
        self.field = self.entries[0].field

    @classmethod
    def from_polyvec(cls, v: PolyVec) -> "LaurentVec":
        return cls(Laurent.from_poly(p) for p in v)

    def __iter__(self):
        return iter(self.entries)

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i):
        return self.entries[i]

    def __add__(self, other: "LaurentVec") -> "LaurentVec":
        return LaurentVec(a + b for a, b in zip(self.entries, other.entries))

    def __sub__(self, other: "LaurentVec") -> "LaurentVec":
        return LaurentVec(a - b for a, b in zip(self.entries, other.entries))

    def norm(self) -> NormExp:
        exps = []
        for x in self.entries:
            n = x.norm()  # raises IndeterminateZero when unresolvable
            if not n.is_zero():
                exps.append(n.exp)
        return NormExp(max(exps)) if exps else NormExp.zero()

    def bracket_dist(self) -> NormExp:
        """|<x>| = max over coordinates of the fractional-part norm.

        A coordinate whose fractional part vanishes to its (finite) precision
        only bounds its norm by q^-(K+1); the max is still determinate when
        another coordinate attains at least that bound, otherwise the call
        refuses.
        """
        known: int | None = None
        bound: int | None = None
        for x in self.entries:
            f = x.frac()
            if f.coeffs:
                e = f.off
                known = e if known is None else max(known, e)
            elif f.prec is not None:
                b = -(f.prec + 1)
                bound = b if bound is None else max(bound, b)
        if bound is not None and (known is None or known < bound):
            raise PrecisionExceeded(
                "bracket distance depends on coefficients beyond known precision"
            )
        return NormExp(known) if known is not None else NormExp.zero()

    def __repr__(self):
        return "(" + ", ".join(map(repr, self.entries)) + ")"


def bracket_dist(x) -> NormExp:
    """|<x>| for a LaurentVec, a Laurent, or an iterable of Laurents."""
    if isinstance(x, Laurent):
        return LaurentVec((x,)).bracket_dist()
    if isinstance(x, LaurentVec):
        return x.bracket_dist()
    return LaurentVec(tuple(x)).bracket_dist()


class LaurentMatrix:
    """Rectangular matrix of Laurent series, stored row-major."""

    __slots__ = ("field", "rows", "n", "m")

    def __init__(self, rows: Sequence[Sequence[Laurent]]):
        self.rows = tuple(tuple(r) for r in rows)
        if not self.rows or not self.rows[0]:
            raise ValueError("empty matrix")
        self.n = len(self.rows)
        self.m = len(self.rows[0])
        if any(len(r) != self.m for r in self.rows):
            raise ValueError("ragged matrix")
        self.field = self.rows[0][0].field

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def transpose(self) -> "LaurentMatrix":
        return LaurentMatrix(tuple(zip(*self.rows)))

    def apply(self, x: PolyVec) -> LaurentVec:
        """Matrix-vector product A x for a polynomial vector x (length m)."""
        if len(x) != self.m:
            raise ValueError(f"vector length {len(x)} != {self.m}")
        out = []
        for row in self.rows:
            acc = Laurent.exact_zero(self.field)
            for a, p in zip(row, x):
                if not p.is_zero():
                    acc = acc + a.mul_poly(p)
            out.append(acc)
        return LaurentVec(out)

    def min_prec(self) -> int | None:
        """Smallest entry precision (None when all entries are exact)."""
        out: int | None = None
        for row in self.rows:
            for a in row:
                if a.prec is not None:
                    out = a.prec if out is None else min(out, a.prec)
        return out

    def __repr__(self):
        return f"LaurentMatrix({self.n}x{self.m})"


def poly_vec(F: Fq, *polys) -> PolyVec:
    return PolyVec(p if isinstance(p, Poly) else Poly(F, p) for p in polys)
