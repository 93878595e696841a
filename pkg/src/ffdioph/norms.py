"""Integer-exponent norms.

Norms in F_q((z^-1)) are powers of q; the library never stores them as
floats.  A :class:`NormExp` is either an integer exponent ``k`` (norm q^k) or
the minus-infinity sentinel (norm 0).  Rational exponents such as m/n appear
only inside comparisons, which are done by integer cross-multiplication (the
:mod:`fractions` module carries any rational bookkeeping in reports).
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering


@total_ordering
class NormExp:
    """Exponent of a norm: ``q**exp``, or zero when ``exp is None``."""

    __slots__ = ("exp",)

    def __init__(self, exp: int | None):
        self.exp = exp

    @classmethod
    def zero(cls) -> "NormExp":
        return cls(None)

    def is_zero(self) -> bool:
        return self.exp is None

    def __eq__(self, other):
        other = _coerce(other)
        return isinstance(other, NormExp) and self.exp == other.exp

    def __lt__(self, other):
        other = _coerce(other)
        if self.exp is None:
            return other.exp is not None
        if other.exp is None:
            return False
        return self.exp < other.exp

    def __mul__(self, other):
        other = _coerce(other)
        if self.exp is None or other.exp is None:
            return NormExp.zero()
        return NormExp(self.exp + other.exp)

    def __pow__(self, k: int):
        if self.exp is None:
            if k <= 0:
                raise ValueError("0 cannot be raised to a non-positive power")
            return NormExp.zero()
        return NormExp(self.exp * k)

    def cmp_qpow(self, num: int, den: int = 1) -> int:
        """Compare against q^(num/den); returns -1, 0, or 1.  den > 0."""
        if den <= 0:
            raise ValueError("denominator must be positive")
        if self.exp is None:
            return -1
        lhs, rhs = self.exp * den, num
        return (lhs > rhs) - (lhs < rhs)

    def as_fraction(self) -> Fraction:
        """Exponent as an exact Fraction; raises on the zero norm."""
        if self.exp is None:
            raise ValueError("zero norm has no finite exponent")
        return Fraction(self.exp)

    def __hash__(self):
        return hash(("NormExp", self.exp))

    def __repr__(self):
        return "NormExp(-inf)" if self.exp is None else f"NormExp({self.exp})"


def _coerce(x) -> "NormExp":
    if isinstance(x, NormExp):
        return x
    if isinstance(x, int):
        return NormExp(x)
    return x


def max_exp(*exps: int | None) -> int | None:
    """Max of plain exponents with None as minus infinity."""
    best: int | None = None
    for e in exps:
        if e is not None and (best is None or e > best):
            best = e
    return best
