"""Exact arithmetic in the coefficient field F_q, q = p^e.

Elements are represented by integer indices ``0 .. q-1``.  The index encodes
the base-p digit vector of the element in the power basis of
``F_p[x]/(modulus)``: index ``sum(d_i * p**i)`` stands for the residue class
``sum(d_i * x**i)``.  For prime fields (e = 1) the index is simply the value.

A :class:`Fq` instance owns small dense operation tables (q <= 81 entries per
axis at desk scale), which is also the form the scan kernels consume.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Sequence

import numpy as np

from .errors import DivideByZero


def is_prime(n: int) -> bool:
    """Trial-division primality check, adequate for desk-scale p."""
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _fp_poly_mul(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _fp_poly_mod(a: Sequence[int], m: Sequence[int], p: int) -> list[int]:
    # m is monic of degree e; reduce a in place.
    a = list(a)
    e = len(m) - 1
    for i in range(len(a) - 1, e - 1, -1):
        c = a[i]
        if c:
            a[i] = 0
            for j in range(e):
                a[i - e + j] = (a[i - e + j] - c * m[j]) % p
    while len(a) > e:
        a.pop()
    while len(a) < e:
        a.append(0)
    return a


def _is_irreducible(modulus: Sequence[int], p: int) -> bool:
    """Exhaustive divisor search over F_p[x]; fine for e <= 4 at desk scale."""
    e = len(modulus) - 1
    if e < 1 or modulus[-1] != 1:
        return False
    # Try all monic divisors of degree 1 .. e//2.
    for d in range(1, e // 2 + 1):
        for lower in itertools.product(range(p), repeat=d):
            div = list(lower) + [1]
            if _fp_divides(div, modulus, p):
                return False
    return True


def _fp_divides(d: Sequence[int], a: Sequence[int], p: int) -> bool:
    a = list(a)
    while len(a) >= len(d) and any(a):
        while a and a[-1] == 0:
            a.pop()
        if len(a) < len(d):
            break
        c = a[-1] * pow(d[-1], p - 2, p) % p
        shift = len(a) - len(d)
        for j, dj in enumerate(d):
            a[shift + j] = (a[shift + j] - c * dj) % p
        while a and a[-1] == 0:
            a.pop()
    return not any(a)


def default_modulus(p: int, e: int) -> tuple[int, ...]:
    """First monic irreducible of degree e over F_p in lexicographic order.

    Found by exhaustive search; no lookup tables are embedded.
    """
    if e == 1:
        return (0, 1)
    for lower in itertools.product(range(p), repeat=e):
        cand = tuple(lower) + (1,)
        if _is_irreducible(cand, p):
            return cand
    raise ValueError(f"no irreducible modulus of degree {e} over F_{p}")


@dataclass(frozen=True)
class FieldSpec:
    """Description of F_q with q = p^e.

    ``modulus`` lists F_p coefficients of a monic degree-e polynomial, lowest
    degree first; it is ignored (and normalized to (0, 1)) when e = 1.
    """

    p: int
    e: int = 1
    modulus: tuple[int, ...] = field(default=())

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"p = {self.p} is not prime")
        if self.e < 1:
            raise ValueError("extension degree must be >= 1")
        if self.e == 1:
            object.__setattr__(self, "modulus", (0, 1))
            return
        mod = tuple(c % self.p for c in self.modulus)
        if len(mod) != self.e + 1 or mod[-1] != 1:
            raise ValueError("modulus must be monic of degree e")
        if not _is_irreducible(mod, self.p):
            raise ValueError(f"modulus {mod} is reducible over F_{self.p}")
        object.__setattr__(self, "modulus", mod)

    @property
    def q(self) -> int:
        return self.p**self.e


@lru_cache(maxsize=None)
def _make_field(spec: FieldSpec) -> "Fq":
    return Fq(spec)


def GF(q_or_spec, modulus: Iterable[int] | None = None) -> "Fq":
    """Return the field of order q (or for an explicit :class:`FieldSpec`).

    For prime powers with e > 1 the modulus may be supplied; otherwise the
    lexicographically first irreducible is searched for.
    """
    if isinstance(q_or_spec, FieldSpec):
        return _make_field(q_or_spec)
    q = int(q_or_spec)
    p, e = _factor_prime_power(q)
    mod = tuple(modulus) if modulus is not None else default_modulus(p, e)
    return _make_field(FieldSpec(p, e, mod))


def _factor_prime_power(q: int) -> tuple[int, int]:
    if q < 2:
        raise ValueError("q must be a prime power >= 2")
    for p in range(2, q + 1):
        if is_prime(p) and q % p == 0:
            e = 0
            m = q
            while m % p == 0:
                m //= p
                e += 1
            if m != 1:
                raise ValueError(f"q = {q} is not a prime power")
            return p, e
    raise ValueError(f"q = {q} is not a prime power")


class Fq:
    """Arithmetic tables for F_q; elements are int indices in [0, q)."""

    def __init__(self, spec: FieldSpec):
        self.spec = spec
        self.p = spec.p
        self.e = spec.e
        self.q = spec.q
        q, p, e = self.q, self.p, self.e
        if e == 1:
            add = np.fromfunction(lambda a, b: (a + b) % p, (q, q), dtype=np.int64)
            mul = np.fromfunction(lambda a, b: (a * b) % p, (q, q), dtype=np.int64)
        else:
            add = np.zeros((q, q), dtype=np.int64)
            mul = np.zeros((q, q), dtype=np.int64)
            digs = [self._digits(i) for i in range(q)]
            for a in range(q):
                for b in range(q):
                    add[a, b] = self._from_digits(
                        [(x + y) % p for x, y in zip(digs[a], digs[b])]
                    )
                    prod = _fp_poly_mod(
                        _fp_poly_mul(digs[a], digs[b], p), spec.modulus, p
                    )
                    mul[a, b] = self._from_digits(prod)
        self.add_table = add.astype(np.uint8)
        self.mul_table = mul.astype(np.uint8)
        self.neg_table = np.zeros(q, dtype=np.uint8)
        for a in range(q):
            for b in range(q):
                if self.add_table[a, b] == 0:
                    self.neg_table[a] = b
                    break
        self.inv_table = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a, b] == 1:
                    self.inv_table[a] = b
                    break
        self.one = 1
        self.minus_one = int(self.neg_table[1])

    def _digits(self, idx: int) -> list[int]:
        out = []
        for _ in range(self.e):
            out.append(idx % self.p)
            idx //= self.p
        return out

    def _from_digits(self, digits: Sequence[int]) -> int:
        idx = 0
        for d in reversed(digits):
            idx = idx * self.p + (d % self.p)
        return idx

    # int-level operations (hot paths use these directly)
    def add(self, a: int, b: int) -> int:
        return int(self.add_table[a, b])

    def sub(self, a: int, b: int) -> int:
        return int(self.add_table[a, self.neg_table[b]])

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def neg(self, a: int) -> int:
        return int(self.neg_table[a])

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivideByZero("inverse of zero in F_q")
        return int(self.inv_table[a])

    def elem(self, value) -> "FqElem":
        return FqElem(self, self.coerce_index(value))

    def coerce_index(self, value) -> int:
        """Accept an index, an FqElem, or a base-p digit list."""
        if isinstance(value, FqElem):
            if value.field is not self:
                raise ValueError("element from a different field")
            return value.index
        if isinstance(value, (list, tuple)):
            if len(value) > self.e and any(value[self.e :]):
                raise ValueError("digit list longer than extension degree")
            return self._from_digits(list(value)[: self.e] + [0] * self.e)
        idx = int(value)
        if self.e == 1:
            return idx % self.p
        if not 0 <= idx < self.q:
            raise ValueError(f"index {idx} out of range for F_{self.q}")
        return idx

    def elements(self):
        return [FqElem(self, i) for i in range(self.q)]

    def __repr__(self):
        if self.e == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.e}; mod={list(self.spec.modulus)})"


class FqElem:
    """A field element: a thin wrapper over (field, index)."""

    __slots__ = ("field", "index")

    def __init__(self, field: Fq, index: int):
        self.field = field
        self.index = index

    @property
    def digits(self) -> tuple[int, ...]:
        """Base-p digit vector of length e (power-basis coordinates)."""
        return tuple(self.field._digits(self.index))

    def __add__(self, other):
        return FqElem(self.field, self.field.add(self.index, self._idx(other)))

    def __sub__(self, other):
        return FqElem(self.field, self.field.sub(self.index, self._idx(other)))

    def __mul__(self, other):
        return FqElem(self.field, self.field.mul(self.index, self._idx(other)))

    def __neg__(self):
        return FqElem(self.field, self.field.neg(self.index))

    def __truediv__(self, other):
        return FqElem(
            self.field, self.field.mul(self.index, self.field.inv(self._idx(other)))
        )

    def inverse(self):
        return FqElem(self.field, self.field.inv(self.index))

    def _idx(self, other) -> int:
        return self.field.coerce_index(other)

    def __eq__(self, other):
        if isinstance(other, FqElem):
            return self.field is other.field and self.index == other.index
        if isinstance(other, int):
            return self.index == self.field.coerce_index(other)
        return NotImplemented

    def __hash__(self):
        return hash((id(self.field), self.index))

    def __bool__(self):
        return self.index != 0

    def __repr__(self):
        return f"F{self.field.q}({self.index})"
