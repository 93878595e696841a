"""Text formats shared by the CLI and file I/O.

* field spec: ``q=p^e;mod=[c0,...,ce]`` (mod omitted for prime fields);
* polynomials: ``[c0,c1,...]`` low-to-high, each coefficient a plain integer
  for prime fields or a base-p digit list for extensions;
* Laurent series: ``{"top": n, "coeffs": [...], "prec": K}`` with the
  coefficient list running from the z^top term downward and ``prec: null``
  meaning exact;
* matrices: row-major nested lists.

Every emitter/parser pair round-trips bit-exactly.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction

from .contfrac import CFExpansion, PQSpec
from .fields import GF, Fq
from .laurent import Laurent
from .poly import Poly
from .vectors import LaurentMatrix, LaurentVec

# -- field specs -------------------------------------------------------------


def parse_field(s: str) -> Fq:
    m = re.fullmatch(r"q=(\d+)(?:\^(\d+))?(?:;mod=(\[.*\]))?", s.strip())
    if not m:
        raise ValueError(f"bad field spec {s!r}; expected q=p^e;mod=[c0,...,ce]")
    base = int(m.group(1))
    q = base ** int(m.group(2)) if m.group(2) else base
    mod = json.loads(m.group(3)) if m.group(3) else None
    return GF(q, modulus=mod)


def field_str(F: Fq) -> str:
    if F.e == 1:
        return f"q={F.p}"
    return f"q={F.p}^{F.e};mod={list(F.spec.modulus)}"


# -- polynomials ---------------------------------------------------------------


def poly_to_obj(P: Poly):
    F = P.field
    if F.e == 1:
        return list(P.coeffs)
    return [list(F._digits(c)) for c in P.coeffs]


def poly_from_obj(F: Fq, obj) -> Poly:
    return Poly(F, obj)


_TERM = re.compile(r"([0-9]+)?\s*\*?\s*(z(\^([0-9]+))?)?")


def poly_from_expr(F: Fq, s: str) -> Poly:
    """Parse expressions like ``z^3+z+1`` or ``2*z^2-1`` (prime-field
    coefficients as plain integers; extension elements by index)."""
    s = s.replace(" ", "")
    if not s:
        raise ValueError("empty polynomial expression")
    terms: dict[int, int] = {}
    for sign, part in re.findall(r"([+-]?)([^+-]+)", s):
        m = _TERM.fullmatch(part)
        if not m or (m.group(1) is None and m.group(2) is None):
            raise ValueError(f"bad polynomial term {part!r}")
        coeff = F.coerce_index(int(m.group(1))) if m.group(1) else 1
        if sign == "-":
            coeff = F.neg(coeff)
        deg = 0
        if m.group(2):
            deg = int(m.group(4)) if m.group(4) else 1
        terms[deg] = F.add(terms.get(deg, 0), coeff)
    if not terms:
        raise ValueError(f"bad polynomial expression {s!r}")
    top = max(terms)
    return Poly(F, [terms.get(i, 0) for i in range(top + 1)])


# -- Laurent series ----------------------------------------------------------------


def laurent_to_obj(x: Laurent):
    F = x.field
    if not x.coeffs:
        return {"top": 0, "coeffs": [], "prec": x.prec}
    lo = -x.prec if x.prec is not None else x.off - len(x.coeffs) + 1
    coeffs = [x.coeff_at(e) for e in range(x.off, lo - 1, -1)]
    if F.e > 1:
        coeffs = [list(F._digits(c)) for c in coeffs]
    return {"top": x.off, "coeffs": coeffs, "prec": x.prec}


def laurent_from_obj(F: Fq, obj) -> Laurent:
    return Laurent(F, int(obj["top"]), obj["coeffs"], obj["prec"])


def matrix_to_obj(A: LaurentMatrix):
    return [[laurent_to_obj(x) for x in row] for row in A.rows]


def matrix_from_obj(F: Fq, obj) -> LaurentMatrix:
    return LaurentMatrix([[laurent_from_obj(F, x) for x in row] for row in obj])


def vector_to_obj(v: LaurentVec):
    return [laurent_to_obj(x) for x in v]


def vector_from_obj(F: Fq, obj) -> LaurentVec:
    return LaurentVec([laurent_from_obj(F, x) for x in obj])


# -- CF sources ------------------------------------------------------------------


def _seeded_quotient(F: Fq, seed: int, k: int, deg: int) -> Poly:
    """Quotient of exact degree ``deg`` whose digits depend only on
    (seed, k), not on evaluation order."""
    import random

    rng = random.Random(seed * 1000003 + k)
    coeffs = [rng.randrange(F.q) for _ in range(deg)] + [rng.randrange(1, F.q)]
    return Poly(F, coeffs)


_ALLOWED_FUNC = re.compile(r"[0-9k+\-*() ]+")


def _deg_func(expr: str):
    if not _ALLOWED_FUNC.fullmatch(expr):
        raise ValueError(f"bad degree expression {expr!r}")
    code = compile(expr, "<deg-spec>", "eval")
    return lambda k: max(1, int(eval(code, {"__builtins__": {}}, {"k": k})))


def parse_cf_source(F: Fq, s: str, seed: int = 0) -> CFExpansion:
    """Parse ``rational:NUM/DEN``, ``pqspec:...``, or ``series:{json}``.

    PQ specs come in three generator forms: an explicit comma list of
    polynomial expressions (a complete, exactly-rational expansion), the
    constant form ``all:<poly>``, and ``deg:<f(k)>`` whose k-th quotient has
    degree f(k) with coefficients drawn deterministically from the seed.
    """
    kind, _, rest = s.partition(":")
    if kind == "rational":
        num_s, _, den_s = rest.partition("/")
        num = _poly_any(F, num_s)
        den = _poly_any(F, den_s)
        return CFExpansion.from_rational(num, den)
    if kind == "pqspec":
        sub, _, tail = rest.partition(":")
        if sub == "all":
            return CFExpansion.from_pqspec(F, PQSpec.constant(_poly_any(F, tail)))
        if sub == "deg":
            f = _deg_func(tail)
            return CFExpansion.from_pqspec(
                F,
                PQSpec.from_func(lambda k: _seeded_quotient(F, seed, k, f(k))),
            )
        polys = [_poly_any(F, tok) for tok in rest.split(",")]
        return CFExpansion.from_pqspec(F, PQSpec.from_list(polys))
    if kind == "series":
        return CFExpansion.from_series(laurent_from_obj(F, json.loads(rest)))
    raise ValueError(f"unknown cf source kind {kind!r}")


def _poly_any(F: Fq, s: str) -> Poly:
    s = s.strip()
    if s.startswith("["):
        return poly_from_obj(F, json.loads(s))
    return poly_from_expr(F, s)


def parse_eps(s: str) -> tuple[int, int]:
    """Parse ``q^-a`` or ``q^-a/b`` into the exponent pair (a, b)."""
    m = re.fullmatch(r"q\^-(\d+)(?:/(\d+))?", s.strip())
    if not m:
        raise ValueError(f"bad epsilon {s!r}; expected q^-a or q^-a/b")
    return int(m.group(1)), int(m.group(2) or 1)


def parse_fraction(s: str) -> Fraction:
    return Fraction(s)
