"""Enumeration-scan kernel with compiled and pure-Python backends.

Every exhaustive search in the library (Dirichlet solving, best
approximations, transference, bad-set statistics) reduces to the same inner
loop: walk all polynomial vectors x with deg x_j <= d in a canonical order
and read off the exponent of ``|<A x - theta>|`` from truncated coefficient
tables.  The compiled Cython kernel is used when available; the numpy
fallback is selected otherwise (or when ``FFDIOPH_PURE=1``).
"""

from __future__ import annotations

import os

import numpy as np

from ..errors import BudgetExceeded, PrecisionExceeded
from ..laurent import Laurent
from ..poly import Poly
from ..vectors import LaurentMatrix, LaurentVec, PolyVec
from . import _scan_py
from ._scan_py import INDET, SKIP

try:  # compiled twin, built by setup.py when Cython + a C compiler exist
    from . import _scan_cy  # type: ignore[attr-defined]

    HAVE_COMPILED = True
except ImportError:  # pragma: no cover - depends on build environment
    _scan_cy = None
    HAVE_COMPILED = False

_FORCED_PURE = os.environ.get("FFDIOPH_PURE", "") not in ("", "0")
DEFAULT_BACKEND = "compiled" if (HAVE_COMPILED and not _FORCED_PURE) else "python"

MAX_CANDIDATES = 1 << 22  # desk-scale budget for one scan


def available_backends() -> list[str]:
    out = ["python"]
    if HAVE_COMPILED:
        out.insert(0, "compiled")
    return out


def _impl(backend: str | None):
    name = backend or DEFAULT_BACKEND
    if name == "compiled":
        if not HAVE_COMPILED:
            raise RuntimeError("compiled kernel is not available")
        return _scan_cy.scan_exponents
    if name == "python":
        return _scan_py.scan_exponents
    raise ValueError(f"unknown backend {name!r}")


class ScanResult:
    """Exponent codes for all candidates of one scan, plus decoding helpers.

    ``codes[i]`` is the exponent of ``|<A x_i - theta>|`` for the i-th
    candidate in canonical order, ``INDET`` when the value vanishes through
    the working precision (exactly zero iff ``all_exact``), or ``SKIP`` for
    candidates excluded by the exact-degree filter.
    """

    def __init__(self, codes, field, m, dmax, L, all_exact):
        self.codes = codes
        self.field = field
        self.m = m
        self.dmax = dmax
        self.L = L
        self.all_exact = all_exact

    def __len__(self):
        return len(self.codes)

    def poly_vec_at(self, idx: int) -> PolyVec:
        """Decode candidate index -> polynomial vector."""
        q = self.field.q
        width = self.dmax + 1
        R = self.m * width
        digits = []
        for r in range(R - 1, -1, -1):
            digits.append(idx % q)
            idx //= q
        digits.reverse()
        polys = []
        for j in range(self.m):
            polys.append(Poly(self.field, digits[j * width : (j + 1) * width]))
        return PolyVec(polys)

    def is_exact_zero(self, i: int) -> bool:
        return self.codes[i] == INDET and self.all_exact

    def exponent_at(self, i: int) -> int | None:
        """Exponent at candidate i; None means exactly zero.

        Raises PrecisionExceeded for indeterminate vanishing values.
        """
        c = int(self.codes[i])
        if c == SKIP:
            raise ValueError("candidate was excluded by the degree filter")
        if c == INDET:
            if self.all_exact:
                return None
            raise PrecisionExceeded(
                f"value vanishes through working precision {self.L}"
            )
        return c


def scan(
    A: LaurentMatrix,
    theta: LaurentVec | None,
    dmax: int,
    *,
    min_L: int = 1,
    L: int | None = None,
    exact_degree: bool = False,
    backend: str | None = None,
) -> ScanResult:
    """Scan all x in F_q[z]^m with deg x_j <= dmax against ``|<A x - theta>|``.

    ``min_L``: the fractional depth the caller needs certified; the scan
    refuses when the entries cannot support it.  ``L`` may pin the working
    depth explicitly (tests use this to cross-check backends).
    """
    F = A.field
    n, m = A.n, A.m
    q = F.q
    R = m * (dmax + 1)
    if q**R > MAX_CANDIDATES:
        raise BudgetExceeded(
            f"scan of q^{R} = {q**R} candidates exceeds the kernel budget"
        )
    entries = [a for row in A.rows for a in row]
    th = list(theta) if theta is not None else []
    usable = None  # depth supported by inexact inputs
    for a in entries:
        if a.prec is not None:
            d = a.prec - dmax
            usable = d if usable is None else min(usable, d)
    for t in th:
        if t.prec is not None:
            usable = t.prec if usable is None else min(usable, t.prec)
    all_exact = usable is None
    extent = 1
    if all_exact:
        # depth at which every exact input has run out of coefficients, so a
        # scan through it distinguishes true zeros from truncation artifacts
        for x in entries:
            if x.coeffs:
                extent = max(extent, -(x.off - len(x.coeffs) + 1) + dmax)
        for t in th:
            if t.coeffs:
                extent = max(extent, -(t.off - len(t.coeffs) + 1))
        resolved = max(extent, min_L)
    else:
        resolved = usable
    if resolved < min_L:
        raise PrecisionExceeded(
            f"scan needs fractional depth {min_L} but entries support {resolved}"
        )
    if L is not None:
        if L > resolved:
            raise PrecisionExceeded(
                f"requested depth {L} exceeds supported depth {resolved}"
            )
        if all_exact and L < extent:
            all_exact = False
        resolved = L
    Lw = resolved

    width = dmax + 1
    basis = np.zeros((R, n * Lw), dtype=np.uint8)
    for j in range(m):
        for t in range(width):
            row = basis[j * width + t]
            for i in range(n):
                a = A.rows[i][j]
                for v in range(Lw):
                    row[i * Lw + v] = a.coeff_at(-(v + 1 + t))
    target = np.zeros(n * Lw, dtype=np.uint8)
    if theta is not None:
        for i, t in enumerate(th):
            neg = -t
            for v in range(Lw):
                target[i * Lw + v] = neg.coeff_at(-(v + 1))

    impl = _impl(backend)
    codes = impl(
        F.add_table,
        F.mul_table,
        F.p,
        F.e,
        basis,
        target,
        m,
        dmax,
        n,
        Lw,
        exact_degree,
    )
    return ScanResult(codes, F, m, dmax, Lw, all_exact)


def shell_scan(A, theta, d, **kw) -> ScanResult:
    """Scan the norm shell ||x|| = q^d (exact max-degree d)."""
    return scan(A, theta, d, exact_degree=True, **kw)


def usable_depth(A: LaurentMatrix, theta: LaurentVec | None, dmax: int) -> int | None:
    """Largest working depth the inexact inputs support (None if all exact)."""
    out: int | None = None
    for row in A.rows:
        for a in row:
            if a.prec is not None:
                d = a.prec - dmax
                out = d if out is None else min(out, d)
    if theta is not None:
        for t in theta:
            if t.prec is not None:
                out = t.prec if out is None else min(out, t.prec)
    return out
