"""Constructions pinning the uniform inhomogeneous exponent.

Given a growth target omega (a rational >= 1, or infinite) the builder picks
a continued fraction xi whose denominator degrees n_k satisfy the two-sided
window ``||Q_n||^omega_n <= ||Q_{n+1}|| < q ||Q_n||^omega_n`` (omega_n is the
constant omega, or n in the infinite branch), all partial quotients being
pure powers of z.  For a target nu it then forms

    theta = sum_k u_k (Q_k xi - P_k),   u_k = z^e_k,

with e_k in the window ``||Q_k||^((omega_k - nu)/(nu + 1)) <= ||u_k|| <
q ||.||``.  The two-sided verifications (upper: the partial sums V_n
approximate theta at rate nu; lower: nothing below ||V_n|| does better than
q^-2 ||V_n||^-nu) then witness the uniform exponent of (xi, theta) being
exactly nu at finite scale.

All window and inequality checks are exact Fraction comparisons of
q-exponents; series coefficients enter only the brute-force lower check.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from . import kernel
from .contfrac import CFExpansion, PQSpec
from .errors import BudgetExceeded
from .fields import Fq
from .kernel import INDET, SKIP
from .laurent import Laurent
from .poly import Poly
from .vectors import LaurentMatrix, LaurentVec

INF = "inf"  # sentinel for omega (and for nu in the u_n = 1 branch)

MAX_LEVEL_DEGREE = 1024  # hard cap on built n_K
MAX_INTERNAL_DEGREE = 8192  # regeneration may look a little past the build


@dataclass(frozen=True)
class GrowthSpec:
    """Target pair (omega, nu) and the coefficient field."""

    omega: Fraction | str
    nu: Fraction | str
    field: Fq = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.omega is INF or self.omega == INF:
            if self.nu != INF and Fraction(self.nu) <= 0:
                raise ValueError(
                    "nu must be positive (or the u_n = 1 sentinel) when "
                    "omega is infinite: nu = 0 terms do not decay"
                )
            return
        om = Fraction(self.omega)
        if om < 1:
            raise ValueError("omega must be >= 1")
        if self.nu == INF:
            raise ValueError("nu = infinity requires omega = infinity")
        nu = Fraction(self.nu)
        if not (1 / om <= nu <= om):
            raise ValueError(f"nu must lie in [1/omega, omega] = [{1/om}, {om}]")

    def omega_at(self, k: int) -> Fraction:
        """omega_k: the constant for finite omega, k in the infinite branch."""
        return Fraction(k) if self.omega == INF else Fraction(self.omega)


@dataclass
class WindowFlag:
    index: int
    lower_ok: bool
    upper_ok: bool
    waived: bool  # upper window unsatisfiable with integer degrees >= +1 steps


class XiBuild:
    """The continued fraction of xi: A_k = z^(n_k - n_{k-1}), generated on
    demand so precision regeneration can look past the requested depth."""

    def __init__(self, spec: GrowthSpec, K: int):
        self.spec = spec
        self.K = K
        self.n: list[int] = [0, 1]  # n_0 = 0, n_1 = 1
        self.window_flags: list[WindowFlag] = []
        self._ensure(K)
        if self.n[K] > MAX_LEVEL_DEGREE:
            raise BudgetExceeded(
                f"deg Q_{K} = {self.n[K]} exceeds the build cap {MAX_LEVEL_DEGREE}"
            )
        self.cf = CFExpansion.from_pqspec(
            spec.field, PQSpec.from_func(self._quotient)
        )

    def _ensure(self, k: int):
        while len(self.n) <= k:
            i = len(self.n) - 1  # extending to n_{i+1}
            om = self.spec.omega_at(i)
            target = om * self.n[i]
            nxt = max(-(-target.numerator // target.denominator), self.n[i] + 1)
            if nxt > MAX_INTERNAL_DEGREE:
                raise BudgetExceeded(
                    f"deg Q_{i + 1} = {nxt} exceeds the internal cap"
                )
            lower_ok = Fraction(nxt) >= target
            upper_ok = Fraction(nxt) < target + 1
            self.window_flags.append(
                WindowFlag(i + 1, lower_ok, upper_ok, waived=not upper_ok)
            )
            self.n.append(nxt)

    def _quotient(self, k: int) -> Poly:
        self._ensure(k)
        return Poly.z_pow(self.spec.field, self.n[k] - self.n[k - 1])

    def deg_Q(self, k: int) -> int:
        self._ensure(k)
        return self.n[k]

    def value(self, prec: int) -> Laurent:
        return self.cf.alpha(prec)


def build_xi(spec: GrowthSpec, K: int) -> XiBuild:
    """Growth-window continued fraction with K built levels.

    The strict upper window fails only where no integer degree >= previous+1
    can satisfy it (omega = 1, and early infinite-branch levels); those
    indices are flagged ``waived`` rather than silently accepted.
    """
    return XiBuild(spec, K)


class ThetaBuild:
    """theta = sum u_k (Q_k xi - P_k) with u_k = z^e_k per the nu-window."""

    def __init__(self, xi: XiBuild, nu: Fraction | str, K: int):
        self.xi = xi
        self.nu = nu if nu == INF else Fraction(nu)
        self.K = K
        self.field = xi.spec.field
        self.e: list[int] = [0]
        self.u_window_flags: list[WindowFlag] = []
        self._ensure_e(K + 2)
        # the u-window binds only n >= 1; u_0 is free and is chosen of
        # minimal degree such that deg(u_0 D_0) > deg(u_1 D_1) (no leading
        # cancellation in theta) while deg(u_0 Q_0) < deg(u_1 Q_1)
        degA2 = self.xi.deg_Q(2) - self.xi.deg_Q(1)
        self.e[0] = max(0, self.e[1] - degA2 + 1)
        if not self.e[0] < self.e[1] + self.xi.deg_Q(1):
            raise BudgetExceeded("no admissible u_0 exists for this spec")
        # ultrametric bookkeeping behind the norm identities:
        # deg(u_k Q_k) strictly increasing makes ||V_n|| = ||u_n Q_n||;
        # deg(u_k D_k) strictly decreasing makes the theta tail norms clean
        for k in range(1, K + 2):
            a0 = self.e[k - 1] + self.xi.deg_Q(k - 1)
            a1 = self.e[k] + self.xi.deg_Q(k)
            if a1 <= a0:
                raise BudgetExceeded(
                    f"degenerate spec: deg u_k Q_k not increasing at k = {k}"
                )
            b0 = self.e[k - 1] - self.xi.deg_Q(k)
            b1 = self.e[k] - self.xi.deg_Q(k + 1)
            if b1 >= b0:
                raise BudgetExceeded(
                    f"degenerate spec: deg u_k D_k not decreasing at k = {k}"
                )

    def _ensure_e(self, k_hi: int):
        while len(self.e) <= k_hi:
            k = len(self.e)
            if self.nu == INF:
                self.e.append(0)  # u_n = 1 branch
                continue
            om = self.xi.spec.omega_at(k)
            target = self.xi.deg_Q(k) * (om - self.nu) / (self.nu + 1)
            ek = max(0, -(-target.numerator // target.denominator))
            lower_ok = Fraction(ek) >= target
            upper_ok = Fraction(ek) < target + 1
            self.u_window_flags.append(
                WindowFlag(k, lower_ok, upper_ok, waived=not (lower_ok and upper_ok))
            )
            self.e.append(ek)

    # -- exact polynomial partial sums ---------------------------------------
    def u(self, k: int) -> Poly:
        self._ensure_e(k)
        return Poly.z_pow(self.field, self.e[k])

    def V(self, n: int) -> Poly:
        acc = Poly.zero(self.field)
        for k in range(n + 1):
            acc = acc + self.u(k) * self.xi.cf.Q(k)
        return acc

    def W(self, n: int) -> Poly:
        acc = Poly.zero(self.field)
        for k in range(n + 1):
            acc = acc + self.u(k) * self.xi.cf.P(k)
        return acc

    def deg_V(self, n: int) -> int:
        self._ensure_e(n)
        return self.e[n] + self.xi.deg_Q(n)

    # -- series ------------------------------------------------------------------
    def theta(self, prec: int) -> Laurent:
        """theta through z^-prec: terms with deg(u_k D_k) >= -prec summed."""
        acc = None
        k = 0
        while True:
            self._ensure_e(k + 1)
            t_exp = self.e[k] - self.xi.deg_Q(k + 1)
            if t_exp < -prec:
                break
            tail = prec + self.e[k] - self.xi.deg_Q(k + 1) + 1
            term = self.xi.cf.d(k, tail=max(tail, 1)).shift(self.e[k])
            acc = term if acc is None else acc + term
            k += 1
        if acc is None:
            return Laurent.zero_to_prec(self.field, prec)
        return acc.truncate(prec)

    def check_norm_identities(self, n_max: int, deg_cap: int = 64) -> bool:
        """Spot-check ||V_n|| = ||u_n|| ||Q_n|| and the theta-tail norm
        ||V_n xi - W_n - theta|| = ||u_{n+1}|| / ||Q_{n+2}|| on actual series,
        for the levels whose polynomial degrees stay under ``deg_cap``."""
        for n in range(n_max + 1):
            if self.deg_V(n) > deg_cap:
                break
            V, W = self.V(n), self.W(n)
            if (V.deg if not V.is_zero() else None) != self.deg_V(n):
                return False
            want = self.e[n + 1] - self.xi.deg_Q(n + 2)
            prec = -want + 4
            resid = (
                self.xi.value(prec + self.deg_V(n)).mul_poly(V)
                - Laurent.from_poly(W)
                - self.theta(prec + self.deg_V(n))
            )
            if not resid.coeffs or resid.off != want:
                return False
        return True


def build_theta(xi: XiBuild, nu: Fraction | str, K: int) -> ThetaBuild:
    """Assemble the theta machine on top of a built xi (needs >= K+2 levels)."""
    return ThetaBuild(xi, nu, K)


# -- verifications ------------------------------------------------------------------


@dataclass
class UpperReport:
    """Exponent audit of the upper (approximability) chain at level n."""

    n: int
    lhs_exp: int  # deg of ||V_n xi - W_n - theta||
    mid_exp: Fraction | None  # 1 - n_{n+1} nu (omega_{n+1} + 1)/(nu + 1)
    rhs_exp: Fraction | None  # 1 + nu - nu deg V_{n+1}
    witness_ratio: Fraction | None  # infinite branch: -lhs / deg V_{n+1}
    passed: bool


def verify_upper(tb: ThetaBuild, n: int) -> UpperReport:
    """Check ||V_n xi - W_n - theta|| < q ||Q_{n+1}||^(-nu(omega_{n+1}+1)/(nu+1))
    <= q^(1+nu) ||V_{n+1}||^(-nu), purely in exponent arithmetic.

    In the u_n = 1 (infinite nu) branch the check asserts instead that the
    witness ratio -lhs/deg V_{n+1} reaches omega_{n+1}, growing without
    bound across levels.
    """
    tb._ensure_e(n + 2)
    lhs = tb.e[n + 1] - tb.xi.deg_Q(n + 2)
    if tb.nu == INF:
        ratio = Fraction(-lhs, tb.deg_V(n + 1))
        om = tb.xi.spec.omega_at(n + 1)
        return UpperReport(n, lhs, None, None, ratio, ratio >= om)
    nu = tb.nu
    om = tb.xi.spec.omega_at(n + 1)
    mid = 1 - tb.xi.deg_Q(n + 1) * nu * (om + 1) / (nu + 1)
    rhs = 1 + nu - nu * tb.deg_V(n + 1)
    ok = Fraction(lhs) < mid and mid <= rhs
    return UpperReport(n, lhs, mid, rhs, None, ok)


@dataclass
class LowerReport:
    """Brute-force floor at level n: nothing below ||V_n|| beats the bound."""

    n: int
    bound_exp: Fraction | None  # -2 - nu deg V_n
    min_exp: int | None  # None when no candidates (deg V_n = 0)
    candidates: int
    passed: bool


def verify_lower(
    tb: ThetaBuild, n: int, *, max_deg: int = 14, backend: str | None = None
) -> LowerReport:
    """Exhaustive check of ||x xi - y - theta|| >= q^-2 ||V_n||^-nu over all
    x with ||x|| <= q^-1 ||V_n|| (y absorbed by the bracket distance)."""
    dV = tb.deg_V(n)
    dmax = dV - 1
    if dmax > max_deg:
        raise BudgetExceeded(f"deg V_n - 1 = {dmax} exceeds the budget {max_deg}")
    if tb.nu == INF:
        bound: Fraction | None = None
        L = dV + 8
    else:
        bound = -2 - tb.nu * dV
        L = int(-bound) + 3
    prec = L + max(dmax, 0) + 1
    A = LaurentMatrix([[tb.xi.value(prec)]])
    th = LaurentVec([tb.theta(prec)])
    if dmax < 0:
        return LowerReport(n, bound, None, 0, True)
    res = kernel.scan(A, th, dmax, min_L=L, backend=backend)
    worst: int | None = None
    for idx in range(len(res.codes)):
        code = int(res.codes[idx])
        if code == SKIP:
            continue
        if code == INDET:
            # value <= q^-(L+1), strictly below any finite-nu bound: fail
            worst = -(res.L + 1)
            break
        if worst is None or code < worst:
            worst = code
    if tb.nu == INF:
        passed = worst is not None and worst > -(res.L + 1)
    else:
        passed = worst is not None and Fraction(worst) >= bound
    return LowerReport(n, bound, worst, len(res.codes), passed)
