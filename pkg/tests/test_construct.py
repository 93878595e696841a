"""Growth-window builders and the two-sided exponent verifications.

The window-check oracle is direct Fraction arithmetic in the tests,
independent of the builders' own assertions.
"""

from fractions import Fraction

import pytest

from ffdioph import GF
from ffdioph.construct import (
    INF,
    GrowthSpec,
    ThetaBuild,
    build_theta,
    build_xi,
    verify_lower,
    verify_upper,
)
from ffdioph.errors import BudgetExceeded

F2 = GF(2)


def spec(om, nu):
    return GrowthSpec(om, nu, F2)


def test_growth_spec_validation():
    with pytest.raises(ValueError):
        GrowthSpec(Fraction(1, 2), Fraction(1), F2)  # omega < 1
    with pytest.raises(ValueError):
        GrowthSpec(Fraction(2), Fraction(3), F2)  # nu > omega
    with pytest.raises(ValueError):
        GrowthSpec(Fraction(2), Fraction(1, 3), F2)  # nu < 1/omega
    with pytest.raises(ValueError):
        GrowthSpec(INF, Fraction(0), F2)  # non-decaying terms
    GrowthSpec(INF, Fraction(3), F2)
    GrowthSpec(INF, INF, F2)
    GrowthSpec(Fraction(2), Fraction(1, 2), F2)


def test_build_xi_doubling():
    xb = build_xi(spec(2, 1), 5)
    assert xb.n[1:6] == [1, 2, 4, 8, 16]
    assert [xb.cf.A(k).deg for k in range(1, 6)] == [1, 1, 2, 4, 8]
    # window oracle: q^(2 n_k) <= q^(n_{k+1}) < q^(2 n_k + 1)
    for k in range(1, 5):
        assert 2 * xb.n[k] <= xb.n[k + 1] < 2 * xb.n[k] + 1


def test_build_xi_omega_one_bounded_quotients():
    xb = build_xi(spec(1, 1), 8)
    assert all(xb.cf.A(k).deg == 1 for k in range(1, 9))
    # the strict upper window is unsatisfiable here; flags record the waiver
    assert all(f.waived for f in xb.window_flags)
    assert all(f.lower_ok for f in xb.window_flags)


def test_build_xi_infinite_branch():
    xb = build_xi(spec(INF, 1), 6)
    # n_{k+1} = max(k n_k, n_k + 1)
    n = xb.n
    for k in range(1, 6):
        assert n[k + 1] == max(k * n[k], n[k] + 1)


def test_build_xi_budget():
    with pytest.raises(BudgetExceeded):
        build_xi(spec(2, 1), 12)  # n_12 = 2048 > 1024


def test_build_theta_exponents_omega2_nu1():
    xb = build_xi(spec(2, 1), 6)
    tb = build_theta(xb, Fraction(1), 5)
    # deg u_n = ceil(n_n / 2) = 1, 1, 2, 4, 8
    assert tb.e[1:6] == [1, 1, 2, 4, 8]
    assert [tb.deg_V(k) for k in range(1, 6)] == [2, 3, 6, 12, 24]
    # u-window oracle
    for k in range(1, 6):
        t = Fraction(xb.n[k], 2)
        assert t <= tb.e[k] < t + 1
    # V-window (paper chain): n_n (omega+1)/(nu+1) <= deg V_n < ... + 1
    for k in range(1, 6):
        t = Fraction(xb.n[k] * 3, 2)
        assert t <= tb.deg_V(k) < t + 1


def test_build_theta_u_equals_one_cases():
    xb = build_xi(spec(2, 2), 6)
    tb = build_theta(xb, Fraction(2), 5)  # nu = omega: window forces u_n = 1
    assert all(e == 0 for e in tb.e[1:6])
    xb2 = build_xi(spec(INF, INF), 5)
    tb2 = build_theta(xb2, INF, 4)  # paper's u_n = 1 branch
    assert all(e == 0 for e in tb2.e)


def test_norm_identities_on_series():
    for om, nu in [(Fraction(2), Fraction(1)), (Fraction(2), Fraction(2)),
                   (Fraction(2), Fraction(1, 2))]:
        xb = build_xi(spec(om, nu), 8)
        tb = build_theta(xb, nu, 6)
        assert tb.check_norm_identities(4)


def test_verify_upper_passes():
    xb = build_xi(spec(2, 1), 8)
    tb = build_theta(xb, Fraction(1), 6)
    for n in range(0, 5):
        rep = verify_upper(tb, n)
        assert rep.passed, rep
        # oracle recomputation of the three exponents
        assert rep.lhs_exp == tb.e[n + 1] - xb.n[n + 2]
        assert rep.mid_exp == 1 - Fraction(xb.n[n + 1] * 3, 2)
        assert rep.rhs_exp == 2 - tb.deg_V(n + 1)


def test_verify_upper_infinite_branch():
    xb = build_xi(spec(INF, INF), 6)
    tb = build_theta(xb, INF, 5)
    ratios = []
    for n in range(0, 4):
        rep = verify_upper(tb, n)
        assert rep.passed
        ratios.append(rep.witness_ratio)
    # unbounded witness: nondecreasing, strictly growing past the early
    # levels where the deg >= 1 floor bumps the recursion
    assert all(b >= a for a, b in zip(ratios, ratios[1:]))
    assert ratios[-1] > ratios[1]


def test_verify_lower_small_levels():
    xb = build_xi(spec(2, 1), 8)
    tb = build_theta(xb, Fraction(1), 6)
    for n in (1, 2):
        rep = verify_lower(tb, n)
        assert rep.passed, rep
        assert rep.bound_exp == -2 - tb.deg_V(n)


def test_verify_lower_budget_guard():
    xb = build_xi(spec(2, 1), 8)
    tb = build_theta(xb, Fraction(1), 6)
    with pytest.raises(BudgetExceeded):
        verify_lower(tb, 5)  # deg V_5 = 24


def test_verify_lower_explicit_v_candidate():
    # x = V_{n-1} realizes a near-optimal distance, consistent with the bound
    xb = build_xi(spec(2, 1), 8)
    tb = build_theta(xb, Fraction(1), 6)
    n = 2
    from ffdioph.vectors import LaurentMatrix, LaurentVec

    prec = 30
    A = LaurentMatrix([[xb.value(prec)]])
    th = LaurentVec([tb.theta(prec)])
    from ffdioph.vectors import PolyVec

    x = PolyVec([tb.V(n - 1)])
    resid = (A.apply(x) - th).bracket_dist()
    # ||V_{n-1} xi - W_{n-1} - theta|| = ||u_n|| / ||Q_{n+1}||
    assert resid.exp == tb.e[n] - xb.n[n + 1]
    bound = -2 - Fraction(tb.deg_V(n))
    assert Fraction(resid.exp) >= bound
