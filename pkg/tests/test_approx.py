"""Dirichlet, best approximations, exponent witnesses, bridge inequality.

The independent oracle here is brute force over polynomial tuples evaluated
with direct Laurent arithmetic (vectors.py), a different path from the scan
kernel the module uses.
"""

import random
from fractions import Fraction
from itertools import product

import pytest

from ffdioph import GF, Laurent, LaurentMatrix, LaurentVec, Poly, PolyVec
from ffdioph.approx import (
    INFINITE,
    best_approx_seq,
    bridge_inequality_check,
    check_best_approx_props,
    dirichlet_solve,
    eval_M,
    exponent_estimates,
)
from ffdioph.contfrac import CFExpansion, PQSpec
from ffdioph.norms import NormExp
from ffdioph.poly import all_polys

F2 = GF(2)
F3 = GF(3)


def all_z_matrix(field=F2, prec=40):
    cf = CFExpansion.from_pqspec(field, PQSpec.constant(Poly(field, [0, 1])))
    return LaurentMatrix([[cf.alpha(prec)]]), cf


def rand_matrix(field, rng, n, m, prec=40):
    return LaurentMatrix(
        [
            [
                Laurent.from_terms(
                    field, {-i: rng.randrange(field.q) for i in range(1, prec + 1)}, prec
                )
                for _ in range(m)
            ]
            for _ in range(n)
        ]
    )


def brute_M(A, y):
    """Oracle: M(y) via direct arithmetic (no kernel)."""
    return eval_M(A, y)


# -- eval_M -----------------------------------------------------------------


def test_eval_M_convergent_values():
    A, cf = all_z_matrix()
    assert eval_M(A, PolyVec([cf.Q(2)])) == NormExp(-3)  # 1/||Q_3||
    assert eval_M(A, PolyVec([cf.Q(1)])) == NormExp(-2)
    assert eval_M(A, PolyVec([Poly.zero(F2)])) == NormExp.zero()


# -- dirichlet_solve -----------------------------------------------------------


def test_dirichlet_all_z_examples():
    A, cf = all_z_matrix()
    u2 = dirichlet_solve(A, 2)
    assert u2 == PolyVec([Poly(F2, [1, 0, 1])])  # z^2 + 1, |<alpha u>| = q^-3
    u1 = dirichlet_solve(A, 1)
    assert u1 == PolyVec([Poly(F2, [0, 1])])  # z, |<z alpha>| = q^-2


def test_dirichlet_degenerate_rational():
    # A = (1/z) exact: u = z gives A u = 1, bracket distance exactly 0
    A = LaurentMatrix([[Laurent.from_terms(F2, {-1: 1}, None)]])
    u = dirichlet_solve(A, 1)
    assert u == PolyVec([Poly(F2, [0, 1])])
    assert A.apply(u).bracket_dist() == NormExp.zero()


@pytest.mark.parametrize("shape", [(1, 1), (1, 2), (2, 1), (2, 2)])
@pytest.mark.parametrize("q", [2, 3])
def test_dirichlet_postconditions_random(shape, q):
    n, m = shape
    F = GF(q)
    rng = random.Random(q * 100 + n * 10 + m)
    for _ in range(10):
        A = rand_matrix(F, rng, n, m)
        for c in (1, 2):
            u = dirichlet_solve(A, c)
            assert not u.is_zero()
            assert u.norm() <= NormExp(c)
            val = A.apply(u).bracket_dist()
            # q^val < q^(-c m / n) by integer cross-multiplication
            assert val.is_zero() or val.exp * n < -c * m


# -- best_approx_seq --------------------------------------------------------------


def test_best_approx_all_z_matches_convergents():
    A, cf = all_z_matrix()
    seq = best_approx_seq(A, 5)
    assert seq.Y_exps == [0, 1, 2, 3, 4, 5]
    assert seq.M_exps == [-1, -2, -3, -4, -5, -6]
    for i, y in enumerate(seq.vectors):
        assert y == PolyVec([cf.Q(i)])


def brute_best_approx(A, Y_max):
    """Oracle: replay Definition 3.1 by exhaustive scan with direct
    arithmetic, including the canonical tie-break."""
    n = A.n
    F = A.field
    recs = []
    current = None
    for d in range(Y_max + 1):
        best = None
        best_y = None
        for combo in product(all_polys(F, d), repeat=n):
            y = PolyVec(combo)
            if y.is_zero():
                continue
            if max(p.deg for p in combo if not p.is_zero()) != d:
                continue
            Mv = eval_M(A, y)
            e = Mv.exp  # None = exact zero
            key = -(10**9) if e is None else e
            if best is None or key < best:
                best = key
                best_y = y
        if best is None:
            continue
        if current is None or best < current:
            recs.append((best_y, d, best))
            current = best
            if best == -(10**9):
                break
    return recs


@pytest.mark.parametrize("q", [2, 3])
@pytest.mark.parametrize("shape", [(1, 1), (1, 2), (2, 1)])
def test_best_approx_equals_exhaustive_oracle(q, shape):
    n, m = shape
    F = GF(q)
    rng = random.Random(q * 37 + n + m)
    Y_max = 3 if q == 3 and n == 2 else 4
    for _ in range(5):
        A = rand_matrix(F, rng, n, m, prec=30)
        seq = best_approx_seq(A, Y_max)
        oracle = brute_best_approx(A, Y_max)
        assert len(seq) == len(oracle)
        for (y, d, Mv), yy, dd, MM in zip(
            oracle, seq.vectors, seq.Y_exps, seq.M_exps
        ):
            assert y == yy and d == dd
            assert (MM is None and Mv == -(10**9)) or Mv == MM


def test_best_approx_base_case_minimality():
    rng = random.Random(8)
    A = rand_matrix(F3, rng, 2, 1, prec=30)
    seq = best_approx_seq(A, 2)
    assert seq.Y_exps[0] == 0
    M1 = seq.M_exps[0]
    for combo in product(all_polys(F3, 0), repeat=2):
        y = PolyVec(combo)
        if y.is_zero():
            continue
        assert eval_M(A, y) >= NormExp(M1)


def test_check_props_all_z():
    A, cf = all_z_matrix()
    seq = best_approx_seq(A, 5)
    rep = check_best_approx_props(seq)
    assert rep.monotone_Y_step
    assert not rep.literal_Y_geq_qi  # Y_i = q^(i-1), flagged not failed
    assert rep.main_inequality
    assert rep.sharpened_m1  # equality case M_i = Y_{i+1}^-1
    assert rep.ratio_Yi1[0] == Fraction(1, 1)


# -- exponent estimates --------------------------------------------------------------


def test_exponent_witness_all_z():
    A, cf = all_z_matrix()
    w = exponent_estimates(A, None, 5)
    assert w.rows == [(1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]
    assert w.omega_witness == Fraction(2)
    assert w.omega_hat_witness == Fraction(6, 5)
    assert w.ratios()[:3] == [Fraction(2), Fraction(3, 2), Fraction(4, 3)]


def test_exponent_witness_degenerate_polynomial_entry():
    A = LaurentMatrix([[Laurent.from_poly(Poly(F2, [1, 1]))]])
    w = exponent_estimates(A, None, 3)
    assert w.omega_witness == INFINITE and w.omega_hat_witness == INFINITE


def test_exponent_witness_inhomogeneous():
    A, cf = all_z_matrix(prec=60)
    rng = random.Random(3)
    th = LaurentVec(
        [Laurent.from_terms(F2, {-i: rng.randrange(2) for i in range(1, 31)}, 30)]
    )
    w = exponent_estimates(A, th, 4)
    # inhomogeneous minima include x = 0; all values positive heights
    assert all(e >= 1 for _, e in w.rows)
    assert w.omega_hat_witness <= w.omega_witness


# -- bridge inequality ----------------------------------------------------------------


def test_bridge_trivial_cases():
    A, cf = all_z_matrix()
    zero = PolyVec([Poly.zero(F2)])
    rep = bridge_inequality_check(A, zero, zero, None)
    assert rep.holds
    th = LaurentVec([cf.alpha(30)])
    rep2 = bridge_inequality_check(A, zero, PolyVec([cf.Q(3)]), None)
    assert rep2.holds  # |<y . 0>| = 0


def test_bridge_random_instances():
    A, cf = all_z_matrix(prec=60)
    rng = random.Random(44)
    for _ in range(100):
        x = PolyVec([Poly(F2, [rng.randrange(2) for _ in range(4)])])
        y = PolyVec([cf.Q(rng.randrange(4))])
        th = LaurentVec(
            [Laurent.from_terms(F2, {-i: rng.randrange(2) for i in range(1, 41)}, 40)]
        )
        rep = bridge_inequality_check(A, x, y, th)
        assert rep.holds
