"""Field-level invariants: axioms hold exhaustively at desk scale."""

import pytest

from ffdioph import GF, FieldSpec, default_modulus
from ffdioph.errors import DivideByZero


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
def test_field_axioms_exhaustive(q):
    F = GF(q)
    els = range(F.q)
    for a in els:
        assert F.add(a, 0) == a
        assert F.mul(a, 1) == a
        assert F.mul(a, 0) == 0
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1
        for b in els:
            assert F.add(a, b) == F.add(b, a)
            assert F.mul(a, b) == F.mul(b, a)
            for c in els:
                assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
                assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
                assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))


def test_every_nonzero_element_invertible():
    for q in (2, 3, 4, 5, 7, 8, 9):
        F = GF(q)
        inverses = {F.inv(a) for a in range(1, F.q)}
        assert inverses == set(range(1, F.q))


def test_inverse_of_zero_rejected():
    F = GF(3)
    with pytest.raises(DivideByZero):
        F.inv(0)


def test_prime_validation():
    with pytest.raises(ValueError):
        FieldSpec(4)
    with pytest.raises(ValueError):
        FieldSpec(1)
    FieldSpec(13)


def test_modulus_validation():
    # x^2 + 1 is reducible over F_2 ((x+1)^2), irreducible needs x^2 + x + 1
    with pytest.raises(ValueError):
        FieldSpec(2, 2, (1, 0, 1))
    FieldSpec(2, 2, (1, 1, 1))
    with pytest.raises(ValueError):
        FieldSpec(3, 2, (0, 0, 1))  # x^2 has root 0


def test_default_modulus_is_irreducible():
    assert default_modulus(2, 2) == (1, 1, 1)
    m = default_modulus(3, 2)
    spec = FieldSpec(3, 2, m)
    assert spec.q == 9


def test_elem_digits_roundtrip():
    F = GF(8)
    for i in range(8):
        e = F.elem(i)
        assert F.elem(list(e.digits)) == e


def test_subfield_embedding_consistency():
    # F_4 contains F_2: indices 0,1 behave like GF(2)
    F = GF(4)
    assert F.add(1, 1) == 0
    assert F.mul(1, 1) == 1
