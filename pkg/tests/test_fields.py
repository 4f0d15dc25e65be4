import pytest
from hypothesis import given, strategies as st

from trivspec import unipoly
from trivspec.errors import InputError
from trivspec.fields import PrimeField, RationalField, RationalFunctionField, field_from_json


def field_axioms(F, elems):
    for a in elems:
        assert F.eq(F.add(a, F.zero), a)
        assert F.eq(F.mul(a, F.one), a)
        assert F.eq(F.add(a, F.neg(a)), F.zero)
        if not F.is_zero(a):
            assert F.eq(F.mul(a, F.inv(a)), F.one)
    for a in elems:
        for b in elems:
            assert F.eq(F.add(a, b), F.add(b, a))
            assert F.eq(F.mul(a, b), F.mul(b, a))


def test_prime_field_axioms():
    F = PrimeField(7)
    field_axioms(F, list(F.elements()))


def test_prime_field_rejects_composites():
    with pytest.raises(InputError):
        PrimeField(6)


@given(st.fractions(), st.fractions())
def test_rationals_ring_ops(a, b):
    F = RationalField()
    assert F.add(a, b) == a + b
    assert F.mul(a, b) == a * b


def test_rational_function_field_basics():
    F = RationalFunctionField(2, "s")
    s = F.variable_element()
    one = F.one
    a = F.add(s, one)  # s + 1
    b = F.mul(a, a)  # s^2 + 1 = (s+1)^2 in char 2
    assert F.to_str(b) == "s^2+1"
    # (s^2+1)/(s+1) = s+1
    q = F.div(b, a)
    assert F.eq(q, a)
    inv = F.inv(a)
    assert F.eq(F.mul(inv, a), one)
    field_axioms(F, [F.zero, one, s, a, inv])


def test_rational_function_normalization():
    F = RationalFunctionField(5, "s")
    s = F.variable_element()
    # (2s + 2)/(4s + 4) = 3 (constant), with a monic reduced representation
    num = F.add(F.mul(F.from_int(2), s), F.from_int(2))
    den = F.add(F.mul(F.from_int(4), s), F.from_int(4))
    r = F.div(num, den)
    assert F.to_str(r) == "3"


@pytest.mark.parametrize(
    "ctx_maker,samples",
    [
        (lambda: PrimeField(5), ["0", "3", "4"]),
        (lambda: RationalField(), ["0", "-3/2", "7"]),
        (lambda: RationalFunctionField(3, "s"), ["0", "s^2+2*s+1", "(s+1)/(s^2+2)"]),
    ],
)
def test_string_round_trip(ctx_maker, samples):
    F = ctx_maker()
    for s in samples:
        a = F.from_str(s)
        assert F.eq(F.from_str(F.to_str(a)), a)


def test_field_json_round_trip():
    for F in (PrimeField(7), RationalField(), RationalFunctionField(2, "s")):
        assert field_from_json(F.describe()) == F


@given(st.lists(st.integers(0, 4), max_size=6), st.lists(st.integers(0, 4), min_size=1, max_size=4))
def test_poly_divmod_identity(a_coeffs, b_coeffs):
    F = PrimeField(5)
    a = unipoly.trim(a_coeffs, F)
    b = unipoly.trim(b_coeffs, F)
    if not b:
        return
    q, r = unipoly.divmod_poly(a, b, F)
    assert unipoly.add(unipoly.mul(q, b, F), r, F) == a
    assert unipoly.deg(r) < unipoly.deg(b)


def test_poly_gcd_and_squarefree():
    F = PrimeField(5)
    # (t+1)^2 (t+2) has gcd (t+1) with its derivative
    p = unipoly.mul(unipoly.mul((1, 1), (1, 1), F), (2, 1), F)
    assert not unipoly.is_squarefree(p, F)
    g = unipoly.gcd(p, unipoly.derivative(p, F), F)
    assert g == (1, 1)
    assert unipoly.is_squarefree((2, 1), F)
