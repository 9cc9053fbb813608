"""Field arithmetic for exact q-power scalars and rational coefficients."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcluster.scalarfield import Coeff, ScalarExp, coeff_div, scalar_pow

ROOT = 2

exponents = st.fractions(
    min_value=-4, max_value=4, max_denominator=ROOT
)


def laurent(pairs):
    return Coeff(ROOT, {k: Fraction(v) for k, v in pairs})


coeffs = st.builds(
    laurent,
    st.lists(
        st.tuples(st.integers(-4, 4), st.fractions(min_value=-3, max_value=3)),
        max_size=3,
    ),
)
nonzero_coeffs = coeffs.filter(lambda c: not c.is_zero)


def test_scalar_exp_basics():
    a = ScalarExp(Fraction(3, 2))
    b = ScalarExp(-1)
    assert (a * b).e == Fraction(1, 2)
    assert (a / b).e == Fraction(5, 2)
    assert a.inv() * a == ScalarExp(0)
    assert ScalarExp(0).is_identity
    assert not a.is_identity
    assert scalar_pow(a, 4) == ScalarExp(6)
    assert a ** -2 == ScalarExp(-3)


def test_scalar_exp_repr():
    assert repr(ScalarExp(0)) == "1"
    assert repr(ScalarExp(1)) == "q"
    assert repr(ScalarExp(Fraction(1, 2))) == "q^(1/2)"


@given(exponents, exponents)
def test_q_power_is_a_homomorphism(a, b):
    qa = Coeff.q_power(a, ROOT)
    qb = Coeff.q_power(b, ROOT)
    assert qa * qb == Coeff.q_power(a + b, ROOT)
    assert qa.as_scalar_exp() == ScalarExp(a)


def test_q_power_rejects_bad_denominator():
    with pytest.raises(ValueError):
        Coeff.q_power(Fraction(1, 3), ROOT)


def test_coeff_constructors():
    one = Coeff.one(ROOT)
    assert one.is_one and not one.is_zero
    assert Coeff.zero(ROOT).is_zero
    assert Coeff.from_fraction(Fraction(2, 3), ROOT) * 3 == 2
    # normalization: (2u)/(2) reduces to u
    assert Coeff(ROOT, {1: 2}, {0: 2}) == Coeff(ROOT, {1: 1})


@given(coeffs, coeffs, coeffs)
@settings(max_examples=60)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Coeff.zero(ROOT)
    assert a * Coeff.one(ROOT) == a


@given(nonzero_coeffs, nonzero_coeffs)
@settings(max_examples=60)
def test_exact_division(a, b):
    assert coeff_div(a, b) * b == a
    assert (a / b) * b == a
    assert b.inv() * b == Coeff.one(ROOT)


@given(nonzero_coeffs, st.integers(-3, 3))
@settings(max_examples=40)
def test_integer_powers(a, m):
    prod = Coeff.one(ROOT)
    base = a if m >= 0 else a.inv()
    for _ in range(abs(m)):
        prod = prod * base
    assert a ** m == prod


def test_denominators_normalize():
    # (q^2 - 1)/(q - 1) = q + 1, all through u = q^(1/2)
    num = Coeff(ROOT, {4: 1, 0: -1})
    den = Coeff(ROOT, {2: 1, 0: -1})
    q = Coeff.q_power(1, ROOT)
    assert num / den == q + 1
    assert (num / den).is_laurent


def test_repr_is_stable():
    q = Coeff.q_power(1, ROOT)
    assert repr(q) == "q"
    assert repr(q ** 2 - 1) == "q^2 - 1"
    assert repr(-q + q.inv()) == "-q + q^-1"
    assert repr(Coeff.q_power(Fraction(1, 2), ROOT)) == "q^(1/2)"
    assert repr(Coeff.zero(ROOT)) == "0"


def test_monomial_predicates():
    q = Coeff.q_power(1, ROOT)
    assert q.is_monomial
    assert not (q + 1).is_monomial
    with pytest.raises(ValueError):
        (q + 1).as_scalar_exp()


def test_mixed_roots_rejected():
    with pytest.raises(ValueError):
        Coeff.one(2) + Coeff.one(4)
