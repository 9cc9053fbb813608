"""Exponent matrices and the multiplicative pairing they induce.

omega(E, f, g) is the exponent f^T E g; symmetrization(E, f) collects the
ordering factors q^(-sum_{j<k} E_jk f_j f_k) that turn an ordered monomial
into its symmetrized form.
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcluster.bicharacter import ExpMatrix, exp_mat_product, omega, symmetrization
from qcluster.scalarfield import ScalarExp

N = 4


@st.composite
def skew_matrices(draw, n=N):
    upper = {}
    for j in range(n):
        for k in range(j + 1, n):
            upper[(j, k)] = draw(st.fractions(min_value=-2, max_value=2, max_denominator=2))
    return ExpMatrix.from_upper(n, upper)


vectors = st.tuples(*[st.integers(-3, 3) for _ in range(N)])


def test_rejects_non_skew():
    with pytest.raises(ValueError):
        ExpMatrix([[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        ExpMatrix([[1, 0], [0, 0]])
    with pytest.raises(ValueError):
        ExpMatrix([[0, 1], [-1, 0], [0, 0]])


def test_entry_and_from_upper():
    e = ExpMatrix.from_upper(3, {(0, 1): Fraction(1, 2), (1, 2): -1})
    assert e.entry(0, 1) == ScalarExp(Fraction(1, 2))
    assert e.entry(1, 0) == ScalarExp(Fraction(-1, 2))
    assert e.entry(2, 2) == ScalarExp(0)
    assert e == ExpMatrix([[0, Fraction(1, 2), 0], [Fraction(-1, 2), 0, -1], [0, 1, 0]])


@given(skew_matrices(), vectors, vectors, vectors)
@settings(max_examples=50)
def test_omega_is_biadditive(e, f, g, h):
    fg = tuple(a + b for a, b in zip(f, g))
    assert omega(e, fg, h) == omega(e, f, h) * omega(e, g, h)
    assert omega(e, h, fg) == omega(e, h, f) * omega(e, h, g)


@given(skew_matrices(), vectors, vectors)
@settings(max_examples=50)
def test_omega_is_alternating(e, f, g):
    assert omega(e, f, g) == omega(e, g, f).inv()
    assert omega(e, f, f) == ScalarExp(0)


@given(skew_matrices(), vectors, vectors)
@settings(max_examples=50)
def test_symmetrization_cocycle(e, f, g):
    """S(f+g) = S(f) S(g) q^(-sum_{j<k} E_jk (f_j g_k + g_j f_k))."""
    fg = tuple(a + b for a, b in zip(f, g))
    cross = Fraction(0)
    for j in range(len(f)):
        for k in range(j + 1, len(f)):
            cross += e.rows[j][k] * (f[j] * g[k] + g[j] * f[k])
    assert symmetrization(e, fg) == (
        symmetrization(e, f) * symmetrization(e, g) * ScalarExp(-cross)
    )


def test_symmetrization_on_unit_vectors():
    e = ExpMatrix.from_upper(2, {(0, 1): 3})
    assert symmetrization(e, (1, 0)) == ScalarExp(0)
    assert symmetrization(e, (1, 1)) == ScalarExp(-3)
    assert symmetrization(e, (2, 1)) == ScalarExp(-6)


@given(skew_matrices())
@settings(max_examples=30)
def test_permuted_matches_entries(e):
    perm = (2, 0, 3, 1)
    p = e.permuted(perm)
    for k in range(N):
        for j in range(N):
            assert p.rows[k][j] == e.rows[perm[k]][perm[j]]


def test_restricted():
    e = ExpMatrix.from_upper(3, {(0, 1): 1, (0, 2): 2, (1, 2): 3})
    r = e.restricted((0, 2))
    assert r == ExpMatrix.from_upper(2, {(0, 1): 2})


def test_exp_mat_product_is_congruence():
    e = ExpMatrix.from_upper(2, {(0, 1): 1})
    # columns (1,1) and (0,1): congruent matrix has pairing of the images
    mat = [[1, 0], [1, 1]]
    out = exp_mat_product(e, mat)
    f1, f2 = (1, 1), (0, 1)
    assert out.entry(0, 1) == omega(e, f1, f2)


@given(skew_matrices(), st.fractions(min_value=-2, max_value=2, max_denominator=2))
@settings(max_examples=30)
def test_scaled(e, c):
    s = e.scaled(c)
    for k in range(N):
        for j in range(N):
            assert s.rows[k][j] == e.rows[k][j] * c
