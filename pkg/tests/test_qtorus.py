"""Based quantum torus arithmetic and toric frames."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qcluster.bicharacter import ExpMatrix, omega, symmetrization
from qcluster.qtorus import (
    ToricFrame,
    TorusElement,
    check_frame_identity,
    frame_value,
    matrix_from_images,
    permutation_cols,
    proportionality_scalar,
    reindex_frame,
    torus_div_right,
    torus_mul,
)
from qcluster.scalarfield import Coeff, ScalarExp

ROOT = 2
BASE = ExpMatrix.from_upper(
    3, {(0, 1): 1, (0, 2): Fraction(-1, 2), (1, 2): 2}
)

vectors = st.tuples(*[st.integers(-3, 3) for _ in range(3)])


def Y(g):
    return TorusElement.basis(BASE, ROOT, g)


def one():
    return TorusElement.one(BASE, ROOT)


elements = st.builds(
    lambda gs: sum((Y(g) for g in gs[1:]), Y(gs[0])),
    st.lists(vectors, min_size=1, max_size=3, unique=True),
)
nonzero = elements.filter(lambda a: not a.is_zero)


@given(vectors, vectors)
def test_basis_product_law(f, g):
    h = tuple(x + y for x, y in zip(f, g))
    assert Y(f) * Y(g) == Y(h).scaled(omega(BASE, f, g))


@given(vectors, vectors)
def test_commutation(f, g):
    """Y^(f) Y^(g) = q^(2 f^T E g) Y^(g) Y^(f)."""
    lhs = Y(f) * Y(g)
    rhs = (Y(g) * Y(f)).scaled(omega(BASE, f, g) * omega(BASE, g, f).inv())
    assert lhs == rhs


@given(vectors)
def test_inverse(g):
    assert Y(g).inverse() * Y(g) == one()
    assert Y(g) * Y(g).inverse() == one()


def test_inverse_needs_monomial():
    with pytest.raises(ValueError):
        (Y((1, 0, 0)) + Y((0, 1, 0))).inverse()


@given(nonzero, nonzero)
@settings(max_examples=50)
def test_right_division(a, b):
    assert torus_div_right(a * b, b) == a


def test_division_rejects_inexact():
    a = Y((1, 0, 0)) + Y((0, 1, 0))
    b = Y((0, 0, 1)) + Y((1, 1, 0))
    prod = a * b
    with pytest.raises(ValueError):
        torus_div_right(prod + one(), b)


def basis_frame():
    images = [Y((1, 0, 0)), Y((0, 1, 0)), Y((0, 0, 1))]
    return ToricFrame(BASE, images, one(), ROOT)


@given(vectors)
def test_frame_value_matches_basis(g):
    """With generator images, M(g) is exactly the symmetrized monomial."""
    assert frame_value(basis_frame(), g) == Y(g)


def test_matrix_recovery():
    assert matrix_from_images(basis_frame().images) == BASE


def test_matrix_recovery_rejects_non_frame():
    images = [Y((1, 0, 0)), Y((0, 1, 0)) + Y((1, 0, 0)), Y((0, 0, 1))]
    with pytest.raises(ValueError):
        matrix_from_images(images)


def test_reindex_by_permutation():
    frame = basis_frame()
    perm = (2, 0, 1)
    re = reindex_frame(frame, permutation_cols(perm))
    for k in range(3):
        assert re.images[k] == frame.images[perm[k]]
    assert re.emat == BASE.permuted(perm)


@given(vectors)
def test_reindex_invariance(g):
    """Y^(f) = Y_sigma^(sigma^-1 f) for an integer shear sigma."""
    frame = basis_frame()
    cols = [(1, 0, 0), (2, 1, 0), (0, 0, 1)]  # sigma: e1 -> e1 + 2 e0
    inv_rows = [[1, -2, 0], [0, 1, 0], [0, 0, 1]]
    re = reindex_frame(frame, cols)
    pre = tuple(sum(r * x for r, x in zip(row, g)) for row in inv_rows)
    assert frame_value(re, pre) == frame_value(frame, g)


def test_reindex_rejects_non_unimodular():
    with pytest.raises(ValueError):
        reindex_frame(basis_frame(), [(2, 0, 0), (0, 1, 0), (0, 0, 1)])


def test_proportionality_scalar():
    a = Y((1, 2, 0)) + Y((0, 1, 1))
    c = Coeff.q_power(Fraction(3, 2), ROOT) + 1
    assert proportionality_scalar(a.scaled(c), a) == c
    with pytest.raises(ValueError):
        proportionality_scalar(a + one(), a)


def test_check_frame_identity():
    frame = basis_frame()
    target = Y((1, 0, 0)) + Y((0, 1, 0)).scaled(ScalarExp(2))
    combos = [(ScalarExp(0), (1, 0, 0)), (ScalarExp(2), (0, 1, 0))]
    assert check_frame_identity(frame, target, combos)
    off = [(ScalarExp(1), (1, 0, 0)), (ScalarExp(2), (0, 1, 0))]
    assert not check_frame_identity(frame, target, off)


def test_check_frame_identity_with_negative_support():
    frame = basis_frame()
    g = (-1, 1, 0)
    target = frame_value(frame, g)
    assert check_frame_identity(frame, target, [(ScalarExp(0), g)])


@given(vectors, vectors)
def test_symmetrization_consistency(f, g):
    """Ordered product of two symmetrized monomials vs the base pairing."""
    prod = torus_mul(Y(f), Y(g))
    ((h, c),) = prod.terms.items()
    assert h == tuple(x + y for x, y in zip(f, g))
    assert c == omega(BASE, f, g).to_coeff(ROOT)


def test_frame_value_unrolls_to_ordered_product():
    frame = basis_frame()
    g = (2, 1, 1)
    ordered = one()
    for k, e in enumerate(g):
        for _ in range(e):
            ordered = ordered * frame.images[k]
    assert frame_value(frame, g) == ordered.scaled(symmetrization(BASE, g))
