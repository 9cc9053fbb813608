"""Root-system data, reduced words, and exchange matrices from words.

The A_2 word (1, 2, 1) is small enough to check everything by hand; the
quantum-matrix comparison at the end pins the dictionary between grid
presentations and type-A word presentations.
"""

from fractions import Fraction

import pytest

from qcluster.bicharacter import omega
from qcluster.exchangesolver import quantum_matrix_btilde
from qcluster.orealgebra import quantum_matrix_preset
from qcluster.schubertdata import (
    CartanData,
    cartan_matrix,
    compatibility_sweep,
    enumerate_reduced_words,
    exchange_matrix_for_word,
    frame_exponent_matrix,
    is_reduced,
    quantum_matrix_word,
    roots_for_word,
    verify_word_compatibility,
    word_data,
)
from qcluster.xicombinatorics import identity_frame

A2 = CartanData("A", 2)
B2 = CartanData("B", 2)
G2 = CartanData("G", 2)


def test_cartan_matrices():
    assert cartan_matrix("A", 3) == ((2, -1, 0), (-1, 2, -1), (0, -1, 2))
    assert cartan_matrix("B", 2) == ((2, -1), (-2, 2))
    assert cartan_matrix("C", 2) == ((2, -2), (-1, 2))
    assert cartan_matrix("G", 2) == ((2, -3), (-1, 2))
    d4 = cartan_matrix("D", 4)
    assert d4[1][3] == -1 and d4[3][1] == -1
    assert d4[2][3] == 0 and d4[3][2] == 0
    with pytest.raises(ValueError):
        cartan_matrix("B", 1)
    with pytest.raises(ValueError):
        cartan_matrix("G", 3)
    with pytest.raises(ValueError):
        cartan_matrix("E", 6)


def test_symmetrizers_by_type():
    assert A2.d == (1, 1)
    assert CartanData("B", 3).d == (2, 2, 1)
    assert CartanData("C", 3).d == (1, 1, 2)
    assert G2.d == (1, 3)
    assert CartanData("D", 4).d == (1, 1, 1, 1)


def test_gram_matrix_a2():
    assert A2.gram == (
        (Fraction(2, 3), Fraction(1, 3)),
        (Fraction(1, 3), Fraction(2, 3)),
    )
    assert A2.weight_pairing(A2.fundamental_weight(1), A2.fundamental_weight(2)) == Fraction(1, 3)


def test_root_pairing_norms():
    # squared lengths are twice the symmetrizers
    for cd in (A2, B2, G2):
        for i in range(cd.rank):
            alpha = tuple(1 if t == i else 0 for t in range(cd.rank))
            assert cd.root_pairing(alpha, alpha) == 2 * cd.d[i]


def test_reflections():
    # s_1 alpha_1 = -alpha_1; s_1 alpha_2 = alpha_1 + alpha_2 in A_2
    assert A2.reflect_root((1, 0), 1) == (-1, 0)
    assert A2.reflect_root((0, 1), 1) == (1, 1)
    # s_i fixes the other fundamental weight
    mu = A2.fundamental_weight(2)
    assert A2.reflect_weight(mu, 1) == mu


def test_roots_for_word_a2():
    roots = roots_for_word(A2, (1, 2, 1))
    assert roots == ((1, 0), (1, 1), (0, 1))
    assert is_reduced(A2, (1, 2, 1))
    assert not is_reduced(A2, (1, 1))
    with pytest.raises(ValueError):
        roots_for_word(A2, (1, 1))
    with pytest.raises(ValueError):
        roots_for_word(A2, (1, 2, 1, 2))   # longer than the longest element


def test_word_data_a2():
    data = word_data(A2, (1, 2, 1))
    assert data.lengths == (1, 1, 1)
    # commutation exponents are minus the root pairings
    assert data.lam.entry(1, 0).e == -1
    assert data.lam.entry(2, 0).e == 1
    assert data.lam.entry(2, 1).e == -1
    assert [x.e for x in data.lam_diag] == [-2, -2, -2]
    assert [x.e for x in data.lam_star] == [2, 2, 2]
    assert data.eta.p == (None, None, 0)


def test_frame_matrix_a2():
    r = frame_exponent_matrix(A2, (1, 2, 1))
    h = Fraction(1, 2)
    assert r.rows == ((0, 0, -h), (0, 0, h), (h, -h, 0))


def test_exchange_matrix_a2():
    bmat = exchange_matrix_for_word(A2, (1, 2, 1))
    assert bmat.ex == (2,)
    assert bmat.cols[2] == (1, -1, 0)


def test_column_pairing_a2():
    """Each column pairs trivially with every direction except its own."""
    r = frame_exponent_matrix(A2, (1, 2, 1))
    col = exchange_matrix_for_word(A2, (1, 2, 1)).cols[2]
    for l in range(3):
        e = omega(r, col, tuple(1 if t == l else 0 for t in range(3))).e
        assert e == (-1 if l == 2 else 0)


def test_word_report_a2():
    report = verify_word_compatibility(A2, (1, 2, 1))
    assert report.ok
    assert report.columns == (2,)
    assert report.symmetrizable
    assert not report.pairing_failures and not report.grading_failures


def test_word_report_g2_longest():
    report = verify_word_compatibility(G2, (1, 2, 1, 2, 1, 2))
    assert report.ok
    assert report.columns == (2, 3, 4, 5)


def test_exchange_entries_use_cartan():
    # B_2 word (1,2,1,2): the off-chain entries carry Cartan integers
    bmat = exchange_matrix_for_word(B2, (1, 2, 1, 2))
    assert bmat.cols[2][0] == 1          # predecessor
    assert bmat.cols[2][1] == cartan_matrix("B", 2)[1][0]
    report = verify_word_compatibility(B2, (1, 2, 1, 2))
    assert report.ok


def test_enumerate_reduced_words():
    assert len(enumerate_reduced_words(CartanData("A", 1), 8)) == 1
    assert len(enumerate_reduced_words(A2, 8)) == 6
    assert len(enumerate_reduced_words(B2, 8)) == 8
    assert len(enumerate_reduced_words(G2, 8)) == 12
    words3 = enumerate_reduced_words(A2, 3)
    assert (1, 2, 1) in words3 and (2, 1, 2) in words3


def test_sweep_small_types():
    for cd, count in ((A2, 6), (B2, 8), (G2, 12)):
        checked, failures = compatibility_sweep(cd, 8)
        assert checked == count
        assert failures == []


def test_quantum_matrix_word():
    assert quantum_matrix_word(2, 2) == (2, 1, 3, 2)
    assert quantum_matrix_word(2, 3) == (3, 2, 1, 4, 3, 2)


@pytest.mark.parametrize("shape", [(2, 2), (2, 3), (3, 2)])
def test_dictionary_with_grid_presentation(shape):
    """Reversing the word order recovers the grid data up to q <-> q^-1."""
    m, n = shape
    N = m * n
    cd = CartanData("A", m + n - 1)
    word = quantum_matrix_word(m, n)
    rho = [N - 1 - k for k in range(N)]
    data = word_data(cd, word)
    pres = quantum_matrix_preset(m, n)

    bmat = exchange_matrix_for_word(cd, word)
    reversed_cols = {
        N - 1 - k: tuple(col[rho[t]] for t in range(N))
        for k, col in bmat.cols.items()
    }
    from qcluster.mutation import ExchangeMatrix

    assert ExchangeMatrix(N, reversed_cols) == quantum_matrix_btilde(m, n)
    assert data.lam.permuted(rho) == pres.lam.scaled(-1)
    r = frame_exponent_matrix(cd, word)
    assert r.permuted(rho) == identity_frame(pres).frame.emat.scaled(-1)
