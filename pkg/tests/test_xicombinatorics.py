"""Interval-prefix permutations and the toric frames they induce."""

import pytest

from qcluster.bicharacter import omega, symmetrization
from qcluster.orealgebra import quantum_matrix_preset
from qcluster.primeseq import compute_primes
from qcluster.qtorus import frame_value
from qcluster.xicombinatorics import (
    enumerate_xi,
    frame_for_tau,
    gamma_chain,
    gamma_chain_swaps,
    has_interval_prefixes,
    identity_frame,
    interval_frame,
    tau_bullet,
    window_support_vector,
)

P22 = quantum_matrix_preset(2, 2)


def test_interval_prefix_predicate():
    assert has_interval_prefixes((0, 1, 2))
    assert has_interval_prefixes((1, 2, 0))
    assert has_interval_prefixes((2, 1, 0))
    assert not has_interval_prefixes((0, 2, 1))
    assert not has_interval_prefixes((2, 0, 1))


@pytest.mark.parametrize("n", [1, 2, 3, 5, 7])
def test_enumerate_xi_counts(n):
    xi = enumerate_xi(n)
    assert len(xi) == 2 ** (n - 1)
    assert len(set(xi)) == len(xi)
    for tau in xi:
        assert has_interval_prefixes(tau)


def test_gamma_chain_shape():
    for n in (2, 3, 4, 6):
        chain = gamma_chain(n)
        swaps = gamma_chain_swaps(n)
        assert len(chain) == n * (n - 1) // 2 + 1
        assert len(swaps) == len(chain) - 1
        assert chain[0] == tuple(range(n))
        assert chain[-1] == tuple(reversed(range(n)))
        xi = set(enumerate_xi(n))
        for tau in chain:
            assert tau in xi
        for t, pos in enumerate(swaps):
            cur, nxt = list(chain[t]), chain[t + 1]
            cur[pos], cur[pos + 1] = cur[pos + 1], cur[pos]
            assert tuple(cur) == nxt


def test_tau_bullet():
    eta = (0, 1, 0, 1, 0)
    tau = (2, 3, 4, 1, 0)
    bullet = tau_bullet(eta, tau)
    assert sorted(bullet) == list(range(5))
    for x in range(5):
        assert eta[bullet[x]] == eta[x]
    # along tau, members of a level set are matched in increasing order
    assert bullet[2] == 0 and bullet[4] == 2 and bullet[0] == 4
    assert tau_bullet(eta, tuple(range(5))) == tuple(range(5))


def test_identity_frame_images_are_normalized_primes():
    tp = identity_frame(P22)
    seq = compute_primes(P22)
    assert tp.sigma == tuple(range(4))
    for k in range(4):
        assert tp.frame.images[k] == seq.ybar[k]
    nu = P22.nu()
    for j in range(4):
        for k in range(4):
            want = omega(nu, seq.eta_data.ebar[j], seq.eta_data.ebar[k])
            assert tp.frame.emat.entry(j, k) == want


def test_reversal_frame_images():
    tau = (3, 2, 1, 0)
    tp = frame_for_tau(P22, tau)
    # images sit at bullet-relabeled slots: the level set {0, 3} puts the
    # single prime t22 at slot 0 and the full-chain minor at slot 3
    assert tp.bullet == (3, 1, 2, 0)
    assert tp.frame.images[0] == P22.gen(3)
    assert tp.frame.images[1] == P22.gen(1)
    assert tp.frame.images[2] == P22.gen(2)
    assert len(tp.frame.images[3].terms) == 2


def test_frame_verify_mode_agrees():
    for tau in gamma_chain(4):
        a = frame_for_tau(P22, tau)
        b = frame_for_tau(P22, tau, verify=True)
        assert a.frame.emat == b.frame.emat


def test_frame_rejects_non_interval_prefix():
    with pytest.raises(ValueError):
        frame_for_tau(P22, (0, 2, 1, 3))


def test_frame_images_quasi_commute():
    """M(e_j) M(e_k) = q^(2 emat_jk) M(e_k) M(e_j) inside the algebra."""
    from qcluster.orealgebra import pbw_mul

    tp = frame_for_tau(P22, (1, 2, 3, 0))
    em = tp.frame.emat
    for j in range(4):
        for k in range(4):
            lhs = pbw_mul(tp.frame.images[j], tp.frame.images[k])
            scal = (em.entry(j, k) * em.entry(k, j).inv())
            rhs = pbw_mul(tp.frame.images[k], tp.frame.images[j]).scaled(scal)
            assert lhs == rhs


def test_interval_frame_window():
    fr = interval_frame(P22, 0, 1)
    assert fr.n == 4
    assert fr.images[1] == P22.gen(1)
    assert fr.images[2] == P22.gen(2)
    # window ends carry the chain primes up to the endpoints
    assert len(fr.images[3].terms) == 2
    assert fr.images[0] == P22.gen(0)


def test_window_support_vector():
    g = window_support_vector(P22, 0, 1, (0, 1, 1, 0))
    assert g == (0, 1, 1, 0)
    with pytest.raises(ValueError):
        window_support_vector(P22, 0, 1, (1, 0, 0, 0))


def test_frame_value_on_identity_frame():
    tp = identity_frame(P22)
    seq = compute_primes(P22)
    v = frame_value(tp.frame, (1, 0, 0, 1))
    prod = seq.ybar[0] * seq.ybar[3]
    scal = symmetrization(tp.frame.emat, (1, 0, 0, 1))
    assert v == prod.scaled(scal)
