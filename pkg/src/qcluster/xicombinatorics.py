"""Interval-prefix permutations and the toric frames they induce.

A presentation can be re-ordered by any permutation tau whose prefixes
tau([0,k]) are index intervals; the reordered generators again satisfy
the same kind of presentation, and its prime elements are interval primes
of the original algebra.  This module enumerates those permutations,
builds the canonical maximal chain from the identity to the full reversal
(consecutive entries differing by one adjacent transposition), and
assembles for each tau the toric frame whose images are the normalized
interval primes, relabeled back to the original indices.

Frames built here carry PBW images of the ambient algebra; identities
about them are checked after clearing denominators rather than inside a
fraction field.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple

from .bicharacter import ExpMatrix, omega, symmetrization
from .orealgebra import PBWElement, Presentation, weight_of
from .primeseq import EtaData, PrimeSequence, compute_primes, interval_prime
from .qtorus import ToricFrame, matrix_from_images


def has_interval_prefixes(tau: Sequence[int]) -> bool:
    """Whether every prefix of the one-line permutation is an interval."""
    n = len(tau)
    if sorted(tau) != list(range(n)):
        return False
    lo = hi = tau[0]
    for x in tau[1:]:
        if x == lo - 1:
            lo = x
        elif x == hi + 1:
            hi = x
        else:
            return False
    return True


def enumerate_xi(n: int) -> List[Tuple[int, ...]]:
    """All permutations with the interval-prefix property, 2^(n-1) of them.

    Each is determined by choosing, at every step, whether the next index
    extends the current interval below or above.
    """
    if n < 1:
        raise ValueError("need at least one index")
    out: List[Tuple[int, ...]] = []

    def grow(prefix, lo, hi):
        if len(prefix) == n:
            out.append(tuple(prefix))
            return
        if lo > 0:
            grow(prefix + [lo - 1], lo - 1, hi)
        if hi < n - 1:
            grow(prefix + [hi + 1], lo, hi + 1)

    for start in range(n):
        grow([start], start, start)
    return sorted(out)


def gamma_chain(n: int) -> List[Tuple[int, ...]]:
    """The canonical chain of interval-prefix permutations, id first.

    The chain has n(n-1)/2 + 1 entries, ends at the full reversal, and
    consecutive entries differ by one transposition of adjacent positions
    (see gamma_chain_swaps).
    """
    chain = [tuple(range(n))]
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            # one-line form (1-based): i+1..j, i, j+1..N, i-1..1
            word = list(range(i + 1, j + 1)) + [i] + list(range(j + 1, n + 1))
            word += list(range(i - 1, 0, -1))
            chain.append(tuple(x - 1 for x in word))
    return chain


def gamma_chain_swaps(n: int) -> List[int]:
    """Left position of the adjacent swap between chain entries t and t+1."""
    swaps = []
    for i in range(1, n):
        for j in range(i + 1, n + 1):
            swaps.append(j - i - 1)
    return swaps


def tau_bullet(eta: Sequence[int], tau: Sequence[int]) -> Tuple[int, ...]:
    """Permutation sending each index to its rank-matched level-set member.

    Within every level set of eta, the element appearing i-th along tau is
    sent to the i-th smallest element of that level set; the result is a
    permutation of range(n) commuting with eta's partition.
    """
    n = len(eta)
    by_level: dict = {}
    for x in range(n):
        by_level.setdefault(eta[x], []).append(x)
    seen: dict = {}
    bullet = [None] * n
    for k in range(n):
        x = tau[k]
        lvl = eta[x]
        i = seen.get(lvl, 0)
        bullet[x] = by_level[lvl][i]
        seen[lvl] = i + 1
    return tuple(bullet)


class TauPresentation:
    """Reordered presentation data and the toric frame it induces.

    Attributes use original generator labels where possible: frame images
    and exchange data are indexed by original labels (positions composed
    with the rank-matching relabeling), while eta_tau, r_hat and the
    positional level-set data live in tau-position space.
    """

    __slots__ = (
        "pres",
        "tau",
        "lam_tau",
        "eta_tau",
        "pos_data",
        "r_hat",
        "bullet",
        "sigma",
        "frame",
        "image_weights",
        "ex",
    )

    def __init__(self, pres, tau, lam_tau, eta_tau, pos_data, r_hat, bullet,
                 sigma, frame, image_weights, ex):
        self.pres = pres
        self.tau = tau
        self.lam_tau = lam_tau
        self.eta_tau = eta_tau
        self.pos_data = pos_data
        self.r_hat = r_hat
        self.bullet = bullet
        self.sigma = sigma
        self.frame = frame
        self.image_weights = image_weights
        self.ex = ex

    def __repr__(self) -> str:
        return f"TauPresentation(tau={list(self.tau)})"


def _interval_image(pres, seq, lo: int, hi: int) -> PBWElement:
    """Normalized interval prime over the chain from lo to hi, in pres."""
    ed = seq.eta_data
    m = 0
    k = lo
    while k != hi:
        k = ed.s[k]
        m += 1
    y = interval_prime(pres, lo, m)
    return y.scaled(symmetrization(pres.nu(), ed.interval_vector(lo, hi)))


def frame_for_tau(
    pres: Presentation,
    tau: Sequence[int],
    seq: Optional[PrimeSequence] = None,
    verify: bool = False,
) -> TauPresentation:
    """Build the toric frame attached to an interval-prefix permutation.

    Image number k (original labels) is the normalized interval prime over
    the part of k's level-set chain visible in the tau-prefix where it
    appears; the frame exponent matrix is the pairing matrix of the chain
    indicator vectors, relabeled the same way.  With verify=True the
    exponent matrix is recomputed from pairwise image products, which is
    slower but certifies the quasi-commutation exponents.
    """
    tau = tuple(int(x) for x in tau)
    n = pres.n
    if not has_interval_prefixes(tau):
        raise ValueError("permutation does not have interval prefixes")
    if seq is None:
        seq = compute_primes(pres)
    ed = seq.eta_data
    eta_tau = tuple(ed.eta[tau[k]] for k in range(n))
    pos_data = EtaData(eta_tau)
    lo = hi = tau[0]
    vecs: List[Tuple[int, ...]] = []
    images: List[PBWElement] = []
    for k in range(n):
        x = tau[k]
        lo, hi = min(lo, x), max(hi, x)
        if x >= tau[0]:
            start = x
            while ed.p[start] is not None and ed.p[start] >= lo:
                start = ed.p[start]
            end = x
        else:
            start = x
            end = x
            while ed.s[end] is not None and ed.s[end] <= hi:
                end = ed.s[end]
        vecs.append(ed.interval_vector(start, end))
        images.append(_interval_image(pres, seq, start, end))
        # positional chains must describe the same intervals
        pos_vec = [0] * n
        j: Optional[int] = k
        while j is not None:
            pos_vec[tau[j]] = 1
            j = pos_data.p[j]
        if tuple(pos_vec) != vecs[-1]:
            raise ValueError(
                f"position {k}: prefix chain disagrees with interval chain"
            )
    nu = pres.nu()
    r_hat = ExpMatrix(
        [[omega(nu, vecs[l], vecs[j]).e for j in range(n)] for l in range(n)]
    )
    bullet = tau_bullet(ed.eta, tau)
    sigma = tuple(bullet[tau[k]] for k in range(n))
    sigma_inv = [0] * n
    for k in range(n):
        sigma_inv[sigma[k]] = k
    r_tau = r_hat.permuted(sigma_inv)
    relabeled = [images[sigma_inv[a]] for a in range(n)]
    frame = ToricFrame(r_tau, relabeled, pres.one(), pres.root)
    if verify and matrix_from_images(relabeled) != r_tau:
        raise ValueError("image products disagree with the exponent matrix")
    return TauPresentation(
        pres=pres,
        tau=tau,
        lam_tau=pres.lam.permuted(tau),
        eta_tau=eta_tau,
        pos_data=pos_data,
        r_hat=r_hat,
        bullet=bullet,
        sigma=sigma,
        frame=frame,
        image_weights=[weight_of(img) for img in relabeled],
        ex=ed.exchangeable(),
    )


def identity_frame(pres: Presentation) -> TauPresentation:
    return frame_for_tau(pres, range(pres.n))


def interval_frame(pres: Presentation, i: int, m: int) -> ToricFrame:
    """Frame on the window from i to its m-th successor, window-indexed.

    Index 0 carries the chain prime up to the (m-1)-st successor, the last
    index the full chain prime, and an interior index k the prime of k's
    chain restricted to start strictly inside the window.  This is the
    frame in which the one-step mutation identity for interval primes is
    checked.
    """
    seq = compute_primes(pres)
    ed = seq.eta_data
    if m < 1:
        raise ValueError("window needs at least one chain step")
    top = ed.succ_power(i, m)
    width = top - i + 1
    vecs: List[Tuple[int, ...]] = []
    images: List[PBWElement] = []
    for k in range(i, top + 1):
        if k == i:
            start, end = i, ed.succ_power(i, m - 1)
        elif k == top:
            start, end = i, top
        else:
            start = k
            while ed.p[start] is not None and ed.p[start] > i:
                start = ed.p[start]
            end = k
        vecs.append(ed.interval_vector(start, end))
        images.append(_interval_image(pres, seq, start, end))
    nu = pres.nu()
    emat = ExpMatrix(
        [
            [omega(nu, vecs[a], vecs[b]).e for b in range(width)]
            for a in range(width)
        ]
    )
    return ToricFrame(emat, images, pres.one(), pres.root)


def window_support_vector(
    pres: Presentation, i: int, m: int, f: Sequence[int]
) -> Tuple[int, ...]:
    """Expand f over the interior chain vectors of the window at (i, m).

    Returns the unique window-indexed integer vector g, supported away
    from the window endpoints, whose chain-vector combination equals f;
    raises ValueError when f is not in the span (which would violate the
    leading-term structure of the difference elements).
    """
    seq = compute_primes(pres)
    ed = seq.eta_data
    top = ed.succ_power(i, m)
    width = top - i + 1
    rem = list(int(x) for x in f)
    g = [0] * width
    for k in range(top - 1, i, -1):
        c = rem[k]
        if c == 0:
            continue
        start = k
        while ed.p[start] is not None and ed.p[start] > i:
            start = ed.p[start]
        g[k - i] = c
        j: Optional[int] = k
        while j is not None and j >= start:
            rem[j] -= c
            j = ed.p[j]
    if any(rem):
        raise ValueError("vector is not a combination of interior chains")
    return tuple(g)
