"""Sequences of homogeneous prime elements and their leading data.

Every valid presentation determines a chain of subalgebras R_0 < R_1 < ...
(generated by the first k generators) and each R_k has, up to scalars, a
finite list of homogeneous prime elements.  The list for R_k is obtained
from the one for R_{k-1} by the recursion

    y_k = y_{p(k)} x_k - c_k   (or just x_k when the derivation vanishes),

where p is the predecessor map of a level-set function eta on indices.
This module infers eta/p/s, builds the y_k together with the c_k, the
normalized variants, interval versions over subranges of generators, the
two-by-two difference elements u built from neighbouring interval primes,
their leading coefficients and exponents (pi, f), and the generator
rescaling that normalizes those leading coefficients.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .bicharacter import omega, symmetrization
from .orealgebra import (
    PBWElement,
    Presentation,
    apply_sigma_delta,
    leading_term,
    pbw_mul,
)
from .qtorus import proportionality_scalar
from .scalarfield import Coeff, ScalarExp


class EtaData:
    """Level-set function on indices with predecessor/successor maps.

    p[k] (s[k]) is the nearest smaller (larger) index in the same level
    set, or None at the ends.  Derived data: chain orders o_minus/o_plus,
    the chain exponent vectors ebar, and the trailing-prime index sets.
    """

    __slots__ = ("n", "eta", "p", "s", "o_minus", "o_plus", "ebar")

    def __init__(self, eta: Sequence[int]):
        eta = tuple(int(e) for e in eta)
        n = len(eta)
        last: Dict[int, int] = {}
        p: List[Optional[int]] = [None] * n
        s: List[Optional[int]] = [None] * n
        for k in range(n):
            j = last.get(eta[k])
            if j is not None:
                p[k] = j
                s[j] = k
            last[eta[k]] = k
        o_minus = [0] * n
        ebar = []
        for k in range(n):
            vec = [0] * n
            j: Optional[int] = k
            while j is not None:
                vec[j] = 1
                j = p[j]
            ebar.append(tuple(vec))
            if p[k] is not None:
                o_minus[k] = o_minus[p[k]] + 1
        o_plus = [0] * n
        for k in reversed(range(n)):
            if s[k] is not None:
                o_plus[k] = o_plus[s[k]] + 1
        self.n = n
        self.eta = eta
        self.p = tuple(p)
        self.s = tuple(s)
        self.o_minus = tuple(o_minus)
        self.o_plus = tuple(o_plus)
        self.ebar = tuple(ebar)

    @classmethod
    def from_predecessors(cls, preds: Sequence[Optional[int]]) -> "EtaData":
        eta: List[int] = []
        fresh = 0
        for k, j in enumerate(preds):
            if j is None:
                eta.append(fresh)
                fresh += 1
            else:
                eta.append(eta[j])
        out = cls(eta)
        if out.p != tuple(preds):
            raise ValueError("predecessor list is not nearest-in-level-set")
        return out

    def rank(self) -> int:
        return sum(1 for x in self.s if x is None)

    def exchangeable(self) -> Tuple[int, ...]:
        return tuple(k for k in range(self.n) if self.s[k] is not None)

    def trailing(self, k: int) -> Tuple[int, ...]:
        """Indices j <= k whose successor lies beyond k (or nowhere)."""
        return tuple(
            j for j in range(k + 1) if self.s[j] is None or self.s[j] > k
        )

    def succ_power(self, i: int, m: int) -> int:
        j = i
        for _ in range(m):
            nxt = self.s[j]
            if nxt is None:
                raise ValueError(f"index {i} has no {m}-th successor")
            j = nxt
        return j

    def pred_power(self, i: int, m: int) -> int:
        j = i
        for _ in range(m):
            prv = self.p[j]
            if prv is None:
                raise ValueError(f"index {i} has no {m}-th predecessor")
            j = prv
        return j

    def interval_vector(self, i: int, j: int) -> Tuple[int, ...]:
        """Indicator vector of the chain i, s(i), ..., j."""
        vec = [0] * self.n
        k: Optional[int] = i
        while k is not None and k <= j:
            vec[k] = 1
            if k == j:
                return tuple(vec)
            k = self.s[k]
        raise ValueError(f"{j} is not an iterated successor of {i}")

    def same_partition(self, other_eta: Sequence[int]) -> bool:
        if len(other_eta) != self.n:
            return False
        seen: Dict[int, int] = {}
        for k in range(self.n):
            v = other_eta[k]
            if v in seen:
                if self.eta[k] != self.eta[seen[v]]:
                    return False
            else:
                for w, first in seen.items():
                    if self.eta[k] == self.eta[first]:
                        return False
                seen[v] = k
        return True


class PrimeSequence:
    """The y_k, their normalized forms, the c_k, and the level-set data."""

    __slots__ = ("pres", "y", "ybar", "c", "eta_data")

    def __init__(self, pres, y, ybar, c, eta_data):
        self.pres = pres
        self.y = tuple(y)
        self.ybar = tuple(ybar)
        self.c = dict(c)
        self.eta_data = eta_data


def _unit_vec(n: int, k: int) -> Tuple[int, ...]:
    return tuple(1 if i == k else 0 for i in range(n))


def is_normal_in_stage(pres: Presentation, a: PBWElement, k: int) -> bool:
    """Whether a quasi-commutes with every generator x_0..x_k."""
    for i in range(k + 1):
        xi = pres.gen(i)
        try:
            proportionality_scalar(pbw_mul(a, xi), pbw_mul(xi, a))
        except ValueError:
            return False
    return True


def compute_primes(pres: Presentation) -> PrimeSequence:
    """Run the prime-element recursion over all generator stages.

    At each stage either the derivation vanishes identically below the new
    generator (new level set) or exactly one earlier trailing prime y_j
    satisfies the recursion with a normal result; anything else means the
    presentation is not of the supported kind and raises ValueError.
    """
    cached = getattr(pres, "_prime_seq", None)
    if cached is not None:
        return cached
    n = pres.n
    one = Coeff.one(pres.root)
    preds: List[Optional[int]] = []
    ys: List[PBWElement] = []
    cs: Dict[int, PBWElement] = {}
    ebar: List[Tuple[int, ...]] = []
    for k in range(n):
        xk = pres.gen(k)
        if not any((k, j) in pres.delta for j in range(k)):
            preds.append(None)
            ys.append(xk)
            ebar.append(_unit_vec(n, k))
            continue
        # trailing primes of stage k-1: indices never used as a predecessor
        used = {p for p in preds if p is not None}
        candidates = [j for j in range(k) if j not in used]
        hits = []
        for j in candidates:
            d = apply_sigma_delta(pres, k, ys[j])[1]
            if d.is_zero:
                continue
            alpha = omega(pres.lam, _unit_vec(n, k), ebar[j])
            lam_k = pres.lam_diag[k]
            if lam_k is None or lam_k.e == 0:
                raise ValueError(f"stage {k} needs a nontrivial diagonal scalar")
            denom = alpha.to_coeff(pres.root) * (lam_k.to_coeff(pres.root) - one)
            c = d.scaled(denom.inv())
            y = pbw_mul(ys[j], xk) - c
            if is_normal_in_stage(pres, y, k):
                hits.append((j, y, c))
        if len(hits) != 1:
            raise ValueError(
                f"stage {k}: {len(hits)} normal candidates, expected exactly 1"
            )
        j, y, c = hits[0]
        if not all(cf.is_laurent for cf in c.terms.values()):
            raise ValueError(f"stage {k}: non-Laurent centering coefficient")
        preds.append(j)
        ys.append(y)
        cs[k] = c
        ebar.append(tuple(a + b for a, b in zip(ebar[j], _unit_vec(n, k))))
    eta_data = EtaData.from_predecessors(preds)
    if pres.eta is not None and not eta_data.same_partition(pres.eta):
        raise ValueError("declared level sets disagree with the inferred ones")
    for k in range(n):
        f, lead = leading_term(ys[k])
        if f != eta_data.ebar[k] or not lead.is_one:
            raise ValueError(f"stage {k}: leading term is not the chain monomial")
    nu = pres.nu()
    ybar = [y.scaled(symmetrization(nu, eta_data.ebar[k])) for k, y in enumerate(ys)]
    seq = PrimeSequence(pres, ys, ybar, cs, eta_data)
    pres._prime_seq = seq
    return seq


def restrict_presentation(pres: Presentation, j: int, k: int) -> Presentation:
    """The presentation of the subalgebra on generators j..k (inclusive)."""
    if not 0 <= j <= k < pres.n:
        raise ValueError("bad generator range")
    cache = getattr(pres, "_restrict_cache", None)
    if cache is None:
        cache = pres._restrict_cache = {}
    hit = cache.get((j, k))
    if hit is not None:
        return hit
    idx = list(range(j, k + 1))
    delta = {}
    for (b, a), terms in pres.delta.items():
        if a < j or b > k:
            continue
        delta[(b - j, a - j)] = tuple((f[j : k + 1], c) for f, c in terms)
    sub = Presentation(
        pres.lam.restricted(idx),
        delta,
        [pres.weights[i] for i in idx],
        [pres.lam_diag[i] for i in idx],
        lam_star=[pres.lam_star[i] for i in idx],
        eta=[pres.eta[i] for i in idx] if pres.eta is not None else None,
        names=[pres.names[i] for i in idx],
        root=pres.root,
    )
    cache[(j, k)] = sub
    return sub


def embed_interval(pres: Presentation, j: int, elem: PBWElement) -> PBWElement:
    """Reinterpret an element of the subalgebra on j.. as one of pres."""
    n = pres.n
    terms = {}
    for f, c in elem.terms.items():
        g = [0] * n
        for t, x in enumerate(f):
            g[j + t] = x
        terms[tuple(g)] = c
    return PBWElement(pres, terms)


def interval_primes(pres: Presentation, j: int, k: int) -> PrimeSequence:
    """Prime sequence of the subalgebra on generators j..k."""
    return compute_primes(restrict_presentation(pres, j, k))


def interval_prime(pres: Presentation, i: int, m: int) -> PBWElement:
    """The prime y over the chain i, s(i), ..., s^m(i), inside pres.

    This is the last prime of the subalgebra on generators i..s^m(i),
    reinterpreted as an element of the ambient algebra; its leading term
    is the chain indicator monomial.
    """
    seq = compute_primes(pres)
    top = seq.eta_data.succ_power(i, m)
    sub = interval_primes(pres, i, top)
    y = sub.y[top - i]
    out = embed_interval(pres, i, y)
    f, lead = leading_term(out)
    if f != seq.eta_data.interval_vector(i, top) or not lead.is_one:
        raise ValueError(f"interval prime [{i},{top}] has a wrong leading term")
    return out


def u_element(pres: Presentation, i: int, m: int) -> PBWElement:
    """Difference element attached to the chain from i to s^m(i).

    For m >= 2 it is y_[i..s^(m-1)] y_[s..s^m] minus the appropriately
    scaled product in the other order; for m = 1 it is x_i x_{s(i)} minus
    the length-one interval prime; m = 0 gives the unit.  The result is
    supported strictly between i and s^m(i).
    """
    if m < 0:
        raise ValueError("negative chain length")
    if m == 0:
        return pres.one()
    seq = compute_primes(pres)
    ed = seq.eta_data
    top = ed.succ_power(i, m)
    if m == 1:
        u = pbw_mul(pres.gen(i), pres.gen(top)) - interval_prime(pres, i, 1)
    else:
        s_i = ed.s[i]
        mid_lo = ed.succ_power(i, m - 1)
        a = interval_prime(pres, i, m - 1)
        b = interval_prime(pres, s_i, m - 1)
        c = interval_prime(pres, s_i, m - 2)
        d = interval_prime(pres, i, m)
        scal = omega(
            pres.lam, _unit_vec(pres.n, i), ed.interval_vector(s_i, mid_lo)
        )
        u = pbw_mul(a, b) - pbw_mul(c, d).scaled(scal)
    for f in u.terms:
        sup = [t for t, x in enumerate(f) if x]
        if sup and (sup[0] <= i or sup[-1] >= top):
            raise ValueError(f"difference element [{i},{top}] leaks support")
    return u


def pi_f_data(pres: Presentation, i: int, m: int):
    """Leading coefficient and exponent of the difference element."""
    u = u_element(pres, i, m)
    if u.is_zero:
        raise ValueError(f"difference element [{i}, m={m}] vanishes")
    f, lead = leading_term(u)
    return lead, f


def interval_scalar_target(pres: Presentation, i: int, f: Sequence[int]) -> ScalarExp:
    """The normalized value S_nu(-e_i + f) the leading pi should match."""
    nu = pres.nu()
    g = list(int(x) for x in f)
    g[i] -= 1
    return symmetrization(nu, g)


def rescale_generators(pres: Presentation):
    """Scalars gamma making every length-one pi match its normalized target.

    Returns (gamma, rescaled presentation, its prime sequence); raises
    ValueError when the rescaled presentation fails the target equations,
    which would mean the input is not of the supported symmetric kind.
    """
    seq = compute_primes(pres)
    ed = seq.eta_data
    n = pres.n
    one = Coeff.one(pres.root)
    gamma: List[Coeff] = [one] * n
    for i in range(n):
        pi_idx = ed.p[i]
        if pi_idx is None:
            continue
        pi, f = pi_f_data(pres, pi_idx, 1)
        gf = one
        for t, x in enumerate(f):
            if x:
                gf = gf * gamma[t] ** x
        target = interval_scalar_target(pres, pi_idx, f).to_coeff(pres.root)
        gamma[i] = gamma[pi_idx].inv() * gf * pi.inv() * target
    delta = {
        (k, j): tuple(
            (
                f,
                c
                * gamma[k]
                * gamma[j]
                * _gamma_power(gamma, f, one).inv(),
            )
            for f, c in terms
        )
        for (k, j), terms in pres.delta.items()
    }
    rescaled = Presentation(
        pres.lam,
        delta,
        pres.weights,
        pres.lam_diag,
        lam_star=pres.lam_star,
        eta=pres.eta,
        names=pres.names,
        root=pres.root,
    )
    seq2 = compute_primes(rescaled)
    for i in range(n):
        if seq2.eta_data.s[i] is None:
            continue
        pi2, f2 = pi_f_data(rescaled, i, 1)
        want = interval_scalar_target(rescaled, i, f2).to_coeff(pres.root)
        if pi2 != want:
            raise ValueError(
                f"rescaling failed to normalize the leading scalar at {i}"
            )
    return gamma, rescaled, seq2


def _gamma_power(gamma: Sequence[Coeff], f: Sequence[int], one: Coeff) -> Coeff:
    out = one
    for t, x in enumerate(f):
        if x:
            out = out * gamma[t] ** x
    return out


def normality_scalar(pres: Presentation, k: int, i: int) -> ScalarExp:
    """Exponent scalar in y_k x_i = (scalar) x_i y_k for i <= k."""
    seq = compute_primes(pres)
    return omega(pres.lam, seq.eta_data.ebar[k], _unit_vec(pres.n, i))
