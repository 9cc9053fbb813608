"""Iterated skew polynomial algebras in PBW normal form.

A :class:`Presentation` fixes N generators x_0, ..., x_{N-1} subject to

    x_k x_j = q**lam[k][j] x_j x_k + delta_k(x_j)      (k > j)

where each delta_k(x_j) is a finite sum of normal monomials supported on
indices < k.  Elements are kept in the PBW basis x_0^{a_0} ... x_{N-1}^{a_N}
(exponent tuples), with coefficients in the exact field Q(q**(1/root)).

Monomials are compared in reverse lexicographic order: f < g when at the
highest index where they differ, f has the smaller exponent.  Each
delta_k(x_j) is required to be strictly smaller than e_j + e_k and to have
the same weight; that guard is what makes the rewriting below terminate on
the algebras this package targets.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Optional, Sequence

from .bicharacter import ExpMatrix, omega
from .scalarfield import Coeff, ScalarExp


def reverse_lex_less(f: Sequence[int], g: Sequence[int]) -> bool:
    """Strict reverse-lex comparison of exponent tuples."""
    for a, b in zip(reversed(f), reversed(g)):
        if a != b:
            return a < b
    return False


def _rev_key(f):
    return tuple(reversed(f))


class Presentation:
    """Generators, commutation exponents, derivation table, torus weights."""

    def __init__(
        self,
        lam: ExpMatrix,
        delta: dict,
        weights: Sequence[Sequence[int]],
        lam_diag: Sequence[Optional[ScalarExp]],
        lam_star: Optional[Sequence[Optional[ScalarExp]]] = None,
        eta: Optional[Sequence[int]] = None,
        names: Optional[Sequence[str]] = None,
        root: Optional[int] = None,
    ):
        n = lam.n
        self.n = n
        self.lam = lam
        if root is None:
            d = 1
            for row in lam.rows:
                for x in row:
                    d = d * x.denominator // _gcd(d, x.denominator)
            root = 2 * d
        self.root = root
        self.weights = tuple(tuple(int(w) for w in ws) for ws in weights)
        if len(self.weights) != n:
            raise ValueError("need one weight vector per generator")
        wlen = len(self.weights[0]) if n else 0
        if any(len(w) != wlen for w in self.weights):
            raise ValueError("ragged weight vectors")
        self.names = tuple(names) if names else tuple(f"x{i}" for i in range(n))
        if len(self.names) != n:
            raise ValueError("need one name per generator")
        self.lam_diag = tuple(lam_diag)
        self.lam_star = tuple(lam_star) if lam_star is not None else (None,) * n
        self.eta = tuple(int(e) for e in eta) if eta is not None else None

        table: dict = {}
        symmetric = True
        for (k, j), terms in delta.items():
            if not (0 <= j < k < n):
                raise ValueError(f"bad derivation key ({k},{j})")
            clean = []
            target_w = tuple(
                a + b for a, b in zip(self.weights[k], self.weights[j])
            )
            ejk = [0] * n
            ejk[j] += 1
            ejk[k] += 1
            for f, c in terms:
                f = tuple(int(x) for x in f)
                if len(f) != n or any(x < 0 for x in f):
                    raise ValueError(f"bad monomial {f} in delta[{k},{j}]")
                c = self._as_coeff(c)
                if c.is_zero:
                    continue
                sup = [i for i, x in enumerate(f) if x]
                if sup and sup[-1] >= k:
                    raise ValueError(
                        f"delta[{k},{j}] monomial {f} not supported below {k}"
                    )
                if not reverse_lex_less(f, ejk):
                    raise ValueError(
                        f"delta[{k},{j}] monomial {f} not below e_{j}+e_{k}"
                    )
                if self._mono_weight(f) != target_w:
                    raise ValueError(
                        f"delta[{k},{j}] monomial {f} breaks weight homogeneity"
                    )
                if sup and sup[0] <= j:
                    symmetric = False
                clean.append((f, c))
            if clean:
                table[(k, j)] = tuple(clean)
        self.delta = table
        self.symmetric = symmetric
        self._mtg_cache: dict = {}

    # -- small constructors -------------------------------------------------

    def _as_coeff(self, c) -> Coeff:
        if isinstance(c, Coeff):
            if c.root != self.root:
                raise ValueError("coefficient root mismatch")
            return c
        if isinstance(c, ScalarExp):
            return c.to_coeff(self.root)
        return Coeff.from_fraction(c, self.root)

    def zero(self) -> "PBWElement":
        return PBWElement(self, {})

    def one(self) -> "PBWElement":
        return self.monomial((0,) * self.n)

    def gen(self, k: int) -> "PBWElement":
        f = [0] * self.n
        f[k] = 1
        return self.monomial(tuple(f))

    def monomial(self, f: Sequence[int], coeff=1) -> "PBWElement":
        c = self._as_coeff(coeff)
        f = tuple(int(x) for x in f)
        if len(f) != self.n:
            raise ValueError("exponent tuple has wrong length")
        if c.is_zero:
            return self.zero()
        return PBWElement(self, {f: c})

    def element(self, terms) -> "PBWElement":
        out: dict = {}
        for f, c in terms:
            f = tuple(int(x) for x in f)
            c = self._as_coeff(c)
            if c.is_zero:
                continue
            if f in out:
                c = out[f] + c
                if c.is_zero:
                    del out[f]
                    continue
            out[f] = c
        return PBWElement(self, out)

    def _mono_weight(self, f) -> tuple:
        wlen = len(self.weights[0]) if self.n else 0
        acc = [0] * wlen
        for i, x in enumerate(f):
            if x:
                wi = self.weights[i]
                for t in range(wlen):
                    acc[t] += x * wi[t]
        return tuple(acc)

    def nu(self) -> ExpMatrix:
        """The square-root commutation matrix (half the lam exponents)."""
        return self.lam.scaled(Fraction(1, 2))

    # -- rewriting core ------------------------------------------------------

    def _mono_times_gen(self, f: tuple, j: int) -> dict:
        """Normal form of x^f * x_j as {monomial: Coeff}."""
        key = (f, j)
        hit = self._mtg_cache.get(key)
        if hit is not None:
            return hit
        L = -1
        for i in range(self.n - 1, -1, -1):
            if f[i]:
                L = i
                break
        if L <= j:
            g = list(f)
            g[j] += 1
            out = {tuple(g): Coeff.one(self.root)}
            self._mtg_cache[key] = out
            return out
        fp = list(f)
        fp[L] -= 1
        fp = tuple(fp)
        lam_c = self.lam.entry(L, j).to_coeff(self.root)
        out: dict = {}
        for g, c in self._mono_times_gen(fp, j).items():
            gg = list(g)
            gg[L] += 1
            out[tuple(gg)] = c * lam_c
        dterms = self.delta.get((L, j))
        if dterms:
            for g, dc in dterms:
                for h, c in self._mono_times_mono(fp, g).items():
                    prod = c * dc
                    acc = out.get(h)
                    if acc is None:
                        out[h] = prod
                    else:
                        acc = acc + prod
                        if acc.is_zero:
                            del out[h]
                        else:
                            out[h] = acc
        self._mtg_cache[key] = out
        return out

    def _terms_times_gen(self, terms: dict, j: int) -> dict:
        out: dict = {}
        for f, c in terms.items():
            for h, c2 in self._mono_times_gen(f, j).items():
                prod = c * c2
                acc = out.get(h)
                if acc is None:
                    out[h] = prod
                else:
                    acc = acc + prod
                    if acc.is_zero:
                        del out[h]
                    else:
                        out[h] = acc
        return out

    def _mono_times_mono(self, f: tuple, g: tuple) -> dict:
        cur = {f: Coeff.one(self.root)}
        for j, e in enumerate(g):
            for _ in range(e):
                cur = self._terms_times_gen(cur, j)
        return cur

    def __repr__(self) -> str:
        return f"Presentation({self.n} generators, root {self.root})"


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


class PBWElement:
    """Finite sum of PBW monomials with exact coefficients."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: Presentation, terms: dict):
        self.pres = pres
        self.terms = terms

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def _check(self, other: "PBWElement"):
        if self.pres is not other.pres:
            raise ValueError("elements from different presentations")

    def __add__(self, other: "PBWElement") -> "PBWElement":
        self._check(other)
        out = dict(self.terms)
        for f, c in other.terms.items():
            acc = out.get(f)
            if acc is None:
                out[f] = c
            else:
                acc = acc + c
                if acc.is_zero:
                    del out[f]
                else:
                    out[f] = acc
        return PBWElement(self.pres, out)

    def __neg__(self) -> "PBWElement":
        return PBWElement(self.pres, {f: -c for f, c in self.terms.items()})

    def __sub__(self, other: "PBWElement") -> "PBWElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, PBWElement):
            return pbw_mul(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        # scalars are central, so left and right scaling agree
        return self.scaled(other)

    def scaled(self, c) -> "PBWElement":
        c = self.pres._as_coeff(c)
        if c.is_zero:
            return self.pres.zero()
        return PBWElement(
            self.pres, {f: v * c for f, v in self.terms.items()}
        )

    def __eq__(self, other) -> bool:
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.pres is other.pres and self.terms == other.terms

    def __hash__(self):
        raise TypeError("PBWElement is not hashable")

    def support_max(self) -> int:
        """Largest generator index occurring, or -1 for scalars."""
        top = -1
        for f in self.terms:
            for i in range(self.pres.n - 1, top, -1):
                if f[i]:
                    top = i
                    break
        return top

    def coeff_of(self, f) -> Coeff:
        return self.terms.get(tuple(f), Coeff.zero(self.pres.root))

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        names = self.pres.names
        parts = []
        for f in sorted(self.terms, key=_rev_key, reverse=True):
            c = self.terms[f]
            factors = []
            for i, e in enumerate(f):
                if e == 1:
                    factors.append(names[i])
                elif e > 1:
                    factors.append(f"{names[i]}^{e}")
            mono = "*".join(factors) if factors else "1"
            cs = repr(c)
            if cs == "1" and factors:
                parts.append(mono)
            elif cs == "-1" and factors:
                parts.append(f"-{mono}")
            else:
                if ("+" in cs or "-" in cs[1:]) and not cs.startswith("("):
                    cs = f"({cs})"
                parts.append(cs if not factors else f"{cs}*{mono}")
        return " + ".join(parts).replace("+ -", "- ")


def pbw_mul(a: PBWElement, b: PBWElement) -> PBWElement:
    """Product in the algebra, result in PBW normal form."""
    a._check(b)
    pres = a.pres
    out: dict = {}
    for g, cb in b.terms.items():
        cur = a.terms
        for j, e in enumerate(g):
            for _ in range(e):
                cur = pres._terms_times_gen(cur, j)
        for f, c in cur.items():
            prod = c * cb
            acc = out.get(f)
            if acc is None:
                out[f] = prod
            else:
                acc = acc + prod
                if acc.is_zero:
                    del out[f]
                    continue
                out[f] = acc
    return PBWElement(pres, {f: c for f, c in out.items() if not c.is_zero})


def leading_term(a: PBWElement) -> tuple:
    """(exponent tuple, coefficient) of the reverse-lex largest monomial."""
    if a.is_zero:
        raise ValueError("leading term of zero")
    f = max(a.terms, key=_rev_key)
    return f, a.terms[f]


def pbw_div_right(a: PBWElement, b: PBWElement) -> PBWElement:
    """Exact right quotient: the c with c * b == a.

    Eliminates the reverse-lex leading term of the remainder against the
    leading term of b.  Leading terms are multiplicative here (derivation
    corrections are strictly smaller), so the quotient monomial is forced
    at each step; the commutation scalar is read off from an actual
    product rather than guessed.  Raises ValueError when the division is
    not exact.
    """
    a._check(b)
    if b.is_zero:
        raise ZeroDivisionError("division by zero element")
    pres = a.pres
    gb, _ = leading_term(b)
    rem = PBWElement(pres, dict(a.terms))
    quo: dict = {}
    while not rem.is_zero:
        ga, ca = leading_term(rem)
        gq = tuple(x - y for x, y in zip(ga, gb))
        if any(x < 0 for x in gq):
            raise ValueError("right division is not exact")
        prod = pbw_mul(pres.monomial(gq), b)
        c = ca / prod.terms[ga]
        quo[gq] = c
        rem = rem - prod.scaled(c)
    return PBWElement(pres, quo)


def weight_of(a: PBWElement) -> tuple:
    """Common weight vector of all monomials; raises if inhomogeneous."""
    if a.is_zero:
        raise ValueError("weight of zero is undefined")
    it = iter(a.terms)
    w = a.pres._mono_weight(next(it))
    for f in it:
        if a.pres._mono_weight(f) != w:
            raise ValueError("element is not weight homogeneous")
    return w


def apply_sigma_delta(pres: Presentation, k: int, a: PBWElement):
    """The automorphism/derivation pair of the k-th Ore step applied to a.

    sigma_k scales each monomial x^f by q**(e_k^T lam f); delta_k is the
    difference x_k a - sigma_k(a) x_k, which lands back in the subalgebra
    on indices < k.  Requires a supported on indices < k.
    """
    if a.pres is not pres:
        raise ValueError("element from a different presentation")
    if a.support_max() >= k:
        raise ValueError(f"element not supported below generator {k}")
    ek = [0] * pres.n
    ek[k] = 1
    sig_terms = {}
    for f, c in a.terms.items():
        sig_terms[f] = c * omega(pres.lam, ek, f).to_coeff(pres.root)
    sig = PBWElement(pres, sig_terms)
    xk = pres.gen(k)
    delta = pbw_mul(xk, a) - pbw_mul(sig, xk)
    if delta.support_max() >= k:
        raise ValueError(f"derivation {k} left the subalgebra")
    return sig, delta


def quantum_matrix_preset(m: int, n: int) -> Presentation:
    """Quantized coordinate ring of m x n matrices.

    Generator index k = r*n + c (rows r in [0,m), columns c in [0,n)), name
    t{r+1}{c+1}.  Same-row and same-column pairs q-commute; strictly
    southeast pairs carry the standard derivation term.  Weights live in
    Z^(m+n), the row/column torus.
    """
    if m < 1 or n < 1:
        raise ValueError("matrix shape must be positive")
    N = m * n
    root = 2
    upper = {}
    delta = {}
    qdiff = Coeff(root, {2: Fraction(-1), -2: Fraction(1)})  # -(q - q^-1)
    for k in range(N):
        r2, c2 = divmod(k, n)
        for j in range(k):
            r1, c1 = divmod(j, n)
            if r1 == r2 or c1 == c2:
                upper[(j, k)] = 1
            elif c1 < c2:
                f = [0] * N
                f[r1 * n + c2] += 1
                f[r2 * n + c1] += 1
                delta[(k, j)] = ((tuple(f), qdiff),)
    lam = ExpMatrix.from_upper(N, upper)
    weights = []
    names = []
    eta = []
    for k in range(N):
        r, c = divmod(k, n)
        w = [0] * (m + n)
        w[r] = 1
        w[m + c] = -1
        weights.append(w)
        sep = "" if m <= 9 and n <= 9 else "_"
        names.append(f"t{r + 1}{sep}{c + 1}")
        eta.append(c - r)
    lam_diag = [ScalarExp(-2)] * N
    lam_star = [ScalarExp(2)] * N
    return Presentation(
        lam,
        delta,
        weights,
        lam_diag,
        lam_star,
        eta=eta,
        names=names,
        root=root,
    )


def presentation_from_dict(data: dict, spot_checks: int = 25, seed: int = 0) -> Presentation:
    """Build a presentation from plain JSON-style data.

    Expected keys: "lambda" (N x N exponent matrix, entries int/"a/b"),
    "weights" (N integer vectors), "lambda_diag" and optionally
    "lambda_star" (exponent lists, null allowed), optional "delta"
    ({"k,j": [[monomial, coeff], ...]} with coeff a u-polynomial
    {"exp": "frac"} or an exponent), optional "eta", "names", "root".

    Runs a randomized associativity spot check on the finished algebra,
    since a malformed derivation table yields an inconsistent rewriting
    system rather than an error.
    """
    lam = ExpMatrix([[Fraction(x) for x in row] for row in data["lambda"]])
    root = data.get("root")
    if root is None:
        d = 1
        for row in lam.rows:
            for x in row:
                d = d * x.denominator // _gcd(d, x.denominator)
        root = 2 * d
    n = lam.n

    def exp_list(key):
        vals = data.get(key)
        if vals is None:
            return [None] * n
        return [None if v is None else ScalarExp(Fraction(v)) for v in vals]

    delta = {}
    for key, terms in (data.get("delta") or {}).items():
        k, j = (int(x) for x in key.split(","))
        parsed = []
        for mono, coeff in terms:
            if isinstance(coeff, dict):
                c = Coeff(
                    root,
                    {int(e): Fraction(v) for e, v in coeff.items()},
                )
            else:
                c = Coeff.q_power(Fraction(coeff), root)
            parsed.append((tuple(mono), c))
        delta[(k, j)] = tuple(parsed)
    pres = Presentation(
        lam,
        delta,
        data["weights"],
        exp_list("lambda_diag"),
        exp_list("lambda_star"),
        eta=data.get("eta"),
        names=data.get("names"),
        root=root,
    )
    if spot_checks:
        rng = random.Random(seed)
        for _ in range(spot_checks):
            a, b, c = (
                pres.monomial(tuple(rng.randint(0, 1) for _ in range(n)))
                for _ in range(3)
            )
            if pbw_mul(pbw_mul(a, b), c) != pbw_mul(a, pbw_mul(b, c)):
                raise ValueError(
                    "associativity spot check failed; derivation table is "
                    "inconsistent with the commutation exponents"
                )
    return pres
