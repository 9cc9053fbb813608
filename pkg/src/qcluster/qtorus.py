"""Based quantum torus elements and toric frames.

A torus element is a finite sum over the symmetrized basis {Y^(g)} of the
based quantum torus attached to a skew-symmetric exponent matrix: the basis
multiplies by Y^(f) Y^(g) = q**(f^T E g) Y^(f+g), so products never touch
the symmetrization scalars again.

A toric frame is a map g -> M(g) into some algebra, determined by its
images M(e_k) and its own exponent matrix.  Images are any objects
supporting +, *, scaled(); in this package they are either PBW elements of
an ambient algebra or torus elements over one fixed reference torus.
Negative entries of g are handled by inverting the corresponding image,
which must be a single torus monomial for that to make sense; identities
whose images live in an ambient algebra are instead checked after clearing
denominators, see :func:`check_frame_identity`.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

from .bicharacter import ExpMatrix, exp_mat_product, omega, symmetrization
from .scalarfield import Coeff, ScalarExp


class TorusElement:
    """Sum of symmetrized basis monomials with Coeff coefficients."""

    __slots__ = ("base", "root", "terms")

    def __init__(self, base: ExpMatrix, root: int, terms: dict):
        self.base = base
        self.root = root
        self.terms = terms

    @classmethod
    def one(cls, base: ExpMatrix, root: int) -> "TorusElement":
        return cls(base, root, {(0,) * base.n: Coeff.one(root)})

    @classmethod
    def basis(cls, base: ExpMatrix, root: int, g: Sequence[int]) -> "TorusElement":
        return cls(base, root, {tuple(int(x) for x in g): Coeff.one(root)})

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def _check(self, other: "TorusElement"):
        if self.base is not other.base and self.base != other.base:
            raise ValueError("elements over different tori")
        if self.root != other.root:
            raise ValueError("mixed coefficient roots")

    def _coeff(self, c) -> Coeff:
        if isinstance(c, Coeff):
            if c.root != self.root:
                raise ValueError("coefficient root mismatch")
            return c
        if isinstance(c, ScalarExp):
            return c.to_coeff(self.root)
        return Coeff.from_fraction(c, self.root)

    def scaled(self, c) -> "TorusElement":
        c = self._coeff(c)
        if c.is_zero:
            return TorusElement(self.base, self.root, {})
        return TorusElement(
            self.base, self.root, {g: v * c for g, v in self.terms.items()}
        )

    def inverse(self) -> "TorusElement":
        """Inverse of a single monomial c Y^(g), which is c^-1 Y^(-g)."""
        if len(self.terms) != 1:
            raise ValueError("only monomial torus elements are invertible here")
        ((g, c),) = self.terms.items()
        return TorusElement(
            self.base, self.root, {tuple(-x for x in g): c.inv()}
        )

    def __add__(self, other: "TorusElement") -> "TorusElement":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            acc = out.get(g)
            if acc is None:
                out[g] = c
            else:
                acc = acc + c
                if acc.is_zero:
                    del out[g]
                else:
                    out[g] = acc
        return TorusElement(self.base, self.root, out)

    def __neg__(self) -> "TorusElement":
        return TorusElement(
            self.base, self.root, {g: -c for g, c in self.terms.items()}
        )

    def __sub__(self, other: "TorusElement") -> "TorusElement":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TorusElement):
            return torus_mul(self, other)
        return self.scaled(other)

    def __rmul__(self, other):
        return self.scaled(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, TorusElement):
            return NotImplemented
        return (
            self.base == other.base
            and self.root == other.root
            and self.terms == other.terms
        )

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for g in sorted(self.terms):
            c = self.terms[g]
            parts.append(f"({c!r})*Y{list(g)}")
        return " + ".join(parts)


def torus_mul(a: TorusElement, b: TorusElement) -> TorusElement:
    """Product of torus elements in the symmetrized basis."""
    a._check(b)
    out: dict = {}
    base = a.base
    for f, ca in a.terms.items():
        for g, cb in b.terms.items():
            c = ca * cb * omega(base, f, g).to_coeff(a.root)
            h = tuple(x + y for x, y in zip(f, g))
            acc = out.get(h)
            if acc is None:
                out[h] = c
            else:
                acc = acc + c
                if acc.is_zero:
                    del out[h]
                    continue
                out[h] = acc
    return TorusElement(base, a.root, {g: c for g, c in out.items() if not c.is_zero})


def _grlex_key(g):
    return (sum(g), g)


def torus_div_right(a: TorusElement, b: TorusElement) -> TorusElement:
    """Exact right quotient: the c with c * b == a.

    Works by eliminating the graded-lex minimal term of the remainder
    against the minimal term of b; raises ValueError when the division is
    not exact (guarded by an iteration cap so bad inputs fail fast).
    """
    a._check(b)
    if b.is_zero:
        raise ZeroDivisionError("division by zero torus element")
    base, root = a.base, a.root
    gb = min(b.terms, key=_grlex_key)
    cb = b.terms[gb]
    rem = dict(a.terms)
    quo: dict = {}
    steps = 0
    cap = 100000
    while rem:
        steps += 1
        if steps > cap:
            raise ValueError("right division did not terminate; not exact")
        ga = min(rem, key=_grlex_key)
        gq = tuple(x - y for x, y in zip(ga, gb))
        c = rem[ga] / (cb * omega(base, gq, gb).to_coeff(root))
        quo[gq] = c
        # rem -= (c Y^(gq)) * b
        for g, v in b.terms.items():
            h = tuple(x + y for x, y in zip(gq, g))
            sub = c * v * omega(base, gq, g).to_coeff(root)
            acc = rem.get(h)
            if acc is None:
                rem[h] = -sub
            else:
                acc = acc - sub
                if acc.is_zero:
                    del rem[h]
                else:
                    rem[h] = acc
    return TorusElement(base, root, quo)


class ToricFrame:
    """Toric frame given by its exponent matrix and cluster variable images."""

    def __init__(self, emat: ExpMatrix, images: Sequence, one, root: int):
        if len(images) != emat.n:
            raise ValueError("one image per lattice direction required")
        self.emat = emat
        self.images = list(images)
        self.one = one
        self.root = root
        self.n = emat.n

    def frame_value(self, g: Sequence[int]):
        return frame_value(self, g)

    def omega(self, f, g) -> ScalarExp:
        return omega(self.emat, f, g)

    def __repr__(self) -> str:
        return f"ToricFrame(n={self.n})"


def frame_value(frame: ToricFrame, g: Sequence[int]):
    """M(g): the symmetrized ordered product of image powers.

    Negative exponents are taken through monomial inversion of the image,
    so they require that image to be a torus monomial; a negative exponent
    at a genuine sum raises ValueError.
    """
    g = tuple(int(x) for x in g)
    if len(g) != frame.n:
        raise ValueError("vector length mismatch")
    out = frame.one.scaled(symmetrization(frame.emat, g))
    for k, e in enumerate(g):
        if e >= 0:
            factor = frame.images[k]
        else:
            img = frame.images[k]
            if not isinstance(img, TorusElement):
                raise ValueError(
                    f"negative exponent at {k}: image is not invertible here"
                )
            factor = img.inverse()
        for _ in range(abs(e)):
            out = out * factor
    return out


def _int_det(cols) -> Fraction:
    n = len(cols)
    rows = [[Fraction(cols[k][i]) for k in range(n)] for i in range(n)]
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            det = -det
        det *= rows[c][c]
        inv = 1 / rows[c][c]
        for i in range(c + 1, n):
            if rows[i][c] != 0:
                f = rows[i][c] * inv
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[c])]
    return det


def reindex_frame(frame: ToricFrame, sigma_cols: Sequence[Sequence[int]]) -> ToricFrame:
    """The composed frame M o sigma for unimodular sigma.

    sigma is given by its columns sigma(e_k); the new frame has images
    M(sigma(e_k)) and exponent matrix sigma^T E sigma.  Permutations are
    the columns [e_{perm[k]} for k].
    """
    n = frame.n
    cols = [tuple(int(x) for x in c) for c in sigma_cols]
    if len(cols) != n or any(len(c) != n for c in cols):
        raise ValueError("sigma must be a square integer matrix of frame size")
    if abs(_int_det(cols)) != 1:
        raise ValueError("sigma is not invertible over the integers")
    sigma_rows = [[cols[k][i] for k in range(n)] for i in range(n)]
    return ToricFrame(
        exp_mat_product(frame.emat, sigma_rows),
        [frame_value(frame, cols[k]) for k in range(n)],
        frame.one,
        frame.root,
    )


def permutation_cols(perm: Sequence[int]):
    """Columns of the matrix sending e_k to e_{perm[k]}."""
    n = len(perm)
    if sorted(perm) != list(range(n)):
        raise ValueError("not a permutation")
    return [tuple(1 if i == perm[k] else 0 for i in range(n)) for k in range(n)]


def proportionality_scalar(a, b) -> Coeff:
    """The exact Coeff c with a == c * b, determined via matching terms.

    Raises ValueError when the elements are not proportional.  Works for
    any element type exposing .terms and .scaled().
    """
    if not b.terms:
        raise ValueError("proportionality against zero")
    f0 = max(b.terms)
    ca = a.terms.get(f0)
    if ca is None:
        raise ValueError("elements are not proportional")
    c = ca / b.terms[f0]
    if a.terms != b.scaled(c).terms:
        raise ValueError("elements are not proportional")
    return c


def matrix_from_images(images: Sequence) -> ExpMatrix:
    """Recover the frame exponent matrix from pairwise image products.

    Uses M(e_j) M(e_k) = q**(2 E[j][k]) M(e_k) M(e_j); each ratio must be
    an exact q power or the images do not define a frame.
    """
    n = len(images)
    upper: dict = {}
    for j in range(n):
        for k in range(j + 1, n):
            c = proportionality_scalar(
                images[j] * images[k], images[k] * images[j]
            )
            upper[(j, k)] = c.as_scalar_exp().e / 2
    return ExpMatrix.from_upper(n, upper)


def check_frame_identity(frame: ToricFrame, target, combos) -> bool:
    """Check target == sum_i scalar_i * M(g_i) with g_i possibly negative.

    Both sides are left multiplied by M(m), m[j] = max(0, -min_i g_i[j]),
    which turns every frame value into a product of plain images:

        M(m) * target == sum_i scalar_i * Omega(m, g_i) * M(m + g_i).

    This keeps the check meaningful for frames whose images live in an
    ambient algebra without invertible generators.  Scalars are ScalarExp
    or Coeff factors.
    """
    combos = [(s, tuple(int(x) for x in g)) for s, g in combos]
    m = [0] * frame.n
    for _, g in combos:
        for j, x in enumerate(g):
            if -x > m[j]:
                m[j] = -x
    m = tuple(m)
    lhs = frame_value(frame, m) * target
    rhs = None
    for s, g in combos:
        shifted = tuple(a + b for a, b in zip(m, g))
        term = frame_value(frame, shifted).scaled(
            omega(frame.emat, m, g)
        ).scaled(s)
        rhs = term if rhs is None else rhs + term
    return lhs == rhs
