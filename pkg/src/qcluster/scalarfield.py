"""Exact scalar arithmetic for a single deformation parameter q.

Two layers:

* :class:`ScalarExp` is a power q**e with rational exponent e, stored
  additively.  Products of commutation scalars, symmetrization factors and
  eigenvalues all live here; q is generic, so q**e is a root of unity only
  for e = 0.

* :class:`Coeff` is an element of the rational function field Q(u) where
  u = q**(1/root) and ``root`` is a fixed positive integer chosen per
  algebra instance.  Numerator and denominator are sparse polynomials
  {exponent: Fraction}.  The numerator may have negative exponents (it is a
  Laurent polynomial); the denominator is normalized to have constant term 1
  and no common factor with the numerator, so equality is structural.

Everything is immutable by convention; operations return fresh objects.
"""

from __future__ import annotations

from fractions import Fraction

_ZERO = Fraction(0)
_ONE = Fraction(1)


class ScalarExp:
    """A power of q with a rational exponent, multiplicative group element."""

    __slots__ = ("e",)

    def __init__(self, e=0):
        self.e = Fraction(e)

    def __mul__(self, other: "ScalarExp") -> "ScalarExp":
        return ScalarExp(self.e + other.e)

    def __truediv__(self, other: "ScalarExp") -> "ScalarExp":
        return ScalarExp(self.e - other.e)

    def __pow__(self, m) -> "ScalarExp":
        return ScalarExp(self.e * Fraction(m))

    def inv(self) -> "ScalarExp":
        return ScalarExp(-self.e)

    @property
    def is_identity(self) -> bool:
        return self.e == 0

    def __eq__(self, other) -> bool:
        return isinstance(other, ScalarExp) and self.e == other.e

    def __hash__(self) -> int:
        return hash(("ScalarExp", self.e))

    def __repr__(self) -> str:
        if self.e == 0:
            return "1"
        if self.e == 1:
            return "q"
        return f"q^({self.e})"

    def to_coeff(self, root: int) -> "Coeff":
        """Embed q**e as a monomial in u = q**(1/root)."""
        k = self.e * root
        if k.denominator != 1:
            raise ValueError(
                f"exponent {self.e} not representable with root {root}"
            )
        return Coeff._make(root, {int(k): _ONE}, _DEN_ONE)


def scalar_pow(s: ScalarExp, m) -> ScalarExp:
    """m-th power of a scalar, m an integer or Fraction."""
    return s ** m


# -- sparse polynomial helpers (dict exponent -> Fraction, no zero values) --

_DEN_ONE = {0: _ONE}


def _padd(a, b):
    out = dict(a)
    for k, v in b.items():
        w = out.get(k)
        if w is None:
            out[k] = v
        else:
            w = w + v
            if w:
                out[k] = w
            else:
                del out[k]
    return out


def _pneg(a):
    return {k: -v for k, v in a.items()}


def _pmul(a, b):
    if not a or not b:
        return {}
    if len(a) == 1:
        ((ka, va),) = a.items()
        return {ka + k: va * v for k, v in b.items()}
    if len(b) == 1:
        ((kb, vb),) = b.items()
        return {k + kb: v * vb for k, v in a.items()}
    out: dict = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            w = out.get(k)
            if w is None:
                out[k] = va * vb
            else:
                w = w + va * vb
                if w:
                    out[k] = w
                else:
                    del out[k]
    return out


def _pshift(a, d):
    if d == 0:
        return a
    return {k + d: v for k, v in a.items()}


def _pscale(a, c: Fraction):
    if c == 1:
        return a
    return {k: v * c for k, v in a.items()}


def _pdivmod(a, b):
    """Polynomial division (nonnegative exponents only)."""
    db = max(b)
    lb = b[db]
    rem = dict(a)
    quo: dict = {}
    while rem:
        dr = max(rem)
        if dr < db:
            break
        c = rem[dr] / lb
        quo[dr - db] = c
        for k, v in b.items():
            kk = dr - db + k
            w = rem.get(kk, _ZERO) - c * v
            if w:
                rem[kk] = w
            elif kk in rem:
                del rem[kk]
    return quo, rem


def _pgcd(a, b):
    """Monic gcd over Q of two polynomials with nonnegative exponents."""
    while b:
        _, r = _pdivmod(a, b)
        a, b = b, r
    lead = a[max(a)]
    return _pscale(a, 1 / lead)


class Coeff:
    """Element of Q(u), u = q**(1/root), in reduced normal form."""

    __slots__ = ("root", "num", "den")

    def __init__(self, root: int, num=None, den=None):
        if root < 1:
            raise ValueError("root must be a positive integer")
        self.root = root
        n = {int(k): Fraction(v) for k, v in (num or {}).items() if v}
        d = {int(k): Fraction(v) for k, v in (den or {}).items() if v}
        if not d:
            d = {} if den else dict(_DEN_ONE)
        self.num, self.den = _normalize(n, d)

    @classmethod
    def _make(cls, root, num, den):
        # internal: trusts that (num, den) is already in normal form
        obj = object.__new__(cls)
        obj.root = root
        obj.num = num
        obj.den = den
        return obj

    @classmethod
    def zero(cls, root: int) -> "Coeff":
        return cls._make(root, {}, _DEN_ONE)

    @classmethod
    def one(cls, root: int) -> "Coeff":
        return cls._make(root, {0: _ONE}, _DEN_ONE)

    @classmethod
    def from_fraction(cls, c, root: int) -> "Coeff":
        c = Fraction(c)
        if not c:
            return cls.zero(root)
        return cls._make(root, {0: c}, _DEN_ONE)

    @classmethod
    def q_power(cls, e, root: int) -> "Coeff":
        """The monomial q**e, e rational with denominator dividing root."""
        return ScalarExp(e).to_coeff(root)

    # -- predicates ---------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.num

    @property
    def is_one(self) -> bool:
        return self.num == _DEN_ONE and self.den == _DEN_ONE

    @property
    def is_laurent(self) -> bool:
        """True when the denominator is trivial."""
        return self.den == _DEN_ONE

    @property
    def is_monomial(self) -> bool:
        return len(self.num) == 1 and self.den == _DEN_ONE

    def as_scalar_exp(self) -> ScalarExp:
        """Return e with self == q**e; requires a monomial with coeff 1."""
        if not self.is_monomial:
            raise ValueError(f"{self} is not a q power")
        ((k, v),) = self.num.items()
        if v != 1:
            raise ValueError(f"{self} is not a q power (coefficient {v})")
        return ScalarExp(Fraction(k, self.root))

    # -- arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Coeff):
            if other.root != self.root:
                raise ValueError("mixed coefficient roots")
            return other
        if isinstance(other, (int, Fraction)):
            return Coeff.from_fraction(other, self.root)
        if isinstance(other, ScalarExp):
            return other.to_coeff(self.root)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == _DEN_ONE and other.den == _DEN_ONE:
            return Coeff._make(self.root, _padd(self.num, other.num), _DEN_ONE)
        num = _padd(_pmul(self.num, other.den), _pmul(other.num, self.den))
        den = _pmul(self.den, other.den)
        return Coeff._make(self.root, *_normalize(num, den))

    __radd__ = __add__

    def __neg__(self):
        return Coeff._make(self.root, _pneg(self.num), self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == _DEN_ONE and other.den == _DEN_ONE:
            return Coeff._make(self.root, _pmul(self.num, other.num), _DEN_ONE)
        num = _pmul(self.num, other.num)
        den = _pmul(self.den, other.den)
        return Coeff._make(self.root, *_normalize(num, den))

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return coeff_div(self, other)

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return coeff_div(other, self)

    def __pow__(self, m: int):
        if m == 0:
            return Coeff.one(self.root)
        base = self if m > 0 else self.inv()
        out = base
        for _ in range(abs(m) - 1):
            out = out * base
        return out

    def inv(self) -> "Coeff":
        if self.is_zero:
            raise ZeroDivisionError("inverting zero coefficient")
        return coeff_div(Coeff.one(self.root), self)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction, ScalarExp)):
            other = self._coerce(other)
        if not isinstance(other, Coeff):
            return NotImplemented
        return (
            self.root == other.root
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash(
            (self.root, frozenset(self.num.items()), frozenset(self.den.items()))
        )

    def __repr__(self) -> str:
        if self.is_zero:
            return "0"
        num = _poly_str(self.num, self.root)
        if self.den == _DEN_ONE:
            return num
        return f"({num})/({_poly_str(self.den, self.root)})"


def _normalize(num: dict, den: dict):
    """Reduce num/den: units into the numerator, gcd out, den(0) = 1."""
    if not num:
        return {}, dict(_DEN_ONE)
    if not den:
        raise ZeroDivisionError("zero denominator")
    if den == _DEN_ONE:
        return num, dict(_DEN_ONE)
    vn = min(num)
    vd = min(den)
    shift = vn - vd
    n = _pshift(num, -vn)
    d = _pshift(den, -vd)
    if len(d) > 1 or d.get(0) != 1:
        g = _pgcd(n, d)
        if len(g) > 1 or g.get(0) != 1:
            n, _ = _pdivmod(n, g)
            d, _ = _pdivmod(d, g)
        c = d[0]
        if c != 1:
            n = _pscale(n, 1 / c)
            d = _pscale(d, 1 / c)
    if d == _DEN_ONE:
        d = dict(_DEN_ONE)
    return _pshift(n, shift), d


def coeff_div(a: Coeff, b: Coeff) -> Coeff:
    """Exact division a/b in Q(u); raises ZeroDivisionError on b = 0."""
    if a.root != b.root:
        raise ValueError("mixed coefficient roots")
    if b.is_zero:
        raise ZeroDivisionError("division by zero coefficient")
    if a.is_zero:
        return Coeff.zero(a.root)
    num = _pmul(a.num, b.den)
    den = _pmul(a.den, b.num)
    return Coeff._make(a.root, *_normalize(num, den))


def _poly_str(p: dict, root: int) -> str:
    parts = []
    for k in sorted(p, reverse=True):
        v = p[k]
        e = Fraction(k, root)
        if e == 0:
            term = str(v)
        else:
            if e == 1:
                mono = "q"
            else:
                mono = f"q^({e})" if e.denominator != 1 else f"q^{e}"
            if v == 1:
                term = mono
            elif v == -1:
                term = f"-{mono}"
            else:
                term = f"{v}*{mono}"
        parts.append(term)
    out = " + ".join(parts)
    return out.replace("+ -", "- ")
