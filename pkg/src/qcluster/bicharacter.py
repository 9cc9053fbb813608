"""Skew-symmetric exponent matrices and the bicharacter they induce.

A multiplicatively skew-symmetric scalar matrix with entries q**E[k][j] is
stored through its additive exponent matrix E (rational entries, E[k][k] = 0,
E[j][k] = -E[k][j]).  The induced pairing on integer vectors is

    omega(E, f, g) = q ** (f^T E g),

and the symmetrization scalar attached to a monomial exponent f is

    symmetrization(E, f) = q ** ( - sum_{j<k} E[j][k] f_j f_k ).

Vectors are plain tuples/lists of ints indexed 0..N-1.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .scalarfield import ScalarExp


class ExpMatrix:
    """Skew-symmetric matrix of q-exponents, immutable."""

    __slots__ = ("n", "rows")

    def __init__(self, rows: Iterable[Iterable]):
        mat = tuple(tuple(Fraction(x) for x in row) for row in rows)
        n = len(mat)
        for row in mat:
            if len(row) != n:
                raise ValueError("exponent matrix must be square")
        for k in range(n):
            if mat[k][k] != 0:
                raise ValueError(f"nonzero diagonal exponent at {k}")
            for j in range(k):
                if mat[k][j] != -mat[j][k]:
                    raise ValueError(f"not skew-symmetric at ({k},{j})")
        self.n = n
        self.rows = mat

    @classmethod
    def zero(cls, n: int) -> "ExpMatrix":
        return cls([[0] * n for _ in range(n)])

    @classmethod
    def from_upper(cls, n: int, upper: dict) -> "ExpMatrix":
        """Build from {(j, k): exponent} entries with j < k."""
        rows = [[Fraction(0)] * n for _ in range(n)]
        for (j, k), e in upper.items():
            if not j < k:
                raise ValueError("from_upper expects j < k keys")
            e = Fraction(e)
            rows[j][k] = e
            rows[k][j] = -e
        return cls(rows)

    def entry(self, k: int, j: int) -> ScalarExp:
        return ScalarExp(self.rows[k][j])

    def scaled(self, c) -> "ExpMatrix":
        c = Fraction(c)
        return ExpMatrix([[x * c for x in row] for row in self.rows])

    def permuted(self, perm: Sequence[int]) -> "ExpMatrix":
        """Conjugate by the permutation matrix sending e_k to e_{perm[k]}.

        The result satisfies result[k][j] = self[perm[k]][perm[j]], i.e. it
        is the exponent matrix seen by the reordered generator list
        x_{perm[0]}, ..., x_{perm[n-1]}.
        """
        if sorted(perm) != list(range(self.n)):
            raise ValueError("not a permutation")
        return ExpMatrix(
            [[self.rows[perm[k]][perm[j]] for j in range(self.n)] for k in range(self.n)]
        )

    def restricted(self, indices: Sequence[int]) -> "ExpMatrix":
        """Submatrix on the given (distinct) indices, in the given order."""
        return ExpMatrix(
            [[self.rows[a][b] for b in indices] for a in indices]
        )

    def __eq__(self, other) -> bool:
        return isinstance(other, ExpMatrix) and self.rows == other.rows

    def __hash__(self) -> int:
        return hash(self.rows)

    def __repr__(self) -> str:
        body = "; ".join(
            " ".join(str(x) for x in row) for row in self.rows
        )
        return f"ExpMatrix[{body}]"


def omega(emat: ExpMatrix, f: Sequence[int], g: Sequence[int]) -> ScalarExp:
    """The pairing q ** (f^T E g) as a ScalarExp."""
    rows = emat.rows
    total = Fraction(0)
    for k, fk in enumerate(f):
        if not fk:
            continue
        row = rows[k]
        acc = Fraction(0)
        for j, gj in enumerate(g):
            if gj:
                acc += row[j] * gj
        total += fk * acc
    return ScalarExp(total)


def symmetrization(emat: ExpMatrix, f: Sequence[int]) -> ScalarExp:
    """Symmetrization scalar of the monomial with exponent vector f."""
    rows = emat.rows
    total = Fraction(0)
    support = [j for j, fj in enumerate(f) if fj]
    for a, j in enumerate(support):
        fj = f[j]
        row = rows[j]
        for k in support[a + 1 :]:
            total -= row[k] * fj * f[k]
    return ScalarExp(total)


def exp_mat_product(emat: ExpMatrix, mat: Sequence[Sequence[int]]) -> ExpMatrix:
    """Conjugated exponent matrix mat^T E mat for an integer n x m matrix.

    This is the additive form of the substitution rule for scalar matrices:
    reindexing a bicharacter by sigma in GL_N(Z), or restricting it along an
    arbitrary integer matrix, conjugates the exponent matrix this way.
    """
    n = emat.n
    if len(mat) != n:
        raise ValueError("matrix row count must match exponent matrix size")
    m = len(mat[0])
    for row in mat:
        if len(row) != m:
            raise ValueError("ragged matrix")
    # E * mat
    em = [
        [sum(emat.rows[i][k] * mat[k][j] for k in range(n)) for j in range(m)]
        for i in range(n)
    ]
    out = [
        [sum(mat[k][i] * em[k][j] for k in range(n)) for j in range(m)]
        for i in range(m)
    ]
    return ExpMatrix(out)
