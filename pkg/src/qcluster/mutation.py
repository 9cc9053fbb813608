"""Exchange matrices, compatible pairs, and seed mutation.

An exchange matrix here is an N x n integer matrix stored column by
column, with columns indexed by the exchangeable subset of range(N).
Compatibility against a torus exponent matrix E means the pairing
column^T E e_j vanishes for every j other than the column index and is a
nonzero exponent there.

Mutation acts on three layers that are kept in sync:

* mutate_matrix: conjugation by the one-sided factor matrices, which
  equals the usual Fomin-Zelevinsky entrywise rule (mutate_matrix_direct)
  for both choices of sign;
* mutate_emat: conjugation of the torus exponent matrix, again
  independent of the sign choice;
* mutate_seed: frame images change only in direction k, via the exchange
  relation, realized by exact right division in the reference torus.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, Mapping, Optional, Sequence, Tuple

from .bicharacter import ExpMatrix, exp_mat_product, omega
from .orealgebra import pbw_div_right
from .qtorus import ToricFrame, TorusElement, frame_value, torus_div_right
from .scalarfield import ScalarExp


def gplus(v: Sequence[int]):
    """Componentwise positive part."""
    return tuple(x if x > 0 else 0 for x in v)


def gminus(v: Sequence[int]):
    """Componentwise negative part, so that v = gplus(v) + gminus(v)."""
    return tuple(x if x < 0 else 0 for x in v)


class ExchangeMatrix:
    """Integer N x n matrix with columns indexed by the exchangeable set."""

    __slots__ = ("n_rows", "ex", "cols")

    def __init__(self, n_rows: int, cols: Mapping[int, Sequence[int]]):
        self.n_rows = n_rows
        self.ex = tuple(sorted(cols))
        fixed = {}
        for k, col in cols.items():
            if not 0 <= k < n_rows:
                raise ValueError(f"column index {k} out of range")
            col = tuple(int(x) for x in col)
            if len(col) != n_rows:
                raise ValueError("column length mismatch")
            fixed[k] = col
        self.cols = fixed

    def entry(self, i: int, k: int) -> int:
        return self.cols[k][i]

    def column(self, k: int):
        return self.cols[k]

    def principal_part(self) -> Dict[Tuple[int, int], int]:
        return {(j, k): self.cols[k][j] for j in self.ex for k in self.ex}

    def full_rank(self) -> bool:
        rows = [
            [Fraction(self.cols[k][i]) for k in self.ex]
            for i in range(self.n_rows)
        ]
        return _rank(rows) == len(self.ex)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExchangeMatrix):
            return NotImplemented
        return self.n_rows == other.n_rows and self.cols == other.cols

    def __repr__(self) -> str:
        return f"ExchangeMatrix(n_rows={self.n_rows}, ex={self.ex})"


def _rank(rows) -> int:
    rows = [row[:] for row in rows]
    n_cols = len(rows[0]) if rows else 0
    rank = 0
    for col in range(n_cols):
        piv = next(
            (i for i in range(rank, len(rows)) if rows[i][col] != 0), None
        )
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = 1 / rows[rank][col]
        rows[rank] = [x * inv for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank


def compatibility_check(emat: ExpMatrix, bmat: ExchangeMatrix) -> Dict[int, ScalarExp]:
    """Diagonal pairings of a compatible pair, as exponents of q.

    Raises ValueError when an off-diagonal pairing is nonzero or a
    diagonal one vanishes; otherwise returns {k: pairing of column k with
    its own direction}.  Compatibility forces the matrix to have full
    rank, which is asserted as a sanity check.
    """
    if emat.n != bmat.n_rows:
        raise ValueError("size mismatch between torus matrix and columns")
    diag: Dict[int, ScalarExp] = {}
    for k in bmat.ex:
        col = bmat.cols[k]
        for j in range(bmat.n_rows):
            e = sum(
                (Fraction(col[l]) * emat.rows[l][j] for l in range(bmat.n_rows)),
                Fraction(0),
            )
            if j == k:
                if e == 0:
                    raise ValueError(f"diagonal pairing at {k} is trivial")
                diag[k] = ScalarExp(e)
            elif e != 0:
                raise ValueError(
                    f"pairing of column {k} with direction {j} is q^{e} != 1"
                )
    if not bmat.full_rank():
        raise AssertionError("compatible pair with rank-deficient matrix")
    return diag


def skew_symmetrizable(bmat: ExchangeMatrix, d: Mapping[int, int]) -> bool:
    """Whether d_k b_kj = -d_j b_jk holds on the principal part.

    The d are positive integers indexed by the exchangeable set.
    """
    for k in bmat.ex:
        if d[k] <= 0:
            raise ValueError("symmetrizers must be positive")
    return all(
        d[k] * bmat.cols[j][k] == -d[j] * bmat.cols[k][j]
        for k in bmat.ex
        for j in bmat.ex
    )


def find_symmetrizer(bmat: ExchangeMatrix) -> Optional[Dict[int, int]]:
    """Positive integer symmetrizers for the principal part, or None.

    Within each connected component of the exchange graph the values are
    normalized to smallest positive integers.
    """
    ex = bmat.ex
    for k in ex:
        if bmat.cols[k][k] != 0:
            return None
    d: Dict[int, Fraction] = {}
    for start in ex:
        if start in d:
            continue
        comp = [start]
        d[start] = Fraction(1)
        queue = [start]
        while queue:
            k = queue.pop()
            for j in ex:
                if j == k:
                    continue
                bkj = bmat.cols[j][k]
                bjk = bmat.cols[k][j]
                if bkj == 0 and bjk == 0:
                    continue
                if bkj == 0 or bjk == 0:
                    return None
                want = -d[k] * bkj / bjk
                if want <= 0:
                    return None
                if j in d:
                    if d[j] != want:
                        return None
                else:
                    d[j] = want
                    comp.append(j)
                    queue.append(j)
        denom = 1
        for k in comp:
            denom = denom * d[k].denominator // gcd(denom, d[k].denominator)
        numer = 0
        for k in comp:
            numer = gcd(numer, int(d[k] * denom))
        for k in comp:
            d[k] = d[k] * denom / numer
    return {k: int(v) for k, v in d.items()}


def e_matrix(bmat: ExchangeMatrix, k: int, eps: int):
    """Row-side mutation factor, an N x N integer matrix (list of rows)."""
    n = bmat.n_rows
    bk = bmat.cols[k]
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if j != k:
                row.append(1 if i == j else 0)
            elif i == k:
                row.append(-1)
            else:
                row.append(max(0, -eps * bk[i]))
        rows.append(row)
    return rows


def f_matrix(bmat: ExchangeMatrix, k: int, eps: int):
    """Column-side mutation factor over the exchangeable set, {(j, l): entry}."""
    out = {}
    for j in bmat.ex:
        for l in bmat.ex:
            if j != k:
                out[(j, l)] = 1 if j == l else 0
            elif l == k:
                out[(j, l)] = -1
            else:
                out[(j, l)] = max(0, eps * bmat.cols[l][k])
    return out


def mutate_matrix(bmat: ExchangeMatrix, k: int, eps: int = 1):
    """Matrix mutation in direction k via the one-sided factors.

    Returns (mutated matrix, row factor, column factor); the mutated
    matrix is the three-fold product and does not depend on eps.
    """
    if k not in bmat.cols:
        raise ValueError(f"direction {k} is not exchangeable")
    if eps not in (1, -1):
        raise ValueError("sign must be +1 or -1")
    e = e_matrix(bmat, k, eps)
    f = f_matrix(bmat, k, eps)
    n = bmat.n_rows
    eb = {
        j: [sum(e[i][l] * bmat.cols[j][l] for l in range(n)) for i in range(n)]
        for j in bmat.ex
    }
    cols = {
        j: tuple(
            sum(eb[l][i] * f[(l, j)] for l in bmat.ex) for i in range(n)
        )
        for j in bmat.ex
    }
    return ExchangeMatrix(n, cols), e, f


def mutate_matrix_direct(bmat: ExchangeMatrix, k: int) -> ExchangeMatrix:
    """Matrix mutation by the entrywise sign-split rule (no factors)."""
    if k not in bmat.cols:
        raise ValueError(f"direction {k} is not exchangeable")
    bk = bmat.cols[k]
    new_cols = {}
    for j, col in bmat.cols.items():
        if j == k:
            new_cols[j] = tuple(-x for x in col)
            continue
        bkj = col[k]
        new = []
        for i in range(bmat.n_rows):
            if i == k:
                new.append(-col[i])
            else:
                bik = bk[i]
                new.append(col[i] + (abs(bik) * bkj + bik * abs(bkj)) // 2)
        new_cols[j] = tuple(new)
    return ExchangeMatrix(bmat.n_rows, new_cols)


def mutate_emat(
    emat: ExpMatrix, bmat: ExchangeMatrix, k: int, eps: int = 1, check: bool = True
) -> ExpMatrix:
    """Mutated torus exponent matrix: conjugation by the row factor.

    The result does not depend on eps for compatible pairs, which is what
    the check enforces before conjugating.
    """
    if check:
        compatibility_check(emat, bmat)
    return exp_mat_product(emat, e_matrix(bmat, k, eps))


class Seed:
    """A toric frame together with a compatible exchange matrix."""

    def __init__(self, frame: ToricFrame, bmat: ExchangeMatrix, check: bool = True):
        if frame.n != bmat.n_rows:
            raise ValueError("frame size and matrix row count differ")
        if check:
            compatibility_check(frame.emat, bmat)
            if find_symmetrizer(bmat) is None:
                raise ValueError("principal part is not skew-symmetrizable")
        self.frame = frame
        self.bmat = bmat

    def __repr__(self) -> str:
        return f"Seed(n={self.frame.n}, ex={self.bmat.ex})"


def exchange_terms(frame: ToricFrame, bcol: Sequence[int], k: int):
    """The two summands M(h) entering the exchange relation at k.

    Returns [(scalar, h1), (scalar, h2)] with h1 the positive part and
    h2 minus the negative part of the column, scalars chosen so that
    new_image * old_image == sum of scalar_i * M(h_i).
    """
    h1 = gplus(bcol)
    h2 = tuple(-x for x in gminus(bcol))
    if h1[k] or h2[k]:
        raise ValueError("column must vanish on its own direction")
    e_k = tuple(1 if i == k else 0 for i in range(frame.n))
    return [
        (omega(frame.emat, h1, e_k), h1),
        (omega(frame.emat, h2, e_k), h2),
    ]


def exchange_identity_holds(frame: ToricFrame, bcol, k: int, candidate) -> bool:
    """Whether candidate * M(e_k) equals the exchange sum at direction k.

    Backing-agnostic: only products and sums of images are used, so this
    works for frames into an ambient algebra as well.
    """
    rhs = None
    for scalar, h in exchange_terms(frame, bcol, k):
        term = frame_value(frame, h).scaled(scalar)
        rhs = term if rhs is None else rhs + term
    return candidate * frame.images[k] == rhs


def mutated_variable(frame: ToricFrame, bcol: Sequence[int], k: int):
    """The new cluster variable at direction k, inside the ambient algebra.

    Computed as the exact right quotient of the exchange sum by the old
    image, so no localization is needed; raising ValueError when the
    quotient does not exist doubles as a check that the exchange relation
    is solvable over the ambient ring.
    """
    rhs = None
    for scalar, h in exchange_terms(frame, bcol, k):
        term = frame_value(frame, h).scaled(scalar)
        rhs = term if rhs is None else rhs + term
    old = frame.images[k]
    if isinstance(old, TorusElement):
        return torus_div_right(rhs, old)
    return pbw_div_right(rhs, old)


def mutate_seed(seed: Seed, k: int, check: bool = False) -> Seed:
    """Seed mutation in direction k.

    The new image in direction k is the sum of the two frame values with
    the k-th image removed once, obtained here by exact right division of
    the exchange sum by the old image; all other images are kept.
    """
    frame, bmat = seed.frame, seed.bmat
    if k not in bmat.cols:
        raise ValueError(f"direction {k} is not exchangeable")
    images = list(frame.images)
    images[k] = mutated_variable(frame, bmat.cols[k], k)
    new_frame = ToricFrame(
        mutate_emat(frame.emat, bmat, k, check=False), images, frame.one, frame.root
    )
    return Seed(new_frame, mutate_matrix(bmat, k)[0], check=check)


def random_compatible_pair(rng, n: int, max_entry: int = 2):
    """A random compatible pair on 2n directions, plus its symmetrizers.

    The exchange matrix stacks a skew-symmetrizable principal block on top
    of an identity block; the torus exponent matrix pairs the two blocks
    so that every column pairing is trivial except the diagonal one, which
    comes out as half the symmetrizer.  Returns (emat, bmat, d).
    """
    if n < 1:
        raise ValueError("need at least one exchangeable direction")
    d = [rng.choice((1, 2, 3)) for _ in range(n)]
    b = [[0] * n for _ in range(n)]
    for j in range(n):
        for k in range(j + 1, n):
            z = rng.randint(-max_entry, max_entry)
            g = gcd(d[j], d[k])
            b[j][k] = z * d[k] // g
            b[k][j] = -z * d[j] // g
    cols = {
        k: tuple(b[i][k] for i in range(n)) + tuple(
            1 if i == k else 0 for i in range(n)
        )
        for k in range(n)
    }
    bmat = ExchangeMatrix(2 * n, cols)
    half = Fraction(1, 2)
    rows = []
    for i in range(n):
        top = [Fraction(0)] * n
        bot = [-half * d[j] if j == i else Fraction(0) for j in range(n)]
        rows.append(top + bot)
    for i in range(n):
        top = [half * d[i] if j == i else Fraction(0) for j in range(n)]
        bot = [half * b[j][i] * d[j] for j in range(n)]
        rows.append(top + bot)
    emat = ExpMatrix(rows)
    return emat, bmat, {k: d[k] for k in range(n)}


def seed_from_pair(emat: ExpMatrix, bmat: ExchangeMatrix, root: int = 4) -> Seed:
    """Torus-backed seed whose frame images are the plain generators.

    The reference torus multiplies by the bicharacter of emat itself, so
    recovering the frame matrix from image commutation halves back to
    emat exactly.
    """
    n = emat.n
    images = [
        TorusElement.basis(emat, root, tuple(1 if i == k else 0 for i in range(n)))
        for k in range(n)
    ]
    one = TorusElement.one(emat, root)
    return Seed(ToricFrame(emat, images, one, root), bmat)
