"""Exchange matrices as unique solutions of pairing and grading equations.

A column b at an exchangeable index l is characterized by three exact
conditions: its pairing against every other lattice direction under the
frame exponent matrix vanishes, the pairing against its own direction has
the prescribed square, and the weight of the frame value M(b) is zero.
This module solves that linear system with exact rational elimination,
asserts integrality and uniqueness, assembles full exchange matrices, and
carries the independent closed-form pattern for quantum matrices used to
cross-check the solver.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Dict, List, Optional, Sequence, Tuple

from .bicharacter import ExpMatrix
from .mutation import ExchangeMatrix, compatibility_check, skew_symmetrizable
from .scalarfield import ScalarExp
from .xicombinatorics import TauPresentation


class LinearSystem:
    """Dense rational system A x = rhs with exact elimination."""

    def __init__(self, rows: Sequence[Sequence[Fraction]], rhs: Sequence[Fraction]):
        self.rows = [list(Fraction(x) for x in row) for row in rows]
        self.rhs = [Fraction(x) for x in rhs]
        if len(self.rows) != len(self.rhs):
            raise ValueError("one right-hand side entry per row required")

    def solve_unique(self) -> List[Fraction]:
        """The unique solution; raises ValueError if none or many exist."""
        rows = [row[:] + [b] for row, b in zip(self.rows, self.rhs)]
        n_cols = len(self.rows[0]) if self.rows else 0
        pivots = []
        r = 0
        for c in range(n_cols):
            piv = None
            for i in range(r, len(rows)):
                if rows[i][c] != 0:
                    piv = i
                    break
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            inv = 1 / rows[r][c]
            rows[r] = [x * inv for x in rows[r]]
            for i in range(len(rows)):
                if i != r and rows[i][c] != 0:
                    f = rows[i][c]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(c)
            r += 1
        for i in range(r, len(rows)):
            if rows[i][n_cols] != 0:
                raise ValueError("inconsistent system")
        if len(pivots) != n_cols:
            raise ValueError("solution is not unique")
        sol = [Fraction(0)] * n_cols
        for i, c in enumerate(pivots):
            sol[c] = rows[i][n_cols]
        return sol


def solve_bcolumn(
    r_tau: ExpMatrix,
    weights: Sequence[Sequence[int]],
    lambda_star_l: ScalarExp,
    l: int,
) -> Tuple[int, ...]:
    """The integer column with prescribed pairings and zero total weight.

    weights[k] is the torus weight of the k-th frame image.  Raises
    ValueError when the system has no solution, a non-unique one, or a
    non-integral one; each of these means the input data does not come
    from a valid normalized presentation.
    """
    n = r_tau.n
    if lambda_star_l is None or lambda_star_l.e == 0:
        raise ValueError(f"index {l} lacks a nontrivial squared scalar")
    rows: List[List[Fraction]] = []
    rhs: List[Fraction] = []
    for j in range(n):
        rows.append([r_tau.rows[i][j] for i in range(n)])
        rhs.append(lambda_star_l.e / 2 if j == l else Fraction(0))
    d = len(weights[0]) if weights else 0
    for t in range(d):
        rows.append([Fraction(weights[k][t]) for k in range(n)])
        rhs.append(Fraction(0))
    sol = LinearSystem(rows, rhs).solve_unique()
    if any(x.denominator != 1 for x in sol):
        raise ValueError(f"column at {l} is not integral: {sol}")
    return tuple(int(x) for x in sol)


def btilde_for_tau(tau_pres: TauPresentation) -> ExchangeMatrix:
    """Full exchange matrix for a reordered frame, verified on the spot.

    Solves one column per exchangeable index (original labels), then
    checks the compatible-pair conditions and skew-symmetrizability with
    symmetrizers read off the squared scalars, raising on any failure.
    """
    pres = tau_pres.pres
    emat = tau_pres.frame.emat
    cols = {}
    for l in tau_pres.ex:
        cols[l] = solve_bcolumn(
            emat, tau_pres.image_weights, pres.lam_star[l], l
        )
    bmat = ExchangeMatrix(pres.n, cols)
    if tau_pres.ex:
        compatibility_check(emat, bmat)
        d = symmetrizers_from_scalars(pres, tau_pres.ex)
        if not skew_symmetrizable(bmat, d):
            raise ValueError("principal part is not skew-symmetrizable")
    return bmat


def symmetrizers_from_scalars(pres, ex: Sequence[int]) -> Dict[int, int]:
    """Positive integers proportional to the squared-scalar exponents.

    The exponents must be constant on level sets and of one sign; the
    common rescaling to smallest positive integers is returned per
    exchangeable index.
    """
    exps: Dict[int, Fraction] = {}
    for l in ex:
        lam_star = pres.lam_star[l]
        if lam_star is None or lam_star.e == 0:
            raise ValueError(f"index {l} lacks a squared scalar")
        exps[l] = lam_star.e
    if not exps:
        return {}
    signs = {e > 0 for e in exps.values()}
    if len(signs) != 1:
        raise ValueError("squared-scalar exponents of mixed sign")
    flip = -1 if (False in signs) else 1
    denom = 1
    for e in exps.values():
        denom = denom * e.denominator // gcd(denom, e.denominator)
    ints = {l: abs(int(e * denom * flip)) for l, e in exps.items()}
    g = 0
    for v in ints.values():
        g = gcd(g, v)
    return {l: v // g for l, v in ints.items()}


def quantum_matrix_btilde(m: int, n: int) -> ExchangeMatrix:
    """Closed-form exchange matrix of the standard quantum-matrix frame.

    Generators sit on an m x n grid, label (r, c) -> r*n + c, and a column
    at an interior cell has +1 at its north, west, and southeast
    neighbours, -1 at its south, east, and northwest neighbours (entries
    falling off the grid are dropped).  Kept independent of the solver as
    an oracle for tests.
    """
    def label(r, c):
        return r * n + c

    cols = {}
    for r in range(m - 1):
        for c in range(n - 1):
            col = [0] * (m * n)
            for dr, dc, val in (
                (-1, 0, 1),
                (0, -1, 1),
                (1, 1, 1),
                (1, 0, -1),
                (0, 1, -1),
                (-1, -1, -1),
            ):
                rr, cc = r + dr, c + dc
                if 0 <= rr < m and 0 <= cc < n:
                    col[label(rr, cc)] = val
            cols[label(r, c)] = tuple(col)
    return ExchangeMatrix(m * n, cols)


def first_column_crosscheck(pres, i: int) -> bool:
    """Compare the leading exponent of a one-step difference element with
    the combination of chain vectors prescribed by the exchange column.

    The window from i to s(i) is treated as a standalone algebra; the
    column at its bottom index determines the leading exponent through
    the window's trailing interior primes.  Returns True on agreement.
    """
    from .primeseq import compute_primes, pi_f_data, restrict_presentation
    from .xicombinatorics import frame_for_tau

    seq = compute_primes(pres)
    top = seq.eta_data.succ_power(i, 1)
    _, f_big = pi_f_data(pres, i, 1)
    sub = restrict_presentation(pres, i, top)
    sub_tau = frame_for_tau(sub, range(sub.n))
    bmat = btilde_for_tau(sub_tau)
    sub_seq = compute_primes(sub)
    ed = sub_seq.eta_data
    col = bmat.cols[0]
    if col[sub.n - 1] != 1:
        return False
    combo = [0] * sub.n
    for l in range(1, sub.n - 1):
        if ed.s[l] is None:
            if col[l]:
                for t, x in enumerate(ed.ebar[l]):
                    combo[t] -= col[l] * x
        elif col[l]:
            return False
    f_window = list(f_big[i : top + 1])
    return combo == f_window
