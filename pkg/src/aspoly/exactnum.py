"""Exact rational scalars and a fraction-free linear algebra kernel.

Rationals are carried by the standard library ``fractions.Fraction``, which
already guarantees canonical form (reduced, positive denominator).  The
matrix routines never round: determinants and ranks are computed by Bareiss
fraction-free elimination on integer rows obtained by clearing denominators,
so every intermediate quantity is an exact minor of the scaled matrix.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from .errors import ShapeError

Rational = Fraction


def parse_rational(text: str) -> Fraction:
    """Parse "num/den" or "num" into an exact rational."""
    return Fraction(text)


def format_rational(x: Fraction) -> str:
    """Render a rational as "num/den", always with an explicit denominator."""
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class RatMatrix:
    """Immutable rational matrix stored row-major."""

    rows: int
    cols: int
    entries: tuple[Fraction, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ShapeError(
                f"expected {self.rows * self.cols} entries, got {len(self.entries)}"
            )

    @staticmethod
    def from_rows(rows: Sequence[Sequence]) -> "RatMatrix":
        nr = len(rows)
        nc = len(rows[0]) if nr else 0
        if any(len(r) != nc for r in rows):
            raise ShapeError("ragged rows")
        return RatMatrix(nr, nc, tuple(Fraction(x) for r in rows for x in r))

    def entry(self, i: int, j: int) -> Fraction:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise ShapeError(f"index ({i},{j}) out of range")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> tuple[Fraction, ...]:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def row_lists(self) -> list[list[Fraction]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def transpose(self) -> "RatMatrix":
        ent = tuple(self.entries[i * self.cols + j]
                    for j in range(self.cols) for i in range(self.rows))
        return RatMatrix(self.cols, self.rows, ent)


def clear_row_denominators(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """Scale each row by the lcm of its denominators.

    Returns the integer rows and the list of positive scale factors.  Row
    scaling by positive integers preserves rank and sign structure, and
    multiplies the determinant by the product of the scales.
    """
    out: list[list[int]] = []
    scales: list[int] = []
    for r in rows:
        fr = [Fraction(x) for x in r]
        m = lcm(*(x.denominator for x in fr)) if fr else 1
        out.append([int(x * m) for x in fr])
        scales.append(m)
    return out, scales


def int_det(rows: list[list[int]]) -> int:
    """Determinant of a square integer matrix by Bareiss elimination.

    All divisions are exact (divisors are leading principal minors of the
    permuted matrix), so the result is the exact integer determinant.
    """
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ShapeError("determinant requires a square matrix")
    if n == 0:
        return 1
    a = [list(r) for r in rows]
    sign = 1
    prev = 1
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return 0
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            sign = -sign
        ak = a[k]
        pk = ak[k]
        for i in range(k + 1, n):
            ai = a[i]
            aik = ai[k]
            for j in range(k + 1, n):
                ai[j] = (pk * ai[j] - aik * ak[j]) // prev
            ai[k] = 0
        prev = pk
    return sign * a[n - 1][n - 1]


def int_rank(rows: Sequence[Sequence[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Column pivoting with the same Sylvester-identity division as int_det;
    skipped columns leave the update divisor untouched, which keeps every
    division exact.
    """
    a = [list(r) for r in rows]
    m = len(a)
    if m == 0:
        return 0
    n = len(a[0])
    if any(len(r) != n for r in a):
        raise ShapeError("ragged rows")
    r = 0
    prev = 1
    for c in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if a[i][c]), None)
        if piv is None:
            continue
        if piv != r:
            a[r], a[piv] = a[piv], a[r]
        ar = a[r]
        pk = ar[c]
        for i in range(r + 1, m):
            ai = a[i]
            aic = ai[c]
            for j in range(c + 1, n):
                ai[j] = (pk * ai[j] - aic * ar[j]) // prev
            ai[c] = 0
        prev = pk
        r += 1
    return r


def det(m: RatMatrix) -> Fraction:
    """Exact determinant of a square rational matrix."""
    if m.rows != m.cols:
        raise ShapeError("determinant requires a square matrix")
    int_rows, scales = clear_row_denominators(m.row_lists())
    d = int_det(int_rows)
    denom = 1
    for s in scales:
        denom *= s
    return Fraction(d, denom)


def rank(m: RatMatrix) -> int:
    """Exact rank of a rational matrix over the rationals."""
    int_rows, _ = clear_row_denominators(m.row_lists())
    return int_rank(int_rows)


def vandermonde(params: Sequence) -> Fraction:
    """Product of pairwise differences prod_{i<j} (t_j - t_i).

    Equals the determinant of the square Vandermonde matrix with rows
    (1, t_i, t_i^2, ...); positive whenever the parameters are strictly
    increasing.  Empty and single-parameter products are 1.
    """
    ts = [Fraction(t) for t in params]
    out = Fraction(1)
    for j in range(len(ts)):
        for i in range(j):
            out *= ts[j] - ts[i]
    return out
