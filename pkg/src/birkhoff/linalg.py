"""Exact linear algebra of Birkhoff systems.

The system matrix A(E, X) is written in the basis x^j/j!, so the constraint
g^(k)(x_i) = c reads  sum_j x_i^(j-k)/(j-k)! g_j = c  with 1/r! = 0 for r < 0.
Rows are listed column-major over E (derivative order first, then knot),
which makes the split at a column block upper-triangular without any row
permutation.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial, gcd, lcm
from typing import Sequence

from birkhoff.comb import InterpolationMatrix
from birkhoff.poly import Polynomial, format_rational, parse_rational, to_rational


class OverdeterminedError(ValueError):
    """Raised when a pair has more constraints than coefficients (|E| > d+1)."""


@dataclass(frozen=True)
class PairEX:
    E: InterpolationMatrix
    knots: tuple[Fraction, ...]

    def __post_init__(self):
        knots = tuple(to_rational(x) for x in self.knots)
        if len(knots) != self.E.m:
            raise ValueError("%d knots given for %d matrix rows" % (len(knots), self.E.m))
        if len(set(knots)) != len(knots):
            raise ValueError("knots must be pairwise distinct")
        object.__setattr__(self, "knots", knots)

    @classmethod
    def parse(cls, text: str, knots: str | None = None) -> PairEX:
        """Parse ``"100100;100010;100100 @ 0,1,3"`` (or matrix text plus a separate knot list)."""
        if knots is None:
            if "@" not in text:
                raise ValueError("pair text needs '<matrix> @ <knots>'")
            text, knots = text.split("@", 1)
        E = InterpolationMatrix.parse(text)
        xs = [parse_rational(x) for x in knots.split(",") if x.strip()] if knots.strip() else []
        return cls(E, tuple(xs))

    @property
    def d(self) -> int:
        return self.E.d

    def text(self) -> str:
        return "%s @ %s" % (self.E.text(), ",".join(format_rational(x) for x in self.knots))

    def __str__(self) -> str:
        return self.text()


@dataclass(frozen=True)
class SystemMatrix:
    entries: tuple[tuple[Fraction, ...], ...]
    row_labels: tuple[tuple[int, int], ...]
    ncols: int

    def format_rows(self) -> list[str]:
        return ["(" + ",".join(format_rational(v) for v in row) + ")" for row in self.entries]

    def __str__(self) -> str:
        return "\n".join(self.format_rows())


@dataclass(frozen=True)
class RankReport:
    rank: int
    nullspace_basis: tuple[Polynomial, ...]
    is_full_row_rank: bool


def _inv_factorial(r: int) -> Fraction:
    return Fraction(0) if r < 0 else Fraction(1, factorial(r))


def system_row(x: Fraction, k: int, d: int) -> tuple[Fraction, ...]:
    """Coefficients of g^(k)(x) in the x^j/j! basis."""
    return tuple(x ** (j - k) * _inv_factorial(j - k) if j >= k else Fraction(0) for j in range(d + 1))


def build_system(p: PairEX) -> SystemMatrix:
    labels = tuple(p.E.ones())
    rows = tuple(system_row(p.knots[i], k, p.d) for i, k in labels)
    return SystemMatrix(rows, labels, p.d + 1)


def build_system_standard(p: PairEX) -> SystemMatrix:
    """Same constraints in the monomial basis x^j: entry x^(j-k) j!/(j-k)!."""
    labels = tuple(p.E.ones())
    d = p.d
    rows = tuple(
        tuple(
            p.knots[i] ** (j - k) * Fraction(factorial(j), factorial(j - k)) if j >= k else Fraction(0)
            for j in range(d + 1)
        )
        for i, k in labels
    )
    return SystemMatrix(rows, labels, d + 1)


def _integer_rows(rows: Sequence[Sequence]) -> list[list[int]]:
    out = []
    for row in rows:
        den = 1
        for v in row:
            den = lcm(den, Fraction(v).denominator)
        ints = [int(Fraction(v) * den) for v in row]
        if any(ints):
            out.append(ints)
    return out


def rank(rows: Sequence[Sequence]) -> int:
    """Exact rank via fraction-free elimination on integer-scaled rows."""
    M = _integer_rows(rows)
    if not M:
        return 0
    ncols = len(M[0])
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        p = M[r]
        pc = p[c]
        for i in range(r + 1, len(M)):
            q = M[i]
            qc = q[c]
            if qc:
                new = [pc * a - qc * b for a, b in zip(q, p)]
                g = 0
                for v in new:
                    g = gcd(g, v)
                M[i] = [v // g for v in new] if g > 1 else new
        r += 1
        if r == len(M):
            break
    return r


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form over the rationals; returns (nonzero rows, pivot columns)."""
    M = [[Fraction(v) for v in row] for row in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    """Basis of {v : A v = 0}, one vector per free column."""
    R, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(R, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def rank_and_nullspace(A: SystemMatrix) -> RankReport:
    """Rank of A and the homogeneous solutions as standard-basis polynomials (monic)."""
    d = A.ncols - 1
    R, pivots = rref(A.entries, A.ncols)
    basis = []
    for v in nullspace(A.entries, A.ncols):
        g = Polynomial(tuple(v[j] / factorial(j) for j in range(d + 1)), d)
        basis.append(g.monic())
    rk = len(pivots)
    return RankReport(rk, tuple(basis), rk == len(A.entries))


def pair_is_regular(p: PairEX) -> bool:
    """True iff A(E, X) has full row rank |E|."""
    if p.E.count > p.d + 1:
        raise OverdeterminedError("|E| = %d exceeds d+1 = %d" % (p.E.count, p.d + 1))
    return rank(build_system(p).entries) == p.E.count


def pair_rank(p: PairEX) -> int:
    return rank(build_system(p).entries)


def split_pair(p: PairEX, r: int) -> tuple[PairEX, PairEX]:
    """Cut E after column r: left keeps derivative orders 0..r, right the orders r+1..d (renumbered from 0)."""
    if not 0 <= r < p.d:
        raise ValueError("split column must satisfy 0 <= r < d (r=%d, d=%d)" % (r, p.d))
    left = PairEX(p.E.columns(0, r + 1), p.knots)
    right = PairEX(p.E.columns(r + 1, p.d + 1), p.knots)
    return left, right


def verify_block_form(p: PairEX, r: int) -> bool:
    """Check A(E,X) = [[A(E1,X), *], [0, A(E2,X)]] in canonical order, and rank superadditivity."""
    left, right = split_pair(p, r)
    A = build_system(p)
    A1 = build_system(left)
    A2 = build_system(right)
    n1 = len(A1.entries)
    if len(A.entries) != n1 + len(A2.entries):
        return False
    if any(k > r for _, k in A.row_labels[:n1]) or any(k <= r for _, k in A.row_labels[n1:]):
        return False
    for row, sub in zip(A.entries[:n1], A1.entries):
        if row[: r + 1] != sub:
            return False
    for row, sub in zip(A.entries[n1:], A2.entries):
        if any(row[: r + 1]) or row[r + 1:] != sub:
            return False
    return rank(A.entries) >= rank(A1.entries) + rank(A2.entries)
