"""Combinatorics of interpolation matrices.

Row ``i`` of an interpolation matrix is a knot, column ``k`` a derivative
order; a 1 at ``(i, k)`` means the k-th derivative is constrained at the
i-th knot. Everything here is knot-free.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import NamedTuple, Sequence


@dataclass(frozen=True)
class InterpolationMatrix:
    rows: tuple[tuple[int, ...], ...]
    ncols: int

    def __post_init__(self):
        if self.ncols < 1:
            raise ValueError("an interpolation matrix needs at least one column")
        rows = tuple(tuple(int(b) for b in row) for row in self.rows)
        for row in rows:
            if len(row) != self.ncols:
                raise ValueError("ragged interpolation matrix")
            if any(b not in (0, 1) for b in row):
                raise ValueError("entries must be 0 or 1")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]]) -> InterpolationMatrix:
        rows = [tuple(r) for r in rows]
        if not rows:
            raise ValueError("an interpolation matrix needs at least one row")
        return cls(tuple(rows), len(rows[0]))

    @classmethod
    def parse(cls, text: str) -> InterpolationMatrix:
        """Parse the ``"100100;100010;100100"`` text format."""
        parts = [p.strip() for p in text.strip().split(";")]
        if not parts or any(not p for p in parts):
            raise ValueError("empty row in matrix text %r" % text)
        if any(set(p) - {"0", "1"} for p in parts):
            raise ValueError("matrix rows must consist of 0/1 characters: %r" % text)
        if len({len(p) for p in parts}) != 1:
            raise ValueError("ragged rows in matrix text %r" % text)
        return cls.from_rows([[int(c) for c in p] for p in parts])

    @classmethod
    def empty(cls, m: int, d: int) -> InterpolationMatrix:
        return cls(((0,) * (d + 1),) * m, d + 1)

    def text(self) -> str:
        return ";".join("".join(map(str, row)) for row in self.rows)

    def __str__(self) -> str:
        return self.text()

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def d(self) -> int:
        return self.ncols - 1

    @property
    def count(self) -> int:
        """|E|, the number of 1's."""
        return sum(map(sum, self.rows))

    def ones(self) -> list[tuple[int, int]]:
        """Positions of the 1's in column-major order (derivative order, then row)."""
        return [(i, k) for k in range(self.ncols) for i in range(self.m) if self.rows[i][k]]

    def column_counts(self) -> list[int]:
        return [sum(row[k] for row in self.rows) for k in range(self.ncols)]

    def columns(self, start: int, stop: int) -> InterpolationMatrix:
        return InterpolationMatrix(tuple(row[start:stop] for row in self.rows), stop - start)

    def with_one(self, i: int, k: int) -> InterpolationMatrix:
        rows = [list(r) for r in self.rows]
        rows[i][k] = 1
        return InterpolationMatrix.from_rows(rows)

    def permute_rows(self, order: Sequence[int]) -> InterpolationMatrix:
        return InterpolationMatrix(tuple(self.rows[i] for i in order), self.ncols)

    def pad_rows(self, extra: int) -> InterpolationMatrix:
        return InterpolationMatrix(self.rows + ((0,) * self.ncols,) * extra, self.ncols)

    def issubset(self, other: InterpolationMatrix) -> bool:
        if (self.m, self.ncols) != (other.m, other.ncols):
            return False
        return all(a <= b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))


class SequenceSpan(NamedTuple):
    row: int
    start_col: int
    length: int


def tail_counts(E: InterpolationMatrix) -> list[int]:
    """N[t] = number of 1's in the last t columns, t = 0..d+1."""
    cols = E.column_counts()
    out = [0]
    for c in reversed(cols):
        out.append(out[-1] + c)
    return out


def upper_polya(E: InterpolationMatrix) -> bool:
    N = tail_counts(E)
    return all(N[r] <= r for r in range(1, E.ncols + 1))


def polya(E: InterpolationMatrix) -> bool:
    if E.count != E.ncols:
        raise ValueError("the Polya condition needs |E| = d+1 (|E| = %d, d+1 = %d)" % (E.count, E.ncols))
    cols = E.column_counts()
    acc = 0
    for r in range(1, E.ncols + 1):
        acc += cols[r - 1]
        if acc < r:
            return False
    return True


def sequences(E: InterpolationMatrix) -> list[SequenceSpan]:
    out = []
    for i, row in enumerate(E.rows):
        k = 0
        while k < E.ncols:
            if row[k]:
                start = k
                while k < E.ncols and row[k]:
                    k += 1
                out.append(SequenceSpan(i, start, k - start))
            else:
                k += 1
    return out


def is_supported(E: InterpolationMatrix, span: SequenceSpan) -> bool:
    i, k = span.row, span.start_col
    north = any(E.rows[i1][k1] for i1 in range(i) for k1 in range(k))
    south = any(E.rows[i2][k2] for i2 in range(i + 1, E.m) for k2 in range(k))
    return north and south


def odd_supported_sequences(E: InterpolationMatrix) -> list[SequenceSpan]:
    return [s for s in sequences(E) if s.length % 2 == 1 and is_supported(E, s)]


def atkinson_sharma(E: InterpolationMatrix) -> bool:
    """Polya condition and no odd supported sequence; sufficient for order regularity."""
    if E.count != E.ncols:
        raise ValueError("the Atkinson-Sharma criterion needs |E| = d+1")
    return polya(E) and not odd_supported_sequences(E)


def odd_sequences_start_in_first_column(E: InterpolationMatrix) -> bool:
    return all(s.start_col == 0 for s in sequences(E) if s.length % 2 == 1)


def tail_condition_failures(E: InterpolationMatrix) -> list[int]:
    """Indices r at which N_1 <= 1 (r=1) or N_r + N_{r-1} <= r (r>=2) fails."""
    N = tail_counts(E)
    bad = [1] if N[1] > 1 else []
    bad += [r for r in range(2, E.ncols + 1) if N[r] + N[r - 1] > r]
    return bad


def theorem_regular_condition(E: InterpolationMatrix) -> bool:
    """Tail-count condition guaranteeing regularity of E for every knot set."""
    return not tail_condition_failures(E)


def complete_matrix(F: InterpolationMatrix) -> InterpolationMatrix:
    """Extend F to a Polya matrix whose odd sequences all start in column 0.

    First every odd sequence not starting in column 0 gets a 1 immediately to
    its left (top row first, left to right, rescanning after each insertion);
    then rows ``10...0`` are appended until |E| = d+1.
    """
    if not theorem_regular_condition(F):
        raise ValueError("tail-count condition fails at r = %s" % tail_condition_failures(F))
    E = F
    while True:
        todo = [s for s in sequences(E) if s.length % 2 == 1 and s.start_col > 0]
        if not todo:
            break
        s = todo[0]
        E = E.with_one(s.row, s.start_col - 1)
    missing = E.ncols - E.count
    if missing < 0 or not upper_polya(E):
        raise ValueError("completion violates the upper Polya condition")
    lagrange_row = (1,) + (0,) * E.d
    return InterpolationMatrix(E.rows + (lagrange_row,) * missing, E.ncols)


def slope_split_indices(u: Sequence) -> list[int]:
    """All s in 0..n-1 with (u[s+t]-u[s])/t <= (u[n]-u[0])/n for t = 1..n-s."""
    n = len(u) - 1
    if n < 1:
        raise ValueError("need a sequence u_0..u_n with n >= 1")
    if not all(isinstance(v, int) for v in u):
        u = [Fraction(v) for v in u]
    total = u[n] - u[0]
    return [
        s
        for s in range(n)
        if all((u[s + t] - u[s]) * n <= total * t for t in range(1, n - s + 1))
    ]


def iter_matrices(m: int, d: int, ones: int | None = None, nonempty_rows: bool = False):
    """Every m x (d+1) interpolation matrix, optionally with exactly ``ones`` 1's.

    With ``nonempty_rows`` only matrices without all-zero rows are produced;
    deleting an empty row (and its knot) changes neither A(E, X) nor any of
    the combinatorial criteria.
    """
    ncols = d + 1
    rows_by_weight: dict[int, list[tuple[int, ...]]] = {}
    for w in range(ncols + 1):
        for picked in combinations(range(ncols), w):
            rows_by_weight.setdefault(w, []).append(tuple(int(c in picked) for c in range(ncols)))
    lo = 1 if nonempty_rows else 0

    def rec(i: int, left: int | None):
        if i == m:
            if not left:
                yield ()
            return
        for w in range(lo, ncols + 1):
            if left is not None and w > left:
                break
            rest = None if left is None else left - w
            for row in rows_by_weight[w]:
                for tail in rec(i + 1, rest):
                    yield (row,) + tail

    for rows in rec(0, ones):
        yield InterpolationMatrix(rows, ncols)
