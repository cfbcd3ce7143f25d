"""Linear independence of shifted powers through the dual interpolation problem.

The family (x+a_i)^(e_i) in degree <= d is independent exactly when the
conditions g^(d-e_i)(a_i) = 0 cut out a space of dimension d+1-k, i.e. when
the pair built by :func:`to_dual` is regular.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from birkhoff.comb import InterpolationMatrix
from birkhoff.linalg import OverdeterminedError, PairEX, nullspace, pair_is_regular, rank
from birkhoff.poly import PowerFamily, ShiftedPower, expand, format_rational, parse_rational


@dataclass(frozen=True)
class DualProblem:
    pair: PairEX
    cell_of_term: tuple[tuple[int, int], ...]


def to_dual(fam: PowerFamily) -> DualProblem:
    """Interpolation pair of a family: term (a, e) becomes a 1 at (row of knot a, column d-e).

    Knots are the distinct shifts in ascending order.
    """
    d = fam.d
    knots = sorted({t.shift for t in fam})
    row_of = {a: i for i, a in enumerate(knots)}
    bits = [[0] * (d + 1) for _ in knots]
    cells = []
    for t in fam:
        i, k = row_of[t.shift], d - t.exp
        if bits[i][k]:
            raise ValueError("duplicate term %s" % t)
        bits[i][k] = 1
        cells.append((i, k))
    E = InterpolationMatrix(tuple(map(tuple, bits)), d + 1)
    return DualProblem(PairEX(E, tuple(knots)), tuple(cells))


def independent_via_duality(fam: PowerFamily) -> bool:
    if len(fam) > fam.d + 1:
        raise OverdeterminedError("%d polynomials in a space of dimension %d" % (len(fam), fam.d + 1))
    return pair_is_regular(to_dual(fam).pair)


def coefficient_matrix(fam: PowerFamily) -> list[tuple[Fraction, ...]]:
    return [expand(t, fam.d).coeffs for t in fam]


def independent_via_oracle(fam: PowerFamily) -> bool:
    """Expand every term and test whether the k x (d+1) coefficient matrix has rank k."""
    return rank(coefficient_matrix(fam)) == len(fam)


def dependence_relation(fam: PowerFamily) -> list[Fraction] | None:
    """Coefficients c with sum c_i (x+a_i)^(e_i) = 0, or None if the family is independent."""
    cols = coefficient_matrix(fam)
    transposed = [[cols[i][j] for i in range(len(fam))] for j in range(fam.d + 1)]
    basis = nullspace(transposed, len(fam))
    if not basis:
        return None
    v = basis[0]
    lead = next(c for c in v if c)
    return [c / lead for c in v]


def independence_counts(fam: PowerFamily) -> list[int]:
    """n[j] = number of terms of degree < j, for j = 0..d+1."""
    return [sum(1 for t in fam if t.exp < j) for j in range(fam.d + 2)]


def independence_condition_failures(fam: PowerFamily) -> list[int]:
    n = independence_counts(fam)
    bad = [1] if n[1] > 1 else []
    bad += [j for j in range(2, fam.d + 2) if n[j] + n[j - 1] > j]
    return bad


def theorem_independence_check(fam: PowerFamily) -> bool:
    """n_1 <= 1 and n_j + n_(j-1) <= j for j = 2..d+1; sufficient for independence."""
    return not independence_condition_failures(fam)


# -- JSON family format -----------------------------------------------------

def family_from_json(data) -> PowerFamily:
    """Accept ``[{"shift": "p/q", "exp": n}, ...]`` or ``{"degree": d, "terms": [...]}``."""
    if isinstance(data, str):
        data = json.loads(data)
    degree = None
    if isinstance(data, dict):
        degree = data.get("degree")
        data = data.get("terms", data.get("family"))
    if not isinstance(data, list):
        raise ValueError("family JSON must be an array of {shift, exp} objects")
    terms = []
    for item in data:
        shift = item["shift"]
        shift = parse_rational(shift) if isinstance(shift, str) else Fraction(shift)
        exp = item["exp"]
        if not isinstance(exp, int) or isinstance(exp, bool):
            raise ValueError("exponent must be an integer: %r" % (exp,))
        terms.append(ShiftedPower(shift, exp))
    return PowerFamily.of(terms, degree)


def family_to_json(fam: PowerFamily) -> dict:
    return {
        "degree": fam.d,
        "terms": [{"shift": format_rational(t.shift), "exp": t.exp} for t in fam],
    }
