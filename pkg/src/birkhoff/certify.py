"""Regularity certificates and the lower-bound checks built on them.

A certificate is a small tree whose nodes are one of

* ``tail``  -- the tail-count condition holds, so E is regular for any knots;
* ``as``    -- |E| = d+1, Polya condition and no odd supported sequence once
  the rows are sorted by knot;
* ``split`` -- column split at r with |E1| <= r+1 and |E2| <= d-r, both halves
  certified (block upper-triangular system);
* ``rank``  -- exact rank of A(E, X) equals |E|.

:func:`verify_certificate` re-checks every node from scratch.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from birkhoff.comb import (
    InterpolationMatrix,
    atkinson_sharma,
    slope_split_indices,
    tail_counts,
    theorem_regular_condition,
)
from birkhoff.duality import dependence_relation, to_dual
from birkhoff.linalg import (
    OverdeterminedError,
    PairEX,
    build_system,
    pair_rank,
    rank,
    rank_and_nullspace,
    split_pair,
)
from birkhoff.poly import (
    Polynomial,
    PowerFamily,
    ShiftedPower,
    expand,
    format_rational,
    parse_rational,
    to_rational,
)
from birkhoff.represent import Term

RULES = ("tail", "as", "split", "rank")


class IrregularPairError(Exception):
    """The pair is not regular; ``witness`` is a nonzero solution beyond the expected dimension."""

    def __init__(self, message: str, witness: Polynomial, rank: int, relation=None):
        super().__init__(message)
        self.witness = witness
        self.rank = rank
        self.relation = relation


@dataclass(frozen=True)
class Certificate:
    rule: str
    pair: PairEX
    r: int | None = None
    rank: int | None = None
    children: tuple[Certificate, ...] = ()

    def to_json(self) -> dict:
        out = {
            "rule": self.rule,
            "matrix": self.pair.E.text(),
            "knots": [format_rational(x) for x in self.pair.knots],
        }
        if self.r is not None:
            out["r"] = self.r
        if self.rank is not None:
            out["rank"] = self.rank
        out["children"] = [c.to_json() for c in self.children]
        return out

    def dumps(self, **kw) -> str:
        return json.dumps(self.to_json(), **kw)

    @classmethod
    def from_json(cls, data) -> Certificate:
        if isinstance(data, str):
            data = json.loads(data)
        pair = PairEX(
            InterpolationMatrix.parse(data["matrix"]),
            tuple(parse_rational(str(x)) for x in data["knots"]),
        )
        return cls(
            data["rule"],
            pair,
            data.get("r"),
            data.get("rank"),
            tuple(cls.from_json(c) for c in data.get("children", ())),
        )

    def shape(self) -> str:
        """Compact rule tree, e.g. ``split(tail,rank)``."""
        if not self.children:
            return self.rule
        return "%s(%s)" % (self.rule, ",".join(c.shape() for c in self.children))

    def render(self, indent: int = 0) -> str:
        pad = "  " * indent
        extra = ""
        if self.rule == "split":
            extra = " r=%d" % self.r
        elif self.rule == "rank":
            extra = " rank=%d" % self.rank
        line = "%s%s%s  [%s]" % (pad, self.rule, extra, self.pair.text())
        return "\n".join([line] + [c.render(indent + 1) for c in self.children])


def _irregular(p: PairEX) -> IrregularPairError:
    report = rank_and_nullspace(build_system(p))
    witness = report.nullspace_basis[0]
    return IrregularPairError(
        "pair %s is not regular (rank %d < |E| = %d)" % (p.text(), report.rank, p.E.count),
        witness,
        report.rank,
    )


def _knot_order(p: PairEX) -> list[int]:
    return sorted(range(p.E.m), key=lambda i: p.knots[i])


def _passes_atkinson_sharma(p: PairEX) -> bool:
    if p.E.count != p.d + 1:
        return False
    return atkinson_sharma(p.E.permute_rows(_knot_order(p)))


def split_candidates(E: InterpolationMatrix) -> list[int]:
    """Column counts s of the right block, slope-lemma indices first (largest first)."""
    N = tail_counts(E)
    slope = sorted(slope_split_indices(N), reverse=True)
    rest = [s for s in range(E.d, 0, -1) if s not in slope]
    return [s for s in slope if 1 <= s <= E.d] + rest


@lru_cache(maxsize=4096)
def _certify_by_rules(p: PairEX) -> Certificate | None:
    if theorem_regular_condition(p.E):
        return Certificate("tail", p)
    if _passes_atkinson_sharma(p):
        return Certificate("as", p)
    d = p.d
    for s in split_candidates(p.E):
        r = d - s
        left, right = split_pair(p, r)
        if left.E.count > r + 1 or right.E.count > d - r:
            continue
        left_cert = _certify_by_rules(left)
        if left_cert is None:
            continue
        rk = pair_rank(right)
        if rk == right.E.count:
            return Certificate("split", p, r=r, children=(left_cert, Certificate("rank", right, rank=rk)))
    return None


def certify_regular(p: PairEX) -> Certificate:
    """Certificate of regularity, or :class:`IrregularPairError` with a nullspace witness.

    Tries the tail-count rule, the Atkinson-Sharma rule, column splits in
    slope-lemma order, and finally the exact rank of the whole system.
    """
    if p.E.count > p.d + 1:
        raise OverdeterminedError("|E| = %d exceeds d+1 = %d" % (p.E.count, p.d + 1))
    cert = _certify_by_rules(p)
    if cert is not None:
        return cert
    rk = pair_rank(p)
    if rk == p.E.count:
        return Certificate("rank", p, rank=rk)
    raise _irregular(p)


def verify_certificate(c: Certificate) -> bool:
    try:
        return _verify(c)
    except (ValueError, TypeError, IndexError, KeyError):
        return False


def _verify(c: Certificate) -> bool:
    p = c.pair
    if c.rule not in RULES or p.E.count > p.d + 1:
        return False
    if c.rule == "tail":
        return not c.children and theorem_regular_condition(p.E)
    if c.rule == "as":
        return not c.children and _passes_atkinson_sharma(p)
    if c.rule == "rank":
        return (
            not c.children
            and c.rank == p.E.count
            and rank(build_system(p).entries) == c.rank
        )
    # split
    r = c.r
    if not isinstance(r, int) or not 0 <= r < p.d or len(c.children) != 2:
        return False
    left, right = split_pair(p, r)
    lc, rc = c.children
    if lc.pair != left or rc.pair != right:
        return False
    if left.E.count > r + 1 or right.E.count > p.d - r:
        return False
    return _verify(lc) and _verify(rc)


# -- lower bounds -----------------------------------------------------------

def lbtool_threshold(k: int, l: int, d: int) -> bool:
    """Whether k + l > (d+2)/2, the necessary condition for an identity to exist."""
    return 2 * (k + l) > d + 2


@dataclass(frozen=True)
class BoundInstance:
    """Candidate identity  sum alpha_i (x+x_i)^D = sum beta_i (x+y_i)^(e_i)  with all e_i < D."""

    lhs: tuple[tuple[Fraction, ShiftedPower], ...]
    rhs: tuple[ShiftedPower, ...]
    D: int

    def __post_init__(self):
        lhs = tuple((to_rational(a), t if isinstance(t, ShiftedPower) else ShiftedPower(*t)) for a, t in self.lhs)
        rhs = tuple(t if isinstance(t, ShiftedPower) else ShiftedPower(*t) for t in self.rhs)
        if not lhs:
            raise ValueError("left-hand side is empty")
        if any(a == 0 for a, _ in lhs):
            raise ValueError("left-hand coefficients must be nonzero")
        if any(t.exp != self.D for _, t in lhs):
            raise ValueError("left-hand powers must all have exponent D = %d" % self.D)
        if len({t.shift for _, t in lhs}) != len(lhs):
            raise ValueError("left-hand shifts must be distinct")
        if any(t.exp >= self.D for t in rhs):
            raise ValueError("right-hand exponents must be < D = %d" % self.D)
        object.__setattr__(self, "lhs", lhs)
        object.__setattr__(self, "rhs", rhs)

    @property
    def k(self) -> int:
        return len(self.lhs)

    @property
    def l(self) -> int:
        return len(self.rhs)

    def family(self) -> PowerFamily:
        return PowerFamily(tuple(t for _, t in self.lhs) + self.rhs, self.D)

    @classmethod
    def from_json(cls, data) -> BoundInstance:
        if isinstance(data, str):
            data = json.loads(data)
        D = int(data["degree"])
        lhs = tuple(
            (parse_rational(str(item.get("coeff", 1))), ShiftedPower(parse_rational(str(item["shift"])), D))
            for item in data["lhs"]
        )
        rhs = tuple(ShiftedPower(parse_rational(str(item["shift"])), int(item["exp"])) for item in data["rhs"])
        return cls(lhs, rhs, D)


def refute_identity(inst: BoundInstance) -> Certificate:
    """Certify that the combined family is independent, so no nontrivial identity exists."""
    fam = inst.family()
    pair = to_dual(fam).pair
    try:
        return certify_regular(pair)
    except IrregularPairError as err:
        err.relation = dependence_relation(fam)
        raise


def independent_subfamily(terms: Iterable[ShiftedPower], d: int) -> list[ShiftedPower]:
    """Greedy maximal independent subfamily, keeping the input order."""
    kept: list[ShiftedPower] = []
    rows: list = []
    for t in dict.fromkeys(terms):
        trial = rows + [expand(t, d).coeffs]
        if rank(trial) == len(trial):
            kept.append(t)
            rows = trial
    return kept


@dataclass(frozen=True)
class LowerBoundVerdict:
    theorem: str
    d: int
    k: int | None
    min_terms: int
    candidate_terms: int | None = None
    reproduces: bool | None = None
    respects_bound: bool | None = None
    certificate: Certificate | None = None
    consistent: bool = True

    def to_json(self) -> dict:
        out = {
            "theorem": self.theorem,
            "d": self.d,
            "k": self.k,
            "min_terms": self.min_terms,
            "candidate_terms": self.candidate_terms,
            "reproduces": self.reproduces,
            "respects_bound": self.respects_bound,
            "consistent": self.consistent,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


def _as_terms(candidate) -> list[Term]:
    out = []
    for t in candidate:
        t = t if isinstance(t, Term) else Term(*t)
        if t.coeff != 0:
            out.append(t)
    return out


def _sum_terms(terms: Sequence[Term], d: int) -> Polynomial:
    acc = Polynomial.zero(d)
    for t in terms:
        acc = acc + expand(ShiftedPower(t.shift, t.exp), d).scale(t.coeff)
    return acc


def _merge(coeffs: dict, shift, c) -> None:
    coeffs[shift] = coeffs.get(shift, Fraction(0)) + c


def _h1_hypothesis(shifts, coeffs, d) -> tuple[list[Fraction], list[Fraction]]:
    shifts = [to_rational(x) for x in shifts]
    coeffs = [Fraction(1)] * len(shifts) if coeffs is None else [to_rational(a) for a in coeffs]
    k = len(shifts)
    if k < 1 or len(coeffs) != k:
        raise ValueError("need one nonzero coefficient per shift")
    if len(set(shifts)) != k or any(a == 0 for a in coeffs):
        raise ValueError("H1 needs distinct shifts and nonzero coefficients")
    if 4 * k > d + 2:
        raise ValueError("hypothesis k <= (d+2)/4 violated (k=%d, d=%d)" % (k, d))
    return shifts, coeffs


def _refute_or_flag(lhs_coeffs: dict, rhs_terms, D: int) -> tuple[Certificate | None, bool]:
    lhs = tuple((c, ShiftedPower(s, D)) for s, c in lhs_coeffs.items() if c != 0)
    rhs = tuple(independent_subfamily(rhs_terms, D))
    if not lhs:
        return None, False
    try:
        return refute_identity(BoundInstance(lhs, rhs, D)), True
    except IrregularPairError:
        return None, False


def check_lb1(d: int, shifts, coeffs=None, candidate=None) -> LowerBoundVerdict:
    """First lower bound: H1 = sum alpha_i (x+x_i)^d with k <= (d+2)/4 needs l >= k terms of degree <= d."""
    shifts, coeffs = _h1_hypothesis(shifts, coeffs, d)
    return _lb1(d, shifts, coeffs, candidate, "lb1")


def _lb1(d, shifts, coeffs, candidate, name) -> LowerBoundVerdict:
    k = len(shifts)
    if candidate is None:
        return LowerBoundVerdict(name, d, k, k)
    terms = _as_terms(candidate)
    if any(t.exp > d for t in terms):
        raise ValueError("candidate exponents must be <= d for this bound")
    target = _sum_terms([Term(a, x, d) for a, x in zip(coeffs, shifts)], d)
    reproduces = _sum_terms(terms, d) == target
    l = len(terms)
    if l >= k:
        return LowerBoundVerdict(name, d, k, k, l, reproduces, True)
    lhs: dict = {}
    for a, x in zip(coeffs, shifts):
        _merge(lhs, x, a)
    for t in terms:
        if t.exp == d:
            _merge(lhs, t.shift, -t.coeff)
    rhs = [ShiftedPower(t.shift, t.exp) for t in terms if t.exp < d]
    cert, ok = _refute_or_flag(lhs, rhs, d)
    return LowerBoundVerdict(name, d, k, k, l, reproduces, False, cert, ok and not reproduces)


def check_lb2(d: int, candidate=None) -> LowerBoundVerdict:
    """Second lower bound: H2 = (x+1)^(d+1) - x^(d+1) needs l > (d-1)/2 terms of degree <= d."""
    if d < 1:
        raise ValueError("d must be positive")
    bound = (d - 1) // 2 + 1
    if candidate is None:
        return LowerBoundVerdict("lb2", d, 2, bound)
    terms = _as_terms(candidate)
    if any(t.exp > d for t in terms):
        raise ValueError("candidate exponents must be <= d for the second bound")
    target = _sum_terms([Term(Fraction(1), Fraction(1), d + 1), Term(Fraction(-1), Fraction(0), d + 1)], d + 1)
    reproduces = _sum_terms(terms, d + 1) == target
    l = len(terms)
    if l >= bound:
        return LowerBoundVerdict("lb2", d, 2, bound, l, reproduces, True)
    lhs = {Fraction(1): Fraction(1), Fraction(0): Fraction(-1)}
    rhs = [ShiftedPower(t.shift, t.exp) for t in terms]
    cert, ok = _refute_or_flag(lhs, rhs, d + 1)
    return LowerBoundVerdict("lb2", d, 2, bound, l, reproduces, False, cert, ok and not reproduces)


def check_lb3(d: int, shifts, coeffs=None, candidate=None) -> LowerBoundVerdict:
    """Third lower bound: same H1, arbitrary exponents allowed; still l >= k."""
    shifts, coeffs = _h1_hypothesis(shifts, coeffs, d)
    k = len(shifts)
    if candidate is None:
        return LowerBoundVerdict("lb3", d, k, k)
    terms = _as_terms(candidate)
    n = max((t.exp for t in terms), default=0)
    if n <= d:
        return _lb1(d, shifts, coeffs, terms, "lb3")
    target = _sum_terms([Term(a, x, d) for a, x in zip(coeffs, shifts)], n)
    reproduces = _sum_terms(terms, n) == target
    l = len(terms)
    if l >= k:
        return LowerBoundVerdict("lb3", d, k, k, l, reproduces, True)
    lhs: dict = {}
    for t in terms:
        if t.exp == n:
            _merge(lhs, t.shift, t.coeff)
    rhs = [ShiftedPower(x, d) for x in shifts] + [ShiftedPower(t.shift, t.exp) for t in terms if t.exp < n]
    cert, ok = _refute_or_flag(lhs, rhs, n)
    return LowerBoundVerdict("lb3", d, k, k, l, reproduces, False, cert, ok and not reproduces)
