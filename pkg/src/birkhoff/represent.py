"""Explicit representations as sums of shifted powers.

Includes the greedy decomposition using at most ceil((d+1)/2) terms, the hard
polynomials H1, H2, H3, and the roots-of-unity identity over the complex
numbers (checked numerically, with its exact root-of-unity lemma checked
in integer arithmetic).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import NamedTuple, Sequence

from birkhoff.poly import (
    Polynomial,
    ShiftedPower,
    expand,
    format_rational,
    format_shifted_power,
    to_rational,
)


class Term(NamedTuple):
    coeff: Fraction
    shift: Fraction
    exp: int


@dataclass(frozen=True)
class Decomposition:
    terms: tuple[Term, ...]

    def __len__(self) -> int:
        return len(self.terms)

    def to_polynomial(self, d: int) -> Polynomial:
        acc = Polynomial.zero(d)
        for t in self.terms:
            acc = acc + expand(ShiftedPower(t.shift, t.exp), d).scale(t.coeff)
        return acc

    def to_json(self) -> list[dict]:
        return [
            {"coeff": format_rational(t.coeff), "shift": format_rational(t.shift), "exp": t.exp}
            for t in self.terms
        ]

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for t in self.terms:
            parts.append("%s*%s" % (format_rational(t.coeff), format_shifted_power(t.shift, t.exp)))
        return " + ".join(parts)


def greedy_decompose(f: Polynomial) -> Decomposition:
    """Peel a_n (x + a_(n-1)/(n a_n))^n off the top and recurse on the remainder.

    Each step kills the two leading coefficients, so at most
    ceil((deg f + 1)/2) terms are emitted.
    """
    terms = []
    g = f
    while True:
        n = g.degree
        if n < 0:
            break
        lead = g.coeffs[n]
        if n == 0:
            terms.append(Term(lead, Fraction(0), 0))
            break
        y = g.coeffs[n - 1] / (n * lead)
        terms.append(Term(lead, y, n))
        g = g - expand(ShiftedPower(y, n), g.d).scale(lead)
    return Decomposition(tuple(terms))


def hard_h1(shifts: Sequence, coeffs: Sequence, d: int) -> Polynomial:
    """sum alpha_i (x + x_i)^d with distinct shifts and nonzero coefficients."""
    shifts = [to_rational(x) for x in shifts]
    coeffs = [to_rational(a) for a in coeffs]
    if len(shifts) != len(coeffs):
        raise ValueError("need one coefficient per shift")
    if len(set(shifts)) != len(shifts):
        raise ValueError("shifts must be distinct")
    if any(a == 0 for a in coeffs):
        raise ValueError("coefficients must be nonzero")
    acc = Polynomial.zero(d)
    for a, x in zip(coeffs, shifts):
        acc = acc + expand(ShiftedPower(x, d), d).scale(a)
    return acc


def hard_h2(d: int) -> Polynomial:
    """(x+1)^(d+1) - x^(d+1), of degree exactly d."""
    top = expand(ShiftedPower(1, d + 1), d + 1) - expand(ShiftedPower(0, d + 1), d + 1)
    return top.with_degree(d)


def hard_h3(d: int) -> Polynomial:
    """(x+1)^(d+1) - (x-1)^(d+1), of degree exactly d."""
    top = expand(ShiftedPower(1, d + 1), d + 1) - expand(ShiftedPower(-1, d + 1), d + 1)
    return top.with_degree(d)


# -- complex identity -------------------------------------------------------

@dataclass(frozen=True)
class ComplexIdentity:
    """sum_{j=1..k} xi^j (x + xi^j mu)^d = sum_{i = -1 mod k} k C(d,i) mu^i x^(d-i), xi = exp(2 pi i/k).

    ``lhs`` holds the root exponents j; ``rhs`` holds (coefficient, power of x).
    """

    k: int
    d: int
    mu: Fraction
    lhs: tuple[int, ...]
    rhs: tuple[tuple[Fraction, int], ...]

    def format_lhs(self) -> str:
        mu = format_rational(self.mu)
        if self.mu < 0:
            mu = "(%s)" % mu
        return " + ".join("xi^%d*(x + xi^%d*%s)^%d" % (j, j, mu, self.d) for j in self.lhs)

    def format_rhs(self) -> str:
        if not self.rhs:
            return "0"
        return " + ".join(_format_monomial(c, e) for c, e in self.rhs)

    def __str__(self) -> str:
        return "%s = %s   (xi = exp(2*pi*i/%d))" % (self.format_lhs(), self.format_rhs(), self.k)


def _format_monomial(c: Fraction, e: int) -> str:
    if e == 0:
        return format_rational(c)
    mono = "x" if e == 1 else "x^%d" % e
    if c == 1:
        return mono
    return "%s%s" % (format_rational(c), mono) if c.denominator == 1 else "(%s)%s" % (format_rational(c), mono)


def roots_of_unity_identity(k: int, d: int, mu) -> ComplexIdentity:
    if k < 1 or d < 1:
        raise ValueError("need k >= 1 and d >= 1")
    mu = to_rational(mu)
    rhs = tuple(
        (k * comb(d, i) * mu ** i, d - i)
        for i in range(d + 1)
        if i % k == k - 1
    )
    return ComplexIdentity(k, d, mu, tuple(range(1, k + 1)), rhs)


def cyclotomic(n: int) -> list[int]:
    """Integer coefficients of the n-th cyclotomic polynomial, lowest power first."""
    num = [-1] + [0] * (n - 1) + [1]
    for m in range(1, n):
        if n % m == 0:
            num = _exact_divide(num, cyclotomic(m))
    return num


def _exact_divide(num: list[int], den: list[int]) -> list[int]:
    num = num[:]
    q = [0] * (len(num) - len(den) + 1)
    for i in range(len(q) - 1, -1, -1):
        c = num[i + len(den) - 1] // den[-1]
        q[i] = c
        for j, b in enumerate(den):
            num[i + j] -= c * b
    if any(num):
        raise ArithmeticError("inexact cyclotomic division")
    return q


def _reduce_mod(poly: list[int], monic: list[int]) -> list[int]:
    poly = poly[:]
    n = len(monic) - 1
    for top in range(len(poly) - 1, n - 1, -1):
        c = poly[top]
        if c:
            for j, b in enumerate(monic):
                poly[top - n + j] -= c * b
    return poly[:n] + [0] * max(0, n - len(poly))


def root_sum_exact(k: int, i: int) -> int | None:
    """Exact value of sum_{j=1..k} xi^(j(i+1)) for a primitive k-th root xi, when it is an integer.

    The sum is reduced modulo the k-th cyclotomic polynomial; returns the
    constant if the reduced form is constant, else None.
    """
    counts = [0] * k
    for j in range(1, k + 1):
        counts[(j * (i + 1)) % k] += 1
    red = _reduce_mod(counts, cyclotomic(k))
    if any(red[1:]):
        return None
    return red[0]


def congruence_lemma_holds(k: int, d: int) -> bool:
    """sum_j xi^(j(i+1)) is k when i = -1 mod k and 0 otherwise, for every 0 <= i <= d."""
    for i in range(d + 1):
        want = k if (i + 1) % k == 0 else 0
        if root_sum_exact(k, i) != want:
            return False
    return True


def _side_values(ident: ComplexIdentity, x: float) -> tuple[complex, complex, float]:
    xi = cmath.exp(2j * math.pi / ident.k)
    mu = float(ident.mu)
    lhs = 0j
    scale = 0.0
    for j in ident.lhs:
        w = xi ** j
        term = w * (x + w * mu) ** ident.d
        lhs += term
        scale += abs(term)
    rhs = 0j
    for c, e in ident.rhs:
        term = float(c) * x ** e
        rhs += term
        scale += abs(term)
    return lhs, rhs, scale


def verify_complex_identity(ident: ComplexIdentity, tol: float = 1e-9) -> bool:
    """Evaluate both sides at d+2 points; discrepancy is measured relative to the size of the terms."""
    if tol <= 0:
        raise ValueError("tolerance must be positive")
    if not congruence_lemma_holds(ident.k, ident.d):
        return False
    n = ident.d + 2
    worst = 0.0
    for t in range(n):
        x = math.cos(math.pi * (t + 0.5) / n)
        lhs, rhs, scale = _side_values(ident, x)
        worst = max(worst, abs(lhs - rhs) / max(1.0, scale))
    return worst <= tol
