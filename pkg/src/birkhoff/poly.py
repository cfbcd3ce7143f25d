"""Exact rational scalars and dense univariate polynomials.

Rationals are :class:`fractions.Fraction` (always reduced, positive
denominator). A :class:`Polynomial` carries an ambient degree bound ``d``
and exactly ``d + 1`` coefficients, lowest power first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Iterable, Sequence

Rational = Fraction


def to_rational(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, float):
        raise TypeError("floats are not accepted as exact scalars: %r" % value)
    return Fraction(value)


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"``. Whitespace around the slash is tolerated."""
    s = text.strip().replace(" ", "")
    if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", s):
        raise ValueError("not a rational literal: %r" % text)
    num, _, den = s.partition("/")
    try:
        return Fraction(int(num), int(den or 1))
    except ZeroDivisionError:
        raise ValueError("zero denominator in %r" % text) from None


def format_rational(q: Fraction) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


@dataclass(frozen=True)
class Polynomial:
    coeffs: tuple[Fraction, ...]
    d: int

    def __post_init__(self):
        if self.d < 0:
            raise ValueError("ambient degree must be nonnegative")
        cs = tuple(to_rational(c) for c in self.coeffs)
        if len(cs) > self.d + 1:
            if any(cs[self.d + 1:]):
                raise ValueError("degree exceeds ambient degree %d" % self.d)
            cs = cs[: self.d + 1]
        cs = cs + (Fraction(0),) * (self.d + 1 - len(cs))
        object.__setattr__(self, "coeffs", cs)

    @classmethod
    def zero(cls, d: int) -> Polynomial:
        return cls((), d)

    @classmethod
    def monomial(cls, j: int, d: int, coeff=1) -> Polynomial:
        cs = [0] * (d + 1)
        cs[j] = coeff
        return cls(tuple(cs), d)

    @property
    def degree(self) -> int:
        """Largest index with nonzero coefficient; -1 for the zero polynomial."""
        for j in range(self.d, -1, -1):
            if self.coeffs[j]:
                return j
        return -1

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def with_degree(self, d: int) -> Polynomial:
        return Polynomial(self.coeffs, d)

    def __call__(self, x) -> Fraction:
        x = to_rational(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other: Polynomial) -> Polynomial:
        _same_ambient(self, other)
        return Polynomial(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), self.d)

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple(-c for c in self.coeffs), self.d)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def scale(self, alpha) -> Polynomial:
        alpha = to_rational(alpha)
        return Polynomial(tuple(alpha * c for c in self.coeffs), self.d)

    def __mul__(self, other: Polynomial) -> Polynomial:
        """Product; the ambient degree is the sum of ambient degrees."""
        out = [Fraction(0)] * (self.d + other.d + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return Polynomial(tuple(out), self.d + other.d)

    def monic(self) -> Polynomial:
        """Scale so the leading coefficient is 1 (zero stays zero)."""
        deg = self.degree
        if deg < 0:
            return self
        return self.scale(1 / self.coeffs[deg])

    def __str__(self) -> str:
        return format_polynomial(self)


def _same_ambient(g: Polynomial, f: Polynomial) -> None:
    if g.d != f.d:
        raise ValueError("mismatched ambient degrees %d and %d" % (g.d, f.d))


@dataclass(frozen=True)
class ShiftedPower:
    """The polynomial (x + shift) ** exp."""

    shift: Fraction
    exp: int

    def __post_init__(self):
        object.__setattr__(self, "shift", to_rational(self.shift))
        if int(self.exp) != self.exp or self.exp < 0:
            raise ValueError("exponent must be a nonnegative integer, got %r" % (self.exp,))
        object.__setattr__(self, "exp", int(self.exp))

    def __str__(self) -> str:
        return format_shifted_power(self.shift, self.exp)


@dataclass(frozen=True)
class PowerFamily:
    terms: tuple[ShiftedPower, ...]
    d: int

    def __post_init__(self):
        terms = tuple(t if isinstance(t, ShiftedPower) else ShiftedPower(*t) for t in self.terms)
        object.__setattr__(self, "terms", terms)
        for t in terms:
            if t.exp > self.d:
                raise ValueError("exponent %d exceeds ambient degree %d" % (t.exp, self.d))
        if len(set(terms)) != len(terms):
            raise ValueError("family terms are not pairwise distinct")

    @classmethod
    def of(cls, terms: Iterable, d: int | None = None) -> PowerFamily:
        """Build a family; the ambient degree defaults to the largest exponent."""
        terms = tuple(t if isinstance(t, ShiftedPower) else ShiftedPower(*t) for t in terms)
        if d is None:
            d = max((t.exp for t in terms), default=0)
        return cls(terms, d)

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self):
        return iter(self.terms)

    def with_degree(self, d: int) -> PowerFamily:
        return PowerFamily(self.terms, d)


def expand(p: ShiftedPower, d: int) -> Polynomial:
    """Binomial expansion of (x + a)^e embedded in ambient degree d."""
    if p.exp > d:
        raise ValueError("exponent %d exceeds ambient degree %d" % (p.exp, d))
    a, e = p.shift, p.exp
    cs = [comb(e, j) * a ** (e - j) for j in range(e + 1)]
    return Polynomial(tuple(cs), d)


def falling_factorial(n: int, k: int) -> int:
    out = 1
    for i in range(k):
        out *= n - i
    return out


def derivative(g: Polynomial, k: int) -> Polynomial:
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    cs = [falling_factorial(j, k) * g.coeffs[j] for j in range(k, g.d + 1)]
    return Polynomial(tuple(cs), g.d)


def eval_derivative(g: Polynomial, k: int, a) -> Fraction:
    """Exact value of the k-th derivative of g at a."""
    a = to_rational(a)
    acc = Fraction(0)
    for j in range(g.d, k - 1, -1):
        acc = acc * a + falling_factorial(j, k) * g.coeffs[j]
    return acc


def weyl_form(g: Polynomial, f: Polynomial, d: int | None = None) -> Fraction:
    """Symmetric bilinear form sum_k f_k g_{d-k} / C(d, k) on polynomials of degree <= d.

    Pairing with (x+a)^d evaluates at a; pairing with (x+a)^(d-k) gives
    (d-k)!/d! times the k-th derivative at a.
    """
    _same_ambient(g, f)
    if d is None:
        d = g.d
    elif d != g.d:
        raise ValueError("form degree %d does not match ambient degree %d" % (d, g.d))
    return sum((f.coeffs[k] * g.coeffs[d - k] / comb(d, k) for k in range(d + 1)), Fraction(0))


# -- text formats -----------------------------------------------------------

def format_shifted_power(shift: Fraction, exp: int) -> str:
    if shift == 0:
        base = "x"
    elif shift > 0:
        base = "(x+%s)" % format_rational(shift)
    else:
        base = "(x-%s)" % format_rational(-shift)
    if exp == 1:
        return base
    return "%s^%d" % (base, exp)


def format_polynomial(g: Polynomial) -> str:
    parts = []
    for j in range(g.d, -1, -1):
        c = g.coeffs[j]
        if not c:
            continue
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        if j == 0:
            body = format_rational(mag)
        else:
            mono = "x" if j == 1 else "x^%d" % j
            if mag == 1:
                body = mono
            elif mag.denominator == 1:
                body = "%s%s" % (format_rational(mag), mono)
            else:
                body = "(%s)%s" % (format_rational(mag), mono)
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += " %s %s" % (sign, body)
    return out


_TERM = re.compile(
    r"""\s*([+-])?\s*
        (?:\(\s*([+-]?\d+(?:/\d+)?)\s*\)|(\d+(?:/\d+)?))?   # coefficient
        \s*\*?\s*
        (x(?:\s*\^\s*(\d+))?)?                              # power of x
    """,
    re.VERBOSE,
)


def parse_polynomial(text: str, d: int | None = None) -> Polynomial:
    """Parse expressions such as ``"x^2+2x+3"``, ``"-x^3 + 1/2x"`` or ``"(3/4)x^2 - 1"``."""
    s = text.strip()
    if not s:
        raise ValueError("empty polynomial")
    pos = 0
    coeffs: dict[int, Fraction] = {}
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if m is None or m.end() == pos:
            raise ValueError("cannot parse polynomial at %r" % s[pos:])
        sign, paren, bare, xpart, power = m.groups()
        if not first and sign is None:
            raise ValueError("missing operator in %r" % text)
        if paren is None and bare is None and xpart is None:
            raise ValueError("dangling sign in %r" % text)
        c = parse_rational(paren or bare) if (paren or bare) else Fraction(1)
        if sign == "-":
            c = -c
        j = 0 if xpart is None else (int(power) if power else 1)
        coeffs[j] = coeffs.get(j, Fraction(0)) + c
        pos = m.end()
        first = False
    top = max(coeffs)
    if d is None:
        d = top
    return Polynomial(tuple(coeffs.get(j, 0) for j in range(top + 1)), d)


def parse_coefficients(values: Sequence, d: int | None = None) -> Polynomial:
    cs = [to_rational(v) for v in values]
    return Polynomial(tuple(cs), len(cs) - 1 if d is None else d)
