import cmath
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from birkhoff.duality import independence_condition_failures, independence_counts, independent_via_oracle
from birkhoff.poly import Polynomial, PowerFamily, parse_polynomial
from birkhoff.represent import (
    ComplexIdentity,
    Term,
    congruence_lemma_holds,
    cyclotomic,
    greedy_decompose,
    hard_h1,
    hard_h2,
    hard_h3,
    root_sum_exact,
    roots_of_unity_identity,
    verify_complex_identity,
)

from conftest import polynomials


class TestGreedy:
    def test_quadratic(self):
        dec = greedy_decompose(parse_polynomial("x^2+2x+3"))
        assert dec.terms == (Term(1, 1, 2), Term(2, 0, 0))

    def test_constant(self):
        assert greedy_decompose(parse_polynomial("5")).terms == (Term(5, 0, 0),)

    def test_cube(self):
        assert greedy_decompose(parse_polynomial("x^3")).terms == (Term(1, 0, 3),)

    def test_zero(self):
        assert len(greedy_decompose(Polynomial.zero(4))) == 0

    def test_linear_uses_one_term(self):
        dec = greedy_decompose(parse_polynomial("4x - 2"))
        assert dec.terms == (Term(4, Fraction(-1, 2), 1),)

    def test_exponents_drop_by_two(self):
        f = Polynomial(tuple(range(1, 9)), 7)
        dec = greedy_decompose(f)
        assert [t.exp for t in dec.terms] == [7, 5, 3, 1]

    @settings(max_examples=200)
    @given(polynomials(max_degree=14))
    def test_reconstructs_within_bound(self, f):
        dec = greedy_decompose(f)
        assert dec.to_polynomial(f.d) == f
        assert len(dec) <= (max(f.degree, 0) + 2) // 2

    def test_json(self):
        assert greedy_decompose(parse_polynomial("x^2+2x+3")).to_json() == [
            {"coeff": "1", "shift": "1", "exp": 2},
            {"coeff": "2", "shift": "0", "exp": 0},
        ]


class TestHard:
    def test_h3(self):
        assert hard_h3(4) == parse_polynomial("10x^4+20x^2+2")

    def test_h2(self):
        assert hard_h2(1) == parse_polynomial("2x+1")
        assert hard_h2(1).d == 1

    def test_h1(self):
        assert hard_h1([0, 1], [1, -1], 3) == parse_polynomial("-3x^2-3x-1", 3)

    def test_h1_validation(self):
        with pytest.raises(ValueError):
            hard_h1([0, 0], [1, 1], 3)
        with pytest.raises(ValueError):
            hard_h1([0, 1], [1, 0], 3)

    @pytest.mark.parametrize("d", range(1, 21))
    def test_h3_monomial_count(self, d):
        h = hard_h3(d)
        assert h.degree == d
        assert sum(1 for c in h.coeffs if c) == (d + 2) // 2

    @pytest.mark.parametrize("d", range(3, 13))
    def test_sharpness_family(self, d):
        terms = [(1, d + 1), (-1, d + 1)] + [(0, e) for e, c in enumerate(hard_h3(d).coeffs) if c]
        fam = PowerFamily.of(terms, d + 1)
        assert not independent_via_oracle(fam)
        n = independence_counts(fam)
        if d % 2:
            assert n[1:d + 2] == [j // 2 for j in range(1, d + 2)]
            assert 2 * n[d + 2] == d + 5
        else:
            assert n[1:d + 2] == [(j + 1) // 2 for j in range(1, d + 2)]
            assert 2 * n[d + 2] == d + 6
        assert independence_condition_failures(fam) == [d + 2]


def brute_lhs(k, d, mu, x):
    xi = cmath.exp(2j * math.pi / k)
    return sum(xi ** j * (x + xi ** j * mu) ** d for j in range(1, k + 1))


class TestComplexIdentity:
    def test_k2(self):
        ident = roots_of_unity_identity(2, 2, 1)
        assert ident.rhs == ((4, 1),)
        assert ident.format_rhs() == "4x"
        assert verify_complex_identity(ident, 1e-9)

    def test_k3(self):
        assert roots_of_unity_identity(3, 5, 1).rhs == ((30, 3), (3, 0))

    def test_empty_class(self):
        assert roots_of_unity_identity(7, 5, 1).rhs == ()
        assert verify_complex_identity(roots_of_unity_identity(7, 5, 1))

    def test_half(self):
        ident = roots_of_unity_identity(4, 9, Fraction(1, 2))
        assert verify_complex_identity(ident, 1e-9)
        x = 0.3
        rhs = sum(float(c) * x ** e for c, e in ident.rhs)
        assert abs(brute_lhs(4, 9, 0.5, x) - rhs) < 1e-9

    def test_tampered(self):
        ident = roots_of_unity_identity(2, 2, 1)
        bad = ComplexIdentity(ident.k, ident.d, ident.mu, ident.lhs, ((ident.rhs[0][0] + 1, ident.rhs[0][1]),))
        assert not verify_complex_identity(bad, 1e-9)

    def test_tolerance(self):
        with pytest.raises(ValueError):
            verify_complex_identity(roots_of_unity_identity(2, 2, 1), 0)

    @pytest.mark.parametrize("n, coeffs", [(1, [-1, 1]), (2, [1, 1]), (4, [1, 0, 1]), (6, [1, -1, 1]), (12, [1, 0, -1, 0, 1])])
    def test_cyclotomic(self, n, coeffs):
        assert cyclotomic(n) == coeffs

    def test_root_sums(self):
        for k in range(1, 10):
            for i in range(3 * k):
                want = k if (i + 1) % k == 0 else 0
                assert root_sum_exact(k, i) == want
                got = sum(cmath.exp(2j * math.pi * j * (i + 1) / k) for j in range(1, k + 1))
                assert abs(got - want) < 1e-9
            assert congruence_lemma_holds(k, 20)

    @given(st.integers(1, 10), st.integers(1, 20))
    def test_count_bound(self, k, d):
        assert k * len(roots_of_unity_identity(k, d, 1).rhs) <= d + 1
