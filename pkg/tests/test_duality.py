import json
import random
from fractions import Fraction

import pytest
import sympy

from birkhoff.linalg import OverdeterminedError
from birkhoff.poly import PowerFamily, ShiftedPower, expand
from birkhoff.duality import (
    dependence_relation,
    family_from_json,
    family_to_json,
    independence_condition_failures,
    independence_counts,
    independent_via_duality,
    independent_via_oracle,
    theorem_independence_check,
    to_dual,
)

APPENDIX_FAMILY = PowerFamily.of([(0, 5), (1, 5), (3, 5), (0, 2), (1, 1), (3, 2)])
SQUARES_TRIPLE = PowerFamily.of([(1, 2), (-1, 2), (0, 1)])


def random_family(rng, d, k=None):
    pool = [(a, e) for a in range(-5, 6) for e in range(d + 1)]
    k = rng.randint(1, d + 1) if k is None else k
    return PowerFamily.of(rng.sample(pool, k), d)


def sympy_independent(fam):
    x = sympy.Symbol("x")
    rows = [sympy.Poly((x + sympy.Rational(t.shift.numerator, t.shift.denominator)) ** t.exp, x).all_coeffs()[::-1] for t in fam]
    rows = [r + [0] * (fam.d + 1 - len(r)) for r in rows]
    return sympy.Matrix(rows).rank() == len(fam)


class TestToDual:
    def test_appendix(self):
        dual = to_dual(APPENDIX_FAMILY)
        assert dual.pair.text() == "100100;100010;100100 @ 0,1,3"
        assert dual.cell_of_term == ((0, 0), (1, 0), (2, 0), (0, 3), (1, 4), (2, 3))

    def test_small_dual(self):
        dual = to_dual(SQUARES_TRIPLE)
        assert dual.pair.text() == "100;010;100 @ -1,0,1"

    def test_singleton(self):
        dual = to_dual(PowerFamily.of([(Fraction(2, 3), 4)]))
        assert dual.pair.E.text() == "10000"

    def test_shared_shift_shares_row(self):
        dual = to_dual(PowerFamily.of([(2, 3), (2, 1), (0, 3)]))
        assert dual.pair.E.m == 2
        assert dual.pair.E.count == 3

    def test_duplicate(self):
        with pytest.raises(ValueError):
            PowerFamily.of([(1, 2), (1, 2)])


class TestIndependence:
    def test_squares_identity(self):
        assert not independent_via_duality(SQUARES_TRIPLE)
        assert not independent_via_oracle(SQUARES_TRIPLE)
        rel = dependence_relation(SQUARES_TRIPLE)
        # (x+1)^2 - (x-1)^2 - 4x = 0
        assert rel == [1, -1, -4]

    def test_appendix(self):
        assert independent_via_duality(APPENDIX_FAMILY)
        assert independent_via_oracle(APPENDIX_FAMILY)
        assert dependence_relation(APPENDIX_FAMILY) is None

    @pytest.mark.parametrize("d", [0, 3, 7])
    def test_monomials(self, d):
        fam = PowerFamily.of([(0, e) for e in range(d + 1)], d)
        assert independent_via_duality(fam) and independent_via_oracle(fam)

    def test_too_many(self):
        fam = PowerFamily.of([(a, 1) for a in range(3)])
        with pytest.raises(OverdeterminedError):
            independent_via_duality(fam)
        assert not independent_via_oracle(fam)

    def test_oracle_matches_sympy(self, rng):
        for _ in range(100):
            fam = random_family(rng, rng.randint(1, 6))
            assert independent_via_oracle(fam) == sympy_independent(fam)

    def test_equivalence(self, rng):
        for _ in range(300):
            fam = random_family(rng, rng.randint(1, 8))
            assert independent_via_duality(fam) == independent_via_oracle(fam)

    def test_ambient_stability(self, rng):
        for _ in range(100):
            fam = random_family(rng, rng.randint(1, 6))
            for extra in (1, 3):
                wide = fam.with_degree(fam.d + extra)
                assert independent_via_oracle(wide) == independent_via_oracle(fam)
                assert independent_via_duality(wide) == independent_via_duality(fam)


class TestTheoremCondition:
    def test_top_degree_only(self):
        fam = PowerFamily.of([(a, 6) for a in range(5)])
        assert independence_counts(fam)[:7] == [0] * 7
        assert theorem_independence_check(fam)

    def test_sharpness_family_d_odd(self):
        d = 5
        # (x+1)^(d+1), (x-1)^(d+1), x^d, x^(d-2), ..., at ambient d+1
        fam = PowerFamily.of([(1, d + 1), (-1, d + 1)] + [(0, e) for e in range(d, -1, -2)], d + 1)
        n = independence_counts(fam)
        assert n[d + 1] + n[d + 2] == d + 3
        assert independence_condition_failures(fam) == [d + 2]
        assert not independent_via_oracle(fam)

    def test_four_term_family(self):
        fam = PowerFamily.of([(0, 5), (1, 4), (3, 2), (7, 0)])
        assert independence_counts(fam)[1:] == [1, 1, 2, 2, 3, 4]
        assert independence_condition_failures(fam) == [6]
        assert independent_via_oracle(fam) and independent_via_duality(fam)

    def test_three_term_family(self):
        fam = PowerFamily.of([(0, 5), (1, 4), (3, 2)], 5)
        assert theorem_independence_check(fam)
        assert independent_via_oracle(fam) and independent_via_duality(fam)

    def test_non_converse_witness(self):
        n = independence_counts(SQUARES_TRIPLE)
        assert all(n[j] <= j for j in range(len(n)))
        assert n[2] + n[1] == 1
        assert n[3] + n[2] == 4
        assert not theorem_independence_check(SQUARES_TRIPLE)

    def test_soundness(self, rng):
        passed = 0
        for _ in range(400):
            fam = random_family(rng, rng.randint(1, 8))
            if theorem_independence_check(fam):
                passed += 1
                assert independent_via_oracle(fam)
        assert passed > 20


class TestJson:
    def test_roundtrip(self):
        data = family_to_json(APPENDIX_FAMILY)
        assert family_from_json(json.dumps(data)) == APPENDIX_FAMILY

    def test_array_form(self):
        fam = family_from_json('[{"shift": "1/2", "exp": 3}, {"shift": -1, "exp": 0}]')
        assert fam.terms == (ShiftedPower(Fraction(1, 2), 3), ShiftedPower(-1, 0))
        assert fam.d == 3

    def test_explicit_degree(self):
        fam = family_from_json({"degree": 7, "terms": [{"shift": "0", "exp": 2}]})
        assert fam.d == 7

    @pytest.mark.parametrize("bad", ['{"x": 1}', '[{"shift": "a", "exp": 1}]', '[{"shift": "1", "exp": 1.5}]'])
    def test_rejects(self, bad):
        with pytest.raises((ValueError, KeyError)):
            family_from_json(bad)
