import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from birkhoff.poly import Polynomial

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def polynomials(draw, d=None, max_degree=8):
    if d is None:
        d = draw(st.integers(0, max_degree))
    cs = draw(st.lists(rationals, min_size=d + 1, max_size=d + 1))
    return Polynomial(tuple(cs), d)


def random_knots(rng: random.Random, m: int, ordered: bool = False, span: int = 30):
    """m distinct small rationals; sorted ascending when ``ordered``."""
    seen = set()
    while len(seen) < m:
        seen.add(Fraction(rng.randint(-span, span), rng.randint(1, 6)))
    xs = list(seen)
    if ordered:
        xs.sort()
    else:
        rng.shuffle(xs)
    return tuple(xs)


@pytest.fixture
def rng():
    return random.Random(20150707)


def random_bound_instance(rng: random.Random, D: int):
    """Random identity candidate with k+l <= (D+2)/2 and an independent right-hand side."""
    from birkhoff.certify import BoundInstance
    from birkhoff.duality import independent_via_oracle
    from birkhoff.poly import PowerFamily, ShiftedPower

    budget = (D + 2) // 2
    while True:
        k = rng.randint(1, budget)
        l = rng.randint(0, budget - k)
        xs = rng.sample(range(-5, 6), k)
        lhs = tuple((Fraction(rng.choice([-3, -2, -1, 1, 2, 3])), ShiftedPower(x, D)) for x in xs)
        pool = [(y, e) for y in range(-5, 6) for e in range(D)]
        rhs = tuple(ShiftedPower(y, e) for y, e in rng.sample(pool, l))
        if l and not independent_via_oracle(PowerFamily(rhs, D)):
            continue
        return BoundInstance(lhs, rhs, D)


ACCEPTANCE_LINES: list[str] = []


def record_criterion(number: int, title: str, ok: bool, detail: str = "") -> None:
    line = "[%s] criterion %2d: %s%s" % ("PASS" if ok else "FAIL", number, title, " -- " + detail if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
