"""Exact Birkhoff interpolation, shifted-power independence and lower-bound certificates."""

from birkhoff.poly import (
    Polynomial,
    PowerFamily,
    ShiftedPower,
    derivative,
    eval_derivative,
    expand,
    weyl_form,
)
from birkhoff.comb import InterpolationMatrix
from birkhoff.linalg import PairEX, pair_is_regular, rank_and_nullspace, build_system
from birkhoff.duality import (
    independent_via_duality,
    independent_via_oracle,
    theorem_independence_check,
    to_dual,
)
from birkhoff.certify import Certificate, certify_regular, refute_identity, verify_certificate
from birkhoff.represent import greedy_decompose

__version__ = "0.1.0"
