"""The distance polynomial family and knot indexing."""

import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conevol.distance_poly import (DomainError, KnotIndex, build_distance_poly, eval_at_B,
                                   evaluate_numeric, expected_degree, multiplier_Q,
                                   normalize_knot, reduced_coefficient_matrix,
                                   reduced_distance_poly)
from conevol.exact_poly import BivarIntPoly

V, B = BivarIntPoly.x(), BivarIntPoly.y()


@pytest.mark.parametrize("m, n, hyperbolic", [(2, 1, True), (3, -2, True), (-2, -1, False),
                                              (0, 0, False), (-4, -2, True), (5, -3, True)])
def test_normalize_knot(m, n, hyperbolic):
    k = normalize_knot(m)
    assert k.n == n and k.hyperbolic is hyperbolic


def test_torus_knot_flag():
    k = normalize_knot(-2)
    assert k.kind == "torus knot"
    with pytest.raises(DomainError):
        k.require_hyperbolic()


def test_P0_is_one():
    assert build_distance_poly(0).poly == BivarIntPoly.const(1)


def test_seed_P2_closed_form():
    p2 = (4 * B**4 - 8 * B**2 + 4) * V**2 + (2 - 2 * B**2) * V - 4 * B**4 + 6 * B**2 - 1
    assert build_distance_poly(1).poly == p2


def test_seed_Pminus2_closed_form():
    assert build_distance_poly(-1).poly == (2 * B**2 - 2) * V + 2 * B**2 - 1


def test_P4_at_B_zero():
    assert eval_at_B(build_distance_poly(2), 0.0) == [1.0, -4.0, -12.0, 8.0, 16.0]


@pytest.mark.parametrize("n, B0, expect", [(1, 1.0, [1.0]), (1, 0.0, [-1.0, 2.0, 4.0]),
                                           (-1, 0.0, [-1.0, -2.0])])
def test_eval_at_B_examples(n, B0, expect):
    assert eval_at_B(build_distance_poly(n), B0) == expect


def test_eval_at_B_rejects_out_of_range():
    with pytest.raises(DomainError):
        eval_at_B(build_distance_poly(1), 1.5)


@pytest.mark.parametrize("n", range(-9, 10))
def test_degree(n):
    assert build_distance_poly(n).degree == expected_degree(n)


@pytest.mark.parametrize("n", [-7, -3, 2, 5, 8])
def test_recursion_telescopes(n):
    Q = multiplier_Q()
    P = {k: build_distance_poly(k).poly for k in (n - 1, n, n + 1)}
    assert P[n + 1] == Q * P[n] - P[n - 1]


@pytest.mark.parametrize("n", [-6, -2, 1, 3, 7])
def test_reduced_coordinates_agree(n):
    """P(V, B) = P~(sV, 1 - B^2), checked exactly at random rational points."""
    rng = np.random.default_rng(n + 50)
    red = reduced_distance_poly(n)
    full = build_distance_poly(n).poly
    for _ in range(5):
        b = Fraction(int(rng.integers(0, 1000)), 1000)
        v = Fraction(int(rng.integers(-5000, 5000)), 997)
        s = 1 - b * b
        assert full.evaluate(v, b) == red.evaluate(s * v, s)


@given(st.integers(-9, 9), st.floats(0.0, 1.0))
@settings(max_examples=50, deadline=None)
def test_reduced_leading_coefficient_constant(n, s):
    row = reduced_coefficient_matrix(n, s)[0]
    lead = 4.0 ** n if n >= 0 else -2.0 * 4.0 ** (-n - 1)
    if n == 0:
        assert row.tolist() == [1.0]
    else:
        assert row[-1] == lead


def test_evaluate_numeric_accepts_mpmath():
    with mpmath.workdps(30):
        v = mpmath.mpc("0.3", "-0.7")
        val = evaluate_numeric(3, v, mpmath.mpf("0.4"))
        ref = complex(evaluate_numeric(3, complex(v), 0.4))
        assert isinstance(val, mpmath.mpc)
        assert abs(complex(val) - ref) < 1e-10 * (1 + abs(ref))


def test_B_is_cos_half_angle():
    # at alpha = 2 pi / 3 the polynomial P_2 has a double root
    b = math.cos(math.pi / 3)
    c = eval_at_B(build_distance_poly(1), b)
    assert abs(c[1] ** 2 - 4 * c[0] * c[2]) < 1e-14
