"""A-polynomials from upper-triangular coordinates."""

import math

import numpy as np
import pytest

from conevol.apoly import (S_PRIME, T_PRIME, build_apoly, build_word_matrices, determinant,
                           evaluate_matrix, holonomy_from_V, normalize_apoly, V_from_holonomy,
                           word_matrix, bijection_residual)

FIGURE_EIGHT = [[0, 4, 1], [1, 0, -1], [1, 2, 1], [1, 4, 2], [1, 6, 1], [1, 8, -1], [2, 4, 1]]


def numeric_word(n, t, M):
    s = np.array([[M, 1], [0, 1 / M]])
    tt = np.array([[M, 0], [t, 1 / M]])
    inv = np.linalg.inv
    block = tt @ inv(s) @ inv(tt) @ s
    W = np.linalg.matrix_power(block, n) if n >= 0 else np.linalg.matrix_power(inv(block), -n)
    return s, tt, W


def test_generator_images():
    M, t = 1.3 - 0.2j, 0.4 + 0.9j
    s = evaluate_matrix(S_PRIME, t, M)
    tt = evaluate_matrix(T_PRIME, t, M)
    assert s[0, 0] == M and tt[1, 0] == t


@pytest.mark.parametrize("n", [1, -2, 3])
def test_r_matches_numeric_product(n):
    rng = np.random.default_rng(5)
    r, _ = build_word_matrices(n)
    for _ in range(5):
        M = complex(*rng.uniform(0.5, 1.5, 2))
        t = complex(*rng.normal(size=2))
        s, tt, W = numeric_word(n, t, M)
        direct = (s @ W - W @ tt)[0, 1]
        assert abs(r.evaluate(t, 0, M) - direct) <= 1e-9 * (1 + abs(direct))


@pytest.mark.parametrize("n", [2, -3])
def test_word_matrix_unimodular(n):
    rng = np.random.default_rng(9)
    W = word_matrix(n)
    for _ in range(3):
        M = complex(*rng.uniform(0.5, 1.5, 2))
        t = complex(*rng.normal(size=2))
        assert abs(determinant(evaluate_matrix(W, t, M)) - 1) < 1e-9


def test_empty_word_for_n_zero():
    r, _ = build_word_matrices(0)
    assert r.evaluate(0.3, 0, 1.7) == 1


def test_figure_eight():
    assert build_apoly(1).term_list() == FIGURE_EIGHT


@pytest.mark.parametrize("n, deg", [(1, 2), (2, 4), (-2, 3), (-3, 5)])
def test_L_degree(n, deg):
    assert build_apoly(n).deg_L == deg


@pytest.mark.parametrize("n", [1, -2, 2])
def test_normalization(n):
    ap = build_apoly(n)
    again, shift = normalize_apoly(dict(ap.terms))
    assert again == ap.terms and shift == (0, 0)
    assert min(a for a, _ in ap.terms) == 0 and min(b for _, b in ap.terms) == 0
    assert ap.terms[max(ap.terms)] > 0
    assert math.gcd(*ap.terms.values()) == 1


def test_normalize_strips_monomial_and_sign():
    terms, shift = normalize_apoly({(2, 3): -6, (3, 5): -4})
    assert shift == (2, 3)
    assert terms == {(0, 0): 3, (1, 2): 2}


def test_holonomy_map_roundtrip():
    rng = np.random.default_rng(1)
    V = rng.normal(size=10) + 1j * rng.normal(size=10)
    for a in (0.3, 1.0, 2.9):
        assert np.allclose(V_from_holonomy(holonomy_from_V(V, a), a), V)


def test_bijection_figure_eight():
    assert bijection_residual(1, 2 * math.pi / 5) <= 1e-8


@pytest.mark.parametrize("n", [-3, -2, 2, 3])
def test_bijection_small_knots(n):
    for a in (2 * math.pi / 5, 2 * math.pi / 7, 1.0):
        assert bijection_residual(n, a) <= 1e-7
