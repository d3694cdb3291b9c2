"""Residual suites shared by the ``verify`` command and the test-suite.

Each function returns the largest residual it saw, so callers can compare
against a tolerance or just print it.
"""

from __future__ import annotations

import math

import numpy as np

from .apoly import bijection_residual, build_apoly
from .branch_solver import critical_angles, double_root, holonomy_modulus_residual, holonomy_L, trace_all
from .distance_poly import as_knot
from .rep_oracle import swc_identity_residual, longitude_trace_check, oracle_residual, random_params

BIJECTION_ALPHAS = (2 * math.pi / 5, 2 * math.pi / 7, 1.0)


def oracle_suite(knot, samples=100, seed=0) -> float:
    """max |trace_oracle - P_2n| / (1 + |P_2n|) over random (alpha, rho)."""
    rng = np.random.default_rng([seed, as_knot(knot).n + 1000])
    return max(oracle_residual(knot, p) for p in random_params(rng, samples))


def identity_suite(knot, samples=100, seed=0):
    """(SWc identity residual, longitude trace residual) over random parameters."""
    knot = as_knot(knot)
    rng = np.random.default_rng([seed, knot.n + 2000])
    params = random_params(rng, samples)
    swc = max(swc_identity_residual(knot, p) for p in params)
    lon = max(longitude_trace_check(knot, p) for p in params) if knot.n else 0.0
    return swc, lon


def bijection_suite(knot, alphas=BIJECTION_ALPHAS) -> float:
    return max(bijection_residual(knot, a) for a in alphas)


def critical_L_suite(knot) -> float:
    """max | |L| - 1 | over the refined double roots at every critical angle."""
    worst = 0.0
    for a0 in critical_angles(knot).alphas:
        Y, _ = double_root(knot, a0)
        worst = max(worst, abs(abs(complex(holonomy_L(a0, Y))) - 1.0))
    return worst


def apoly_double_root_gap(knot) -> float:
    """Smallest L-root separation of A(L, e^{i alpha0/2}) over the critical
    angles; a multiple root makes this small (about sqrt(machine eps))."""
    ap = build_apoly(knot)
    worst = 0.0
    for a0 in critical_angles(knot).alphas:
        r = ap.roots_L(np.exp(0.5j * a0))
        d = np.abs(r[:, None] - r[None, :])
        np.fill_diagonal(d, np.inf)
        worst = max(worst, float(d.min()))
    return worst


def branch_suite(knot, grid=10_000):
    """Residuals along every branch traced from alpha0 to 0.

    Returns a dict holding the worst holonomy modulus identity residual,
    the largest Im V, the smallest |L| and the worst polynomial residual.
    """
    out = {"holonomy_modulus": 0.0, "max_imag_V": -np.inf, "min_abs_L": np.inf, "poly_residual": 0.0}
    for b in trace_all(knot, grid):
        ok = b.s > 0
        out["holonomy_modulus"] = max(out["holonomy_modulus"],
                                  float(np.max(holonomy_modulus_residual(b.alpha[ok], b.V[ok]))))
        out["max_imag_V"] = max(out["max_imag_V"], b.max_imag_V())
        out["min_abs_L"] = min(out["min_abs_L"], b.min_abs_L())
        out["poly_residual"] = max(out["poly_residual"], b.max_residual())
    return out


def run_all(knot, samples=100, seed=0, grid=10_000, with_apoly=True):
    """Every suite for one knot, as an ordered dict of named maxima."""
    knot = as_knot(knot).require_hyperbolic()
    res = {"oracle": oracle_suite(knot, samples, seed)}
    res["swc_identity"], res["longitude_trace"] = identity_suite(knot, samples, seed)
    if with_apoly:
        res["bijection"] = bijection_suite(knot)
        res["apoly_double_root_gap"] = apoly_double_root_gap(knot)
    res["critical_abs_L_minus_1"] = critical_L_suite(knot)
    res.update(branch_suite(knot, grid))
    return res
