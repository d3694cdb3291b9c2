"""Acceptance criteria, each at its stated tolerance.

Every test carries ``criterion(k)``; conftest.py prints one PASS/FAIL line
per criterion when the run ends.  The reference values live in
reference_values.py.
"""

import math
import time
from fractions import Fraction

import numpy as np
import pytest

from reference_values import ALPHA_ZERO, COVERS

from conevol import _dense
from conevol.apoly import bijection_residual
from conevol.branch_solver import (critical_angles, discriminant_in_B, double_root,
                                   holonomy_modulus_residual, holonomy_L, trace_all, trace_branch)
from conevol.distance_poly import build_distance_poly, eval_at_B
from conevol.exact_poly import discriminant_V
from conevol.rep_oracle import (swc_identity_residual, longitude_trace_check, oracle_residual,
                                random_params)
from conevol.roots import all_roots
from conevol.schlaefli_volume import cone_volume, integrate_branch, make_table1, make_table2

TOL = 1e-4
KNOTS = sorted(ALPHA_ZERO)  # values of 2n
COVER_CASES = [(m, k) for m in sorted(COVERS) for k in sorted(COVERS[m])]


@pytest.fixture(scope="module")
def alpha_zero():
    t0 = time.perf_counter()
    rows = make_table1([m // 2 for m in KNOTS], grid=10_000)
    return {r.two_n: r for r in rows}, time.perf_counter() - t0


@pytest.fixture(scope="module")
def alpha_zero_doubled():
    rows = make_table1([m // 2 for m in KNOTS], grid=20_000)
    return {r.two_n: r for r in rows}


@pytest.fixture(scope="module")
def covers():
    rows = make_table2([m // 2 for m in sorted(COVERS)], range(3, 11), grid=10_000)
    return {(r.knot.two_n, r.k): r for r in rows}


# -- criterion 1 ---------------------------------------------------------

@pytest.mark.criterion(1)
@pytest.mark.parametrize("two_n", KNOTS)
def test_alpha_zero_row(two_n, alpha_zero, record_property):
    row, ref = alpha_zero[0][two_n], ALPHA_ZERO[two_n]
    assert row.N == ref["N"]
    devs = [abs(a - b) for a, b in zip(row.Z, ref["Z"])]
    devs += [abs(a - b) for a, b in zip(row.volumes, ref["V"])]
    devs.append(abs(row.geometric - ref["geo"]))
    record_property("deviation", max(devs))
    assert max(devs) <= TOL


@pytest.mark.criterion(1)
def test_alpha_zero_runtime(alpha_zero):
    assert alpha_zero[1] < 600.0


# -- criterion 2 ---------------------------------------------------------

@pytest.mark.criterion(2)
@pytest.mark.parametrize("two_n, k", COVER_CASES)
def test_cover_row(two_n, k, covers, record_property):
    row, ref = covers[(two_n, k)], COVERS[two_n][k]
    if ref == "Euclidean":
        assert row.structure == "Euclidean"
        return
    assert row.structure == "hyperbolic"
    assert row.cover_volume == k * row.cone_volume
    dev = max(abs(row.cone_volume - ref[0]), abs(row.cover_volume - ref[1]))
    record_property("deviation", dev)
    assert dev <= TOL


# -- criterion 3 ---------------------------------------------------------

@pytest.mark.criterion(3)
@pytest.mark.parametrize("n", range(-9, 10))
def test_matrix_oracle(n, record_property):
    rng = np.random.default_rng([20, n + 100])
    worst = max(oracle_residual(n, p) for p in random_params(rng, 100))
    record_property("deviation", worst)
    assert worst <= 1e-9


# -- criterion 4 ---------------------------------------------------------

@pytest.mark.criterion(4)
@pytest.mark.parametrize("n", [n for n in range(-5, 6) if n != 0])
@pytest.mark.parametrize("alpha", [2 * math.pi / 5, 2 * math.pi / 7, 1.0], ids=["2pi/5", "2pi/7", "1.0"])
def test_holonomy_bijection(n, alpha, record_property):
    d = bijection_residual(n, alpha)
    record_property("deviation", d)
    assert d <= 1e-7


# -- criterion 5 ---------------------------------------------------------

@pytest.mark.criterion(5)
def test_discriminant_exact_zero_at_half():
    d = discriminant_V(build_distance_poly(1).poly).to_univariate_y()
    assert d(Fraction(1, 2)) == 0
    DB = discriminant_in_B(1).integer_primitive()
    assert _dense.sign_at_rational(DB, 1, 2) == 0


@pytest.mark.criterion(5)
def test_figure_eight_roots_at_B_zero(record_property):
    got = np.sort(all_roots(eval_at_B(build_distance_poly(1), 0.0)).real)
    expect = np.array([(-1 - math.sqrt(5)) / 4, (-1 + math.sqrt(5)) / 4])
    dev = float(np.max(np.abs(got - expect)))
    record_property("deviation", dev)
    assert dev <= 1e-12


@pytest.mark.criterion(5)
@pytest.mark.parametrize("two_n", KNOTS)
def test_unit_holonomy_at_alpha0(two_n, record_property):
    worst = 0.0
    for a0 in critical_angles(two_n // 2).alphas:
        Y, _ = double_root(two_n // 2, a0)
        worst = max(worst, abs(abs(complex(holonomy_L(a0, Y))) - 1.0))
    record_property("deviation", worst)
    assert worst <= 1e-8


# -- criterion 6 ---------------------------------------------------------

@pytest.mark.criterion(6)
@pytest.mark.parametrize("two_n", KNOTS)
def test_grid_doubling(two_n, alpha_zero, alpha_zero_doubled, record_property):
    a, b = alpha_zero[0][two_n], alpha_zero_doubled[two_n]
    d = max(abs(x - y) for x, y in zip(a.volumes, b.volumes))
    record_property("deviation", d)
    assert d < 1e-6


@pytest.mark.criterion(6)
@pytest.mark.parametrize("n", [1, 2, 3, 4, -2, -3, -4])
def test_monotone_in_alpha(n):
    seed = cone_volume(n, 0.0, grid=1000).alpha0_used
    alphas = np.linspace(0.0, seed, 50, endpoint=False)
    vols = [integrate_branch(trace_branch(n, seed, 1000, alpha_lo=a)) for a in alphas]
    assert np.all(np.diff(vols) < 0)


@pytest.mark.criterion(6)
@pytest.mark.parametrize("two_n", KNOTS)
def test_holonomy_modulus_identity(two_n, record_property):
    worst = 0.0
    for b in trace_all(two_n // 2, grid=10_000):
        ok = b.s > 0
        worst = max(worst, float(np.max(holonomy_modulus_residual(b.alpha[ok], b.V[ok]))))
    record_property("deviation", worst)
    assert worst <= 1e-8


@pytest.mark.criterion(6)
@pytest.mark.parametrize("n", [n for n in range(-9, 10) if n != 0])
def test_swc_and_longitude_identities(n, record_property):
    rng = np.random.default_rng([30, n + 100])
    params = random_params(rng, 100)
    worst = max(max(swc_identity_residual(n, p), longitude_trace_check(n, p)) for p in params)
    record_property("deviation", worst)
    assert worst <= 1e-9
