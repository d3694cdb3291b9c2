"""Twist-knot indexing and the complex distance polynomial P_2n(V, B).

V = cosh(rho) is the cosh of the complex distance between the axes of the
two meridian generators and B = cos(alpha/2).  The polynomial satisfies a
three-term recursion with multiplier

    Q = (4B^4 - 8B^2 + 4) V^2 - 4B^4 + 8B^2 - 2

and seeds P_-2, P_0 = 1, P_2.

For numerics we also keep the same family in the reduced coordinates
s = sin^2(alpha/2) = 1 - B^2 and Y = s V.  There

    Q = 4Y^2 - 4s^2 + 2,  P_2 = 4Y^2 + 2Y - 4s^2 + 2s + 1,  P_-2 = -2Y - 2s + 1,

and the leading Y-coefficient is the constant 4^n (resp. -2 * 4^(|n|-1)),
so nothing degenerates at alpha = 0 where V itself runs off to infinity.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .exact_poly import BivarIntPoly


class DomainError(ValueError):
    """Raised for knots or angles outside the hyperbolic range."""


@dataclass(frozen=True)
class KnotIndex:
    """Twist knot T_2n; ``raw_m`` remembers the crossing count it came from."""

    n: int
    raw_m: int | None = None

    @property
    def two_n(self) -> int:
        return 2 * self.n

    @property
    def hyperbolic(self) -> bool:
        return self.n not in (0, -1)

    @property
    def kind(self) -> str:
        if self.n == 0:
            return "unknot"
        if self.n == -1:
            return "torus knot"
        return "hyperbolic"

    def require_hyperbolic(self):
        if not self.hyperbolic:
            raise DomainError(f"T_{self.two_n} is a {self.kind}; no hyperbolic volume")
        return self

    def __str__(self):
        return f"T_{self.two_n}"


def normalize_knot(m: int) -> KnotIndex:
    """T_m for odd m is the mirror of T_{-m-1}; both have the same volume."""
    m = int(m)
    if m % 2 == 0:
        return KnotIndex(m // 2, raw_m=m)
    return KnotIndex((-m - 1) // 2, raw_m=m)


def as_knot(knot) -> KnotIndex:
    if isinstance(knot, KnotIndex):
        return knot
    return KnotIndex(int(knot))


@dataclass(frozen=True)
class DistancePolynomial:
    knot: KnotIndex
    poly: BivarIntPoly

    @property
    def degree(self) -> int:
        return self.poly.deg_V()


def _vb(coeffs):
    return BivarIntPoly(coeffs, ("V", "B"))


def _ys(coeffs):
    return BivarIntPoly(coeffs, ("Y", "s"))


# (V, B) seeds
_Q_VB = _vb({(2, 4): 4, (2, 2): -8, (2, 0): 4, (0, 4): -4, (0, 2): 8, (0, 0): -2})
_P_VB = {
    -2: _vb({(1, 2): 2, (1, 0): -2, (0, 2): 2, (0, 0): -1}),
    0: _vb({(0, 0): 1}),
    2: _vb({(2, 4): 4, (2, 2): -8, (2, 0): 4, (1, 0): 2, (1, 2): -2,
            (0, 4): -4, (0, 2): 6, (0, 0): -1}),
}

# (Y, s) seeds
_Q_YS = _ys({(2, 0): 4, (0, 2): -4, (0, 0): 2})
_P_YS = {
    -2: _ys({(1, 0): -2, (0, 1): -2, (0, 0): 1}),
    0: _ys({(0, 0): 1}),
    2: _ys({(2, 0): 4, (1, 0): 2, (0, 2): -4, (0, 1): 2, (0, 0): 1}),
}

_lock = threading.Lock()
_cache_vb = dict((k, v) for k, v in _P_VB.items())
_cache_ys = dict((k, v) for k, v in _P_YS.items())


def _build(seeds_cache, q, n):
    with _lock:
        if 2 * n in seeds_cache:
            return seeds_cache[2 * n]
        step = 1 if n > 0 else -1
        k = 2 * step
        while abs(k) <= abs(n):
            if 2 * k not in seeds_cache:
                seeds_cache[2 * k] = q * seeds_cache[2 * (k - step)] - seeds_cache[2 * (k - 2 * step)]
            k += step
        return seeds_cache[2 * n]


def step_recursion(p_prev: BivarIntPoly, p_prev2: BivarIntPoly, reduced=False) -> BivarIntPoly:
    """One step P = Q * p_prev - p_prev2 of the recursion."""
    return (_Q_YS if reduced else _Q_VB) * p_prev - p_prev2


def build_distance_poly(knot) -> DistancePolynomial:
    """Exact P_2n(V, B) for the twist knot T_2n (any integer n)."""
    knot = as_knot(knot)
    return DistancePolynomial(knot, _build(_cache_vb, _Q_VB, knot.n))


@lru_cache(maxsize=None)
def reduced_distance_poly(n: int) -> BivarIntPoly:
    """P_2n in the coordinates (Y, s) with Y = s V, s = 1 - B^2."""
    return _build(_cache_ys, _Q_YS, int(n))


def multiplier_Q(reduced=False) -> BivarIntPoly:
    return _Q_YS if reduced else _Q_VB


def eval_at_B(dp: DistancePolynomial, B: float) -> list[float]:
    """Dense ascending V-coefficients of P_2n(V, B) at numeric B.

    High-order coefficients that vanish (e.g. at B = 1, where the leading
    coefficient 4(B^2 - 1)^2 dies) are trimmed, so ``len(result) - 1`` is the
    effective degree.
    """
    if not 0.0 <= B <= 1.0:
        raise DomainError("B = cos(alpha/2) must lie in [0, 1]")
    out = [float(c) for c in dp.poly.coeffs_at_y(B)]
    while len(out) > 1 and out[-1] == 0.0:
        out.pop()
    return out or [0.0]


def reduced_coefficient_matrix(n: int, s, absolute=False) -> np.ndarray:
    """Rows of ascending Y-coefficients of the reduced polynomial, one per s.

    With ``absolute`` every integer coefficient is replaced by its absolute
    value, which gives the scale against which rounding is measured.
    """
    s = np.atleast_1d(np.asarray(s, dtype=float))
    rows = reduced_distance_poly(n).rows()
    out = np.zeros((s.size, len(rows)))
    for i, row in enumerate(rows):
        acc = np.zeros_like(s)
        for c in reversed(row):
            acc = acc * s + float(abs(c) if absolute else c)
        out[:, i] = acc
    return out


def evaluate_numeric(n: int, V, B):
    """P_2n(V, B) for complex V and real B, by Horner in V."""
    rows = build_distance_poly(n).poly.rows()
    acc = 0
    for row in reversed(rows):
        c = 0.0
        for a in reversed(row):
            c = c * B + a
        acc = acc * V + c
    return acc


def expected_degree(n: int) -> int:
    """deg_V P_2n: 2n for n >= 0, -(2n+1) for n <= -1."""
    return 2 * n if n >= 0 else -(2 * n + 1)
