"""Critical angles and root branches of the distance polynomial.

The critical angles alpha_0 are the zeros of disc_V P_2n(V, cos(alpha/2))
with B = cos(alpha/2) in (0, 1/2].  Below alpha_0 a real double root splits
into a conjugate pair; the member with Im V <= 0 is followed down to
alpha = 0 and converted to the longitude holonomy

    L = M^-2 (A + iV) / (A - iV),   A = cot(alpha/2),  M = e^{i alpha/2}.

All numerics happen in the reduced coordinates s = sin^2(alpha/2), Y = s V,
where the polynomial keeps a constant leading coefficient.  In those
coordinates A + iV = (h + iY)/s with h = sin(alpha)/2, so

    log|L| = 1/2 log1p(-4 h Im Y / ((h + Im Y)^2 + (Re Y)^2)).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .distance_poly import DomainError, KnotIndex, as_knot, reduced_coefficient_matrix, reduced_distance_poly
from .exact_poly import RootInterval, UnivarRatPoly, discriminant, isolate_real_roots
from .roots import all_roots, roots_along_path

IMAG_TOL = 1e-10


class ContinuationError(ArithmeticError):
    """Branch tracking failed (collision away from a critical angle, or a
    sample left the Im V <= 0 half plane)."""


class BranchCollision(ContinuationError):
    pass


@dataclass(frozen=True)
class CriticalAngle:
    alpha0: float
    B_interval: RootInterval

    @property
    def B(self) -> float:
        return self.B_interval.mid


@dataclass(frozen=True)
class CriticalAngles:
    knot: KnotIndex
    zeros: tuple  # CriticalAngle, largest alpha0 first

    @property
    def alphas(self):
        return [z.alpha0 for z in self.zeros]

    @property
    def count(self):
        return len(self.zeros)

    @property
    def geometric_max(self):
        return self.zeros[0].alpha0


_disc_lock = threading.Lock()
_disc_cache: dict = {}


def discriminant_in_s(n: int) -> UnivarRatPoly:
    """disc_Y of the reduced polynomial as a polynomial in s.

    Since Y = sV and the leading Y-coefficient is constant, this differs from
    disc_V P_2n(V, B) only by a power of s = 1 - B^2, which has no zeros on
    B in (0, 1/2].
    """
    with _disc_lock:
        if n not in _disc_cache:
            d = discriminant(reduced_distance_poly(n), 0)
            _disc_cache[n] = d.to_univariate_y()
        return _disc_cache[n]


def discriminant_in_B(n: int) -> UnivarRatPoly:
    return discriminant_in_s(n).compose_affine_square()


_angle_cache: dict = {}


def critical_angles(knot, tol=1e-18) -> CriticalAngles:
    """Zeros alpha_0 in [2pi/3, pi) of the discriminant, largest first."""
    knot = as_knot(knot).require_hyperbolic()
    key = (knot.n, tol)
    if key not in _angle_cache:
        DB = discriminant_in_B(knot.n)
        ivs = isolate_real_roots(DB, Fraction(0), Fraction(1, 2), tol=tol)
        zeros = [CriticalAngle(2.0 * math.acos(iv.mid), iv) for iv in ivs]
        if not zeros:
            raise ArithmeticError(f"no critical angle found for {knot}")
        zeros.sort(key=lambda z: -z.alpha0)
        _angle_cache[key] = CriticalAngles(knot, tuple(zeros))
    return _angle_cache[key]


def reduced_params(alpha):
    alpha = np.asarray(alpha, dtype=float)
    s = np.sin(alpha / 2) ** 2
    h = np.sin(alpha) / 2
    return s, h


def log_abs_L(alpha, Y):
    """log|L| from reduced coordinates; zero at alpha = 0 by convention."""
    _, h = reduced_params(alpha)
    x, y = np.real(Y), np.imag(Y)
    den = (h + y) ** 2 + x ** 2
    with np.errstate(divide="ignore", invalid="ignore"):
        val = 0.5 * np.log1p(-4 * h * y / den)
    return np.where((h == 0) | (den == 0), 0.0, val)


def holonomy_L(alpha, Y):
    """L = e^{-i alpha} (h + iY)/(h - iY); the value at alpha = 0 is the limit -1."""
    alpha = np.asarray(alpha, dtype=float)
    _, h = reduced_params(alpha)
    with np.errstate(divide="ignore", invalid="ignore"):
        L = np.exp(-1j * alpha) * (h + 1j * Y) / (h - 1j * Y)
    return L


def holonomy_modulus_residual(alpha, V):
    """Relative residual of |L|^2 (A^2+|V|^2+2A Im V) = A^2+|V|^2-2A Im V."""
    A = 1.0 / np.tan(np.asarray(alpha) / 2)
    M = np.exp(0.5j * np.asarray(alpha))
    L = M ** -2 * (A + 1j * V) / (A - 1j * V)
    lhs = np.abs(L) ** 2 * (A ** 2 + np.abs(V) ** 2 + 2 * A * np.imag(V))
    rhs = A ** 2 + np.abs(V) ** 2 - 2 * A * np.imag(V)
    return np.abs(lhs - rhs) / np.maximum(1.0, np.abs(rhs))


def mesh(alpha0, alpha_lo, grid, spacing="graded"):
    """Nodes descending from alpha0 to alpha_lo, with the Jacobian weights.

    ``u`` runs uniformly over [0, 1].  For "uniform" spacing
    alpha = alpha0 - (alpha0 - alpha_lo) u; for "graded",
    alpha = alpha0 - (alpha0 - alpha_lo) u^2, which absorbs the square-root
    behaviour of log|L| at alpha0.  Returns (alpha, dalpha/du magnitude).
    """
    if grid < 2 or grid % 2:
        raise ValueError("grid must be an even integer >= 2")
    u = np.arange(grid + 1) / grid
    span = alpha0 - alpha_lo
    if spacing == "uniform":
        return alpha0 - span * u, np.full(u.shape, span)
    if spacing == "graded":
        alpha = alpha0 - span * u ** 2
        alpha[-1] = alpha_lo
        return alpha, 2 * span * u
    raise ValueError(f"unknown spacing {spacing!r}")


@dataclass
class Branch:
    knot: KnotIndex
    seed_alpha0: float
    alpha: np.ndarray  # descending from seed_alpha0
    Y: np.ndarray
    integrand: np.ndarray  # log|L|
    weights: np.ndarray  # |dalpha/du| on the uniform u grid
    spacing: str = "graded"
    refinements: int = 0
    geometric: bool = False
    meta: dict = field(default_factory=dict)

    @property
    def s(self):
        return reduced_params(self.alpha)[0]

    @property
    def V(self):
        with np.errstate(divide="ignore", invalid="ignore"):
            return np.where(self.s > 0, self.Y / self.s, np.inf + 0j)

    @property
    def L(self):
        return holonomy_L(self.alpha, self.Y)

    def samples(self):
        """(alpha, V, L) triples, descending in alpha."""
        return list(zip(self.alpha.tolist(), self.V.tolist(), self.L.tolist()))

    def max_imag_V(self):
        s = self.s
        ok = s > 0
        return float(np.max(np.imag(self.Y[ok]) / s[ok]))

    def min_abs_L(self):
        return float(np.min(np.abs(self.L)))

    def max_residual(self):
        """max_j |P(Y_j, s_j)| / sum_kl |c_kl| s_j^l |Y_j|^k in reduced coordinates.

        The denominator is the scale of the integer coefficients c_kl, which
        is what rounding in the coefficient evaluation is relative to; near
        a critical angle the s-sums cancel heavily, so the narrower scale
        sum_k |a_k(s)| |Y|^k would mostly measure that cancellation.
        """
        s = self.s
        c = reduced_coefficient_matrix(self.knot.n, s)
        cabs = reduced_coefficient_matrix(self.knot.n, s, absolute=True)
        Yc = self.Y[:, None] ** np.arange(c.shape[1])[None, :]
        num = np.abs(np.sum(c * Yc, axis=1))
        den = np.sum(cabs * np.abs(Yc), axis=1)
        return float(np.max(num / den))


def _nearest(roots, target):
    d = np.abs(roots - target)
    i = int(np.argmin(d))
    others = np.abs(roots - roots[i])
    others[i] = np.inf
    return i, float(d[i]), float(others.min()) if others.size > 1 else np.inf


def _roots_at(n, alpha):
    s = math.sin(alpha / 2) ** 2
    return all_roots(reduced_coefficient_matrix(n, [s])[0])


def _seed_pair(roots):
    d = np.abs(roots[:, None] - roots[None, :])
    np.fill_diagonal(d, np.inf)
    i, j = np.unravel_index(np.argmin(d), d.shape)
    return int(i), int(j), float(d[i, j])


def double_root(knot, alpha0, iters=20):
    """The colliding root pair at a critical angle, refined as a simple root
    of dP/dY by complex Newton steps (no realness is imposed).  Returns
    (Y, pair separation before refinement)."""
    n = as_knot(knot).n
    s = math.sin(alpha0 / 2) ** 2
    c = reduced_coefficient_matrix(n, [s])[0]
    roots = all_roots(c)
    i, j, sep = _seed_pair(roots)
    z = complex(0.5 * (roots[i] + roots[j]))
    d1 = np.polynomial.polynomial.polyder(c)
    d2 = np.polynomial.polynomial.polyder(d1)
    for _ in range(iters):
        step = np.polynomial.polynomial.polyval(z, d1) / np.polynomial.polynomial.polyval(z, d2)
        z -= step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return z, sep


def _follow(n, a_prev, y_prev, a_new, roots_new, depth=0, max_depth=40):
    """Match y_prev at a_prev to one of roots_new at a_new, halving the step
    when the match is ambiguous.  Returns (root, number of extra solves)."""
    i, dist, gap = _nearest(roots_new, y_prev)
    if dist <= 0.5 * gap:
        return roots_new[i], 0
    if depth >= max_depth:
        raise BranchCollision(
            f"roots merge near alpha = {a_new:.12g} (match {dist:.3g}, gap {gap:.3g})")
    a_mid = 0.5 * (a_prev + a_new)
    y_mid, k1 = _follow(n, a_prev, y_prev, a_mid, _roots_at(n, a_mid), depth + 1, max_depth)
    y_new, k2 = _follow(n, a_mid, y_mid, a_new, roots_new, depth + 1, max_depth)
    return y_new, k1 + k2 + 1


def trace_branch(knot, alpha0, grid=10_000, alpha_lo=0.0, spacing="graded", tol=1e-12) -> Branch:
    """Follow the Im V <= 0 root born at ``alpha0`` down to ``alpha_lo``."""
    knot = as_knot(knot).require_hyperbolic()
    n = knot.n
    if not 0.0 <= alpha_lo < alpha0:
        raise ValueError("need 0 <= alpha_lo < alpha0")
    alpha, weights = mesh(alpha0, alpha_lo, grid, spacing)
    s, _ = reduced_params(alpha)
    roots = roots_along_path(reduced_coefficient_matrix(n, s), tol=tol)
    Y = np.empty(alpha.size, dtype=complex)

    pair_mid, sep = double_root(knot, alpha0)
    Y[0] = pair_mid.real
    # first step: of the two roots nearest the double root take Im <= 0
    order = np.argsort(np.abs(roots[1] - Y[0]))[:2]
    cand = roots[1][order]
    Y[1] = cand[np.argmin(cand.imag)]
    if abs(Y[1].imag) == 0.0 and abs(cand[0].imag) == 0.0 and abs(cand[1].imag) == 0.0:
        raise ContinuationError(f"roots at {alpha[1]:.12g} stay real below alpha0 = {alpha0:.12g}")
    extra = 0
    for k in range(2, alpha.size):
        Y[k], e = _follow(n, alpha[k - 1], Y[k - 1], alpha[k], roots[k])
        extra += e
    if np.max(np.imag(Y)) > IMAG_TOL * max(1.0, float(np.max(s))):
        bad = int(np.argmax(np.imag(Y)))
        raise ContinuationError(
            f"branch from alpha0 = {alpha0:.12g} has Im V > 0 at alpha = {alpha[bad]:.12g}")
    Y.imag = np.minimum(Y.imag, 0.0)
    integrand = log_abs_L(alpha, Y)
    return Branch(knot, float(alpha0), alpha, Y, integrand, weights, spacing, extra,
                  meta={"seed_separation": sep, "seed_imag": float(abs(pair_mid.imag))})


def roots_at_alpha(knot, alpha):
    """All roots V of P_2n(V, cos(alpha/2)) for 0 < alpha <= pi."""
    knot = as_knot(knot)
    if not 0.0 < alpha <= math.pi:
        raise DomainError("alpha must lie in (0, pi]")
    s = math.sin(alpha / 2) ** 2
    return _roots_at(knot.n, alpha) / s


def trace_all(knot, grid=10_000, alpha_lo=0.0, spacing="graded", tol=1e-12):
    """One branch per critical angle above ``alpha_lo`` (largest first)."""
    ca = critical_angles(knot)
    return [trace_branch(knot, z.alpha0, grid, alpha_lo, spacing, tol)
            for z in ca.zeros if z.alpha0 > alpha_lo]
