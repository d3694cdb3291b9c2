"""A-polynomials of twist knots from upper-triangular coordinates.

The meridians are sent to

    s -> [[M, 1], [0, 1/M]],   t -> [[M, 0], [t, 1/M]],

r is the upper-right entry of image(s w) - image(w t) and q the upper-left
entry of image(w w*), w* being w read backwards.  Eliminating t from
M^u1 r and M^u2 (q - L) by a resultant gives the A-polynomial up to
monomial factors, which are stripped.

The resultant is linear-in-L friendly: L only enters the constant term of
q - L, so Res_t has L-degree deg_t(r) exactly.  We evaluate it at
L = 0, 1, ..., deg_t(r) (each evaluation an exact Sylvester determinant over
Z[M]) and interpolate.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import numpy as np
from scipy.optimize import linear_sum_assignment

from .distance_poly import KnotIndex, as_knot, reduced_coefficient_matrix
from .exact_poly import TriLaurentPoly, resultant
from .roots import all_roots, all_roots_batch

_ONE = TriLaurentPoly.const(1)
_ZERO = TriLaurentPoly()


def _m(k):
    return TriLaurentPoly.monomial(M=k)


def _t():
    return TriLaurentPoly.monomial(t=1)


# generator images and inverses (all determinant one)
S_PRIME = ((_m(1), _ONE), (_ZERO, _m(-1)))
S_PRIME_INV = ((_m(-1), -_ONE), (_ZERO, _m(1)))
T_PRIME = ((_m(1), _ZERO), (_t(), _m(-1)))
T_PRIME_INV = ((_m(-1), _ZERO), (-_t(), _m(1)))
IDENTITY = ((_ONE, _ZERO), (_ZERO, _ONE))


def matmul(a, b):
    return tuple(tuple(a[i][0] * b[0][j] + a[i][1] * b[1][j] for j in range(2))
                 for i in range(2))


def matsub(a, b):
    return tuple(tuple(a[i][j] - b[i][j] for j in range(2)) for i in range(2))


def word_product(mats):
    out = IDENTITY
    for m in mats:
        out = matmul(out, m)
    return out


def relator_word(knot):
    """Matrices of w = (t s^-1 t^-1 s)^n as a list of letters."""
    n = as_knot(knot).n
    block = [T_PRIME, S_PRIME_INV, T_PRIME_INV, S_PRIME]
    if n < 0:
        # (t s^-1 t^-1 s)^-1 = s^-1 t s t^-1
        block = [S_PRIME_INV, T_PRIME, S_PRIME, T_PRIME_INV]
    return block * abs(n)


def word_matrix(knot):
    return word_product(relator_word(knot))


def reversed_word_matrix(knot):
    return word_product(list(reversed(relator_word(knot))))


def evaluate_matrix(mat, t, M, L=0):
    return np.array([[e.evaluate(t, L, M) for e in row] for row in mat], dtype=complex)


def determinant(mat):
    return mat[0][0] * mat[1][1] - mat[0][1] * mat[1][0]


def build_word_matrices(knot):
    """Return (r, q): upper-right of s w - w t, and upper-left of w w*."""
    knot = as_knot(knot)
    W = word_matrix(knot)
    Ws = reversed_word_matrix(knot)
    r = matsub(matmul(S_PRIME, W), matmul(W, T_PRIME))[0][1]
    q = matmul(W, Ws)[0][0]
    return r, q


@dataclass(frozen=True)
class APolynomial:
    knot: KnotIndex
    terms: dict  # {(deg_L, deg_M): int}
    stripped_monomial: tuple = (0, 0)
    notes: tuple = field(default=())

    @property
    def deg_L(self):
        return max(k[0] for k in self.terms)

    @property
    def deg_M(self):
        return max(k[1] for k in self.terms)

    def term_list(self):
        return [[a, b, c] for (a, b), c in sorted(self.terms.items())]

    def L_coefficients(self, M):
        """Ascending coefficients in L at a numeric M."""
        out = np.zeros(self.deg_L + 1, dtype=complex)
        for (a, b), c in self.terms.items():
            out[a] += c * M ** b
        return out

    def evaluate(self, L, M):
        return sum(c * L ** a * M ** b for (a, b), c in self.terms.items())

    def roots_L(self, M):
        return all_roots(self.L_coefficients(M))


def _interpolate_in_L(values):
    """Integer polynomial in (L, M) through values[k] = R(L=k) in Z[M]."""
    # forward differences, then sum Delta^k R(0) * binom(L, k)
    diffs = [list(v) for v in values]
    table = [diffs[0]]
    cur = diffs
    while len(cur) > 1:
        cur = [_sub(cur[i + 1], cur[i]) for i in range(len(cur) - 1)]
        table.append(cur[0])
    terms = {}
    falling = [Fraction(1)]  # coefficients of L(L-1)...(L-k+1), ascending
    fact = 1
    for k, dk in enumerate(table):
        if k:
            falling = _mul_linear(falling, -(k - 1))
            fact *= k
        for a, fa in enumerate(falling):
            if not fa:
                continue
            for b, c in enumerate(dk):
                if c:
                    terms[(a, b)] = terms.get((a, b), 0) + fa * c / fact
    out = {}
    for key, v in terms.items():
        if v:
            if v.denominator != 1:
                raise ArithmeticError("non-integral interpolation")
            out[key] = int(v)
    return out


def _sub(a, b):
    n = max(len(a), len(b))
    return [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(n)]


def _mul_linear(p, c):
    """p(L) * (L + c)."""
    out = [Fraction(0)] * (len(p) + 1)
    for i, v in enumerate(p):
        out[i + 1] += v
        out[i] += c * v
    return out


def _gcd_all(vals):
    from math import gcd
    g = 0
    for v in vals:
        g = gcd(g, v)
    return g


def normalize_apoly(terms):
    """Strip L^a M^b factors and integer content; make the lexicographically
    leading term positive.  Returns (terms, (a, b))."""
    if not terms:
        raise ArithmeticError("A-polynomial resultant vanished identically")
    a0 = min(k[0] for k in terms)
    b0 = min(k[1] for k in terms)
    g = _gcd_all(terms.values())
    lead = max(terms)
    if terms[lead] < 0:
        g = -g
    return {(a - a0, b - b0): c // g for (a, b), c in terms.items()}, (a0, b0)


@lru_cache(maxsize=None)
def build_apoly(knot) -> APolynomial:
    knot = as_knot(knot)
    if knot.n == 0:
        raise ValueError("the unknot has no A-polynomial in this construction")
    r, q = build_word_matrices(knot)
    f = r.shift_M(-r.min_M())
    g = q - TriLaurentPoly.monomial(L=1)
    g = g.shift_M(-g.min_M())
    f_tm = f.to_bivar_tM()
    d = f.deg_t()
    values = []
    for ell in range(d + 1):
        g_tm = g.substitute_L(ell).to_bivar_tM()
        res = resultant(f_tm, g_tm, 0)
        rows = res.rows()
        values.append(rows[0] if rows else [])
    terms = _interpolate_in_L(values)
    terms, stripped = normalize_apoly(terms)
    notes = []
    if all(sum(c for (a, b), c in terms.items() if b == mb) == 0
           for mb in {k[1] for k in terms}):
        notes.append("L - 1 divides the polynomial (abelian factor kept)")
    return APolynomial(knot, terms, stripped, tuple(notes))


def holonomy_from_V(V, alpha):
    """L = M^-2 (A + iV)/(A - iV) with A = cot(alpha/2), M = exp(i alpha/2)."""
    A = 1.0 / np.tan(alpha / 2)
    M = np.exp(0.5j * alpha)
    return M ** -2 * (A + 1j * V) / (A - 1j * V)


def V_from_holonomy(L, alpha):
    """Inverse map: iV = A (L M^2 - 1)/(L M^2 + 1)."""
    A = 1.0 / np.tan(alpha / 2)
    M2 = np.exp(1j * alpha)
    return -1j * A * (L * M2 - 1) / (L * M2 + 1)


def matched_distance(a, b):
    """Largest distance in the optimal pairing of two equal-size multisets."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.size != b.size:
        return float("inf")
    cost = np.abs(a[:, None] - b[None, :])
    i, j = linear_sum_assignment(cost)
    return float(cost[i, j].max()) if a.size else 0.0


def bijection_residual(knot, alpha):
    """Distance between the L-roots of A(L, e^{i alpha/2}) and the images of
    the roots of P_2n(V, cos(alpha/2)) under V -> L."""
    knot = as_knot(knot)
    ap = build_apoly(knot)
    s = np.sin(alpha / 2) ** 2
    Y = all_roots_batch(reduced_coefficient_matrix(knot.n, [s]))[0]
    images = holonomy_from_V(Y / s, alpha)
    L_roots = ap.roots_L(np.exp(0.5j * alpha))
    return matched_distance(images, L_roots)
