"""Explicit SL(2, C) matrices for the twist-knot group, used as an oracle.

With nu = alpha/2 the meridian images are

    S = [[cos nu, i e^{rho/2} sin nu], [i e^{-rho/2} sin nu, cos nu]]
    T = [[cos nu, i e^{-rho/2} sin nu], [i e^{rho/2} sin nu, cos nu]]

and c = [[0, -1], [1, 0]] conjugates S to T^{-1}.  With U = T S^-1 T^-1 S
and W = U^n the relator holds iff tr(S W c) = 0, and dividing that trace by
2i sinh(rho/2) sin(alpha/2) reproduces P_2n(cosh rho, cos(alpha/2)).

The entries of U^n grow like exp(|n| Re rho) while the traces we want stay
moderate, so double precision loses everything to cancellation once |n| is
around 5.  The oracle therefore works in mpmath with a working precision
that scales with |n|; matrices are plain nested tuples of mpc.
"""

from __future__ import annotations

from dataclasses import dataclass

import mpmath

from .distance_poly import as_knot, evaluate_numeric


def working_dps(n: int) -> int:
    return 40 + 4 * abs(int(n))


class DegenerateParameters(ValueError):
    pass


@dataclass(frozen=True)
class RepParams:
    alpha: float
    rho: complex

    @classmethod
    def from_V(cls, alpha, V):
        """Parameters with cosh(rho) = V (principal branch)."""
        return cls(alpha, complex(mpmath.acosh(V)))

    @property
    def V(self):
        return mpmath.cosh(mpmath.mpc(self.rho))

    @property
    def B(self):
        return mpmath.cos(mpmath.mpf(self.alpha) / 2)


def mul(a, b):
    return ((a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]),
            (a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]))


def inv2(m):
    """Inverse of a 2x2 matrix of determinant one."""
    return ((m[1][1], -m[0][1]), (-m[1][0], m[0][0]))


def trace(m):
    return m[0][0] + m[1][1]


def add(a, b, sign=1):
    return tuple(tuple(a[i][j] + sign * b[i][j] for j in range(2)) for i in range(2))


def norm(m):
    return mpmath.sqrt(sum(abs(m[i][j]) ** 2 for i in range(2) for j in range(2)))


def identity():
    one, zero = mpmath.mpc(1), mpmath.mpc(0)
    return ((one, zero), (zero, one))


def c_matrix():
    one, zero = mpmath.mpc(1), mpmath.mpc(0)
    return ((zero, -one), (one, zero))


def build_rep(p: RepParams):
    """Return (S, T, c) at the current mpmath precision."""
    nu = mpmath.mpf(p.alpha) / 2
    cs, sn = mpmath.cos(nu), mpmath.sin(nu)
    e = mpmath.exp(mpmath.mpc(p.rho) / 2)
    i = mpmath.mpc(0, 1)
    S = ((mpmath.mpc(cs), i * e * sn), (i / e * sn, mpmath.mpc(cs)))
    T = ((mpmath.mpc(cs), i / e * sn), (i * e * sn, mpmath.mpc(cs)))
    return S, T, c_matrix()


def matrix_power(m, n):
    """m**n by repeated multiplication; negative n uses the inverse."""
    base = m if n >= 0 else inv2(m)
    out = identity()
    for _ in range(abs(n)):
        out = mul(out, base)
    return out


def word_matrices(knot, p: RepParams):
    """S, T, c, U and W = U^n for the knot's relator word."""
    knot = as_knot(knot)
    S, T, c = build_rep(p)
    U = mul(mul(T, inv2(S)), mul(inv2(T), S))
    return S, T, c, U, matrix_power(U, knot.n)


def reversed_word_matrix(knot, p: RepParams):
    """Image of w*, the word w = (t s^-1 t^-1 s)^n read backwards."""
    knot = as_knot(knot)
    S, T, _ = build_rep(p)
    # reversing the letters of t s^-1 t^-1 s gives s t^-1 s^-1 t
    block = mul(mul(S, inv2(T)), mul(inv2(S), T))
    return matrix_power(block, knot.n)


def trace_oracle(knot, p: RepParams):
    """tr(S U^n c) / (2i sinh(rho/2) sin(alpha/2)) as an mpc."""
    knot = as_knot(knot)
    with mpmath.workdps(working_dps(knot.n)):
        denom = 2j * mpmath.sinh(mpmath.mpc(p.rho) / 2) * mpmath.sin(mpmath.mpf(p.alpha) / 2)
        if abs(denom) < 1e-14:
            raise DegenerateParameters("sinh(rho/2) sin(alpha/2) vanishes")
        S, _, c, _, W = word_matrices(knot, p)
        return +(trace(mul(mul(S, W), c)) / denom)


def oracle_residual(knot, p: RepParams) -> float:
    """|trace_oracle - P_2n(cosh rho, cos(alpha/2))| / (1 + |P_2n|)."""
    knot = as_knot(knot)
    with mpmath.workdps(working_dps(knot.n)):
        P = evaluate_numeric(knot.n, p.V, p.B)
        return float(abs(trace_oracle(knot, p) - P) / (1 + abs(P)))


def relator_check(knot, p: RepParams) -> float:
    """Frobenius norm of S W T^-1 W^-1 + (S W c)^2; zero for every parameter."""
    knot = as_knot(knot)
    with mpmath.workdps(working_dps(knot.n)):
        S, T, c, _, W = word_matrices(knot, p)
        swc = mul(mul(S, W), c)
        lhs = mul(mul(S, W), mul(inv2(T), inv2(W)))
        return float(norm(add(lhs, mul(swc, swc))))


def swc_identity_residual(knot, p: RepParams) -> float:
    """Largest of |cS - T^-1 c|, |c^2 + I| and the relator_check norm."""
    knot = as_knot(knot)
    with mpmath.workdps(working_dps(knot.n)):
        S, T, c = build_rep(p)
        r1 = norm(add(mul(c, S), mul(inv2(T), c), -1))
        r2 = norm(add(mul(c, c), identity()))
    return max(float(r1), float(r2), relator_check(knot, p))


def cayley_hamilton_residual(knot, p: RepParams) -> float:
    """|tr(S U^n c) - tr(S U^(n-1) c) tr(U^-1) + tr(S U^(n-2) c)|."""
    knot = as_knot(knot)
    n = knot.n
    with mpmath.workdps(working_dps(n)):
        S, T, c = build_rep(p)
        U = mul(mul(T, inv2(S)), mul(inv2(T), S))
        tr = [trace(mul(mul(S, matrix_power(U, k)), c)) for k in (n - 2, n - 1, n)]
        return float(abs(tr[2] - tr[1] * trace(inv2(U)) + tr[0]))


def determinants(p: RepParams):
    """det S, det T, det c, det U as Python complex numbers."""
    S, T, c = build_rep(p)
    U = mul(mul(T, inv2(S)), mul(inv2(T), S))
    return [complex(m[0][0] * m[1][1] - m[0][1] * m[1][0]) for m in (S, T, c, U)]


def relator_residual(knot, p: RepParams) -> float:
    """Frobenius norm of S W T^-1 W^-1 - I; zero exactly on representations."""
    knot = as_knot(knot)
    with mpmath.workdps(working_dps(knot.n)):
        S, T, _, _, W = word_matrices(knot, p)
        return float(norm(add(mul(mul(S, W), mul(inv2(T), inv2(W))), identity(), -1)))


def longitude_matrices(knot, p: RepParams):
    """(L_T, L_S): images of l t with l = w* w, and l_* s with l_* = w w*."""
    S, T, _, _, W = word_matrices(knot, p)
    Ws = reversed_word_matrix(knot, p)
    return mul(mul(Ws, W), T), mul(mul(W, Ws), S)


def longitude_trace_check(knot, p: RepParams) -> float:
    """|tr(S^-1 L_T) - tr(S^-1 T)| for n >= 1, |tr(T^-1 L_S) - tr(S^-1 T)| for n <= -1.

    This is an identity in the free group, so it holds for all parameters.
    """
    knot = as_knot(knot)
    if knot.n == 0:
        raise ValueError("n = 0 has trivial longitude")
    with mpmath.workdps(working_dps(knot.n)):
        S, T, _ = build_rep(p)
        L_T, L_S = longitude_matrices(knot, p)
        target = trace(mul(inv2(S), T))
        got = trace(mul(inv2(S), L_T)) if knot.n >= 1 else trace(mul(inv2(T), L_S))
        return float(abs(got - target))


def tr_S_inv_T(p: RepParams):
    S, T, _ = build_rep(p)
    return trace(mul(inv2(S), T))


def random_params(rng, size, re_rho=3.0, im_rho=2.0):
    """Random (alpha, rho) with alpha in (0, pi], |Re rho| <= 3, |Im rho| <= 2.

    Draws where |sinh(rho/2) sin(alpha/2)| < 1e-6 are rejected, since the
    oracle divides by that factor.
    """
    out = []
    while len(out) < size:
        a = float(rng.uniform(0.0, 3.141592653589793))
        rho = complex(rng.uniform(-re_rho, re_rho), rng.uniform(-im_rho, im_rho))
        if a == 0.0 or abs(mpmath.sinh(rho / 2) * mpmath.sin(a / 2)) < 1e-6:
            continue
        out.append(RepParams(a, rho))
    return out
