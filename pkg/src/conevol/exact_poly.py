"""Exact integer polynomial arithmetic in one, two and three variables.

``BivarIntPoly`` is a sparse polynomial with integer coefficients in two
variables (by default named V and B).  Resultants are computed as the
determinant of the Sylvester matrix in the first variable, by fraction-free
(Bareiss) elimination over Z[second variable].  ``UnivarRatPoly`` carries the
one-variable specialisations used for real root isolation by Sturm
sequences.  ``TriLaurentPoly`` holds polynomials in (t, L) whose coefficients
are Laurent polynomials in M.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, NamedTuple

from . import _dense


class BivarIntPoly:
    """Sparse polynomial in two variables with integer coefficients.

    Stored as a dict ``{(i, j): c}`` meaning ``c * x**i * y**j``; zero
    coefficients are never stored.  Instances are treated as immutable.
    """

    __slots__ = ("_c", "names")

    def __init__(self, coeffs=None, names=("V", "B")):
        c = {}
        if coeffs:
            for (i, j), v in dict(coeffs).items():
                if i < 0 or j < 0:
                    raise ValueError("negative exponent")
                v = int(v)
                if v:
                    c[(int(i), int(j))] = v
        self._c = c
        self.names = tuple(names)

    # -- constructors -------------------------------------------------
    @classmethod
    def const(cls, c, names=("V", "B")):
        return cls({(0, 0): c}, names)

    @classmethod
    def x(cls, names=("V", "B")):
        return cls({(1, 0): 1}, names)

    @classmethod
    def y(cls, names=("V", "B")):
        return cls({(0, 1): 1}, names)

    @classmethod
    def from_rows(cls, rows, names=("V", "B")):
        """Build from ``rows[i]`` = dense ascending coefficients in y of x**i."""
        return cls({(i, j): c for i, row in enumerate(rows)
                    for j, c in enumerate(row) if c}, names)

    # -- accessors ----------------------------------------------------
    @property
    def coeffs(self):
        return dict(self._c)

    def terms(self):
        """Sorted list of ``(i, j, c)``."""
        return [(i, j, c) for (i, j), c in sorted(self._c.items())]

    def is_zero(self):
        return not self._c

    def deg_x(self):
        return max((i for i, _ in self._c), default=0)

    def deg_y(self):
        return max((j for _, j in self._c), default=0)

    # convenience aliases for the (V, B) reading
    deg_V = deg_x
    deg_B = deg_y

    def rows(self):
        """Dense rows: ``rows[i]`` lists the y-coefficients of x**i."""
        if not self._c:
            return []
        rows = [[0] * (self.deg_y() + 1) for _ in range(self.deg_x() + 1)]
        for (i, j), c in self._c.items():
            rows[i][j] = c
        return [_dense.trim(r) for r in rows]

    def leading_coeff_x(self):
        """Coefficient of the top power of x, as a dense list in y."""
        rows = self.rows()
        return rows[-1] if rows else []

    def swap(self):
        """Exchange the roles of the two variables."""
        return BivarIntPoly({(j, i): c for (i, j), c in self._c.items()},
                            (self.names[1], self.names[0]))

    # -- arithmetic ---------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, BivarIntPoly):
            return other
        if isinstance(other, int):
            return BivarIntPoly.const(other, self.names)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return BivarIntPoly(c, self.names)

    __radd__ = __add__

    def __neg__(self):
        return BivarIntPoly({k: -v for k, v in self._c.items()}, self.names)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        c = {}
        for (i1, j1), v1 in self._c.items():
            for (i2, j2), v2 in other._c.items():
                k = (i1 + i2, j1 + j2)
                c[k] = c.get(k, 0) + v1 * v2
        return BivarIntPoly(c, self.names)

    __rmul__ = __mul__

    def __pow__(self, k):
        if k < 0:
            raise ValueError("negative power")
        out = BivarIntPoly.const(1, self.names)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, int):
            other = BivarIntPoly.const(other)
        if not isinstance(other, BivarIntPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def derivative(self, var=0):
        """Formal partial derivative in the first (0) or second (1) variable."""
        c = {}
        for (i, j), v in self._c.items():
            if var == 0 and i:
                c[(i - 1, j)] = v * i
            elif var == 1 and j:
                c[(i, j - 1)] = v * j
        return BivarIntPoly(c, self.names)

    def derivative_V(self):
        return self.derivative(0)

    def content(self):
        return _dense.content(list(self._c.values()))

    def evaluate(self, x, y):
        """Value at numeric (or Fraction) point (x, y)."""
        total = 0
        for row_i, row in enumerate(self.rows()):
            if row:
                total += _dense.evaluate(row, y) * x ** row_i
        return total

    def __call__(self, x, y):
        return self.evaluate(x, y)

    def coeffs_at_y(self, y):
        """Ascending x-coefficients after substituting the second variable."""
        return [_dense.evaluate(row, y) if row else 0 for row in self.rows()]

    def to_univariate_y(self):
        """The polynomial as a ``UnivarRatPoly`` in y (requires deg_x == 0)."""
        if self.deg_x() != 0:
            raise ValueError("polynomial still depends on the first variable")
        rows = self.rows()
        return UnivarRatPoly(rows[0] if rows else [])

    def __repr__(self):
        if not self._c:
            return "0"
        x, y = self.names
        parts = []
        for (i, j), c in sorted(self._c.items(), reverse=True):
            mono = "*".join(m for m in (
                f"{x}**{i}" if i > 1 else (x if i == 1 else ""),
                f"{y}**{j}" if j > 1 else (y if j == 1 else "")) if m)
            parts.append(f"{c}*{mono}" if mono else str(c))
        return " + ".join(parts).replace("+ -", "- ")


def _bareiss_det(mat):
    """Determinant of a square matrix with entries in Z[y] (dense lists).

    Every entry is evaluated at y = 2^K (Kronecker substitution), the
    integer determinant is found by fraction-free Bareiss elimination, and
    the result is read back off in base 2^K.  K comes from the bound
    prod_i sum_j ||m_ij||_1 on the coefficients of any minor, so the
    read-back is exact and a minor vanishes iff its integer image does.
    """
    n = len(mat)
    if n == 0:
        return [1]
    bits = 2
    deg_bound = 0
    for row in mat:
        l1 = sum(sum(abs(c) for c in e) for e in row)
        if l1 == 0:
            return []
        bits += l1.bit_length()
        deg_bound += max(len(e) for e in row) - 1
    nbytes = bits // 8 + 1
    m = [[_dense.big(_dense.pack(e, nbytes)) if e else _dense.big(0) for e in row] for row in mat]
    sign = 1
    prev = _dense.big(1)
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return []
        pivot = m[k][k]
        rowk = m[k]
        for i in range(k + 1, n):
            rowi = m[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                rowi[j] = (rowi[j] * pivot - aik * rowk[j]) // prev
            rowi[k] = 0
        prev = pivot
    det = int(m[n - 1][n - 1]) * sign
    return _dense.unpack(det, nbytes, deg_bound + 1)


def sylvester_matrix(a_rows, b_rows):
    """Sylvester matrix for polynomials given by ascending coefficient rows."""
    m = len(a_rows) - 1
    n = len(b_rows) - 1
    size = m + n
    a_desc = list(reversed(a_rows))
    b_desc = list(reversed(b_rows))
    mat = []
    for i in range(n):
        mat.append([[]] * i + a_desc + [[]] * (size - m - 1 - i))
    for i in range(m):
        mat.append([[]] * i + b_desc + [[]] * (size - n - 1 - i))
    return mat


def resultant(p: BivarIntPoly, q: BivarIntPoly, var: int = 0) -> BivarIntPoly:
    """Resultant of p and q eliminating variable ``var`` (0 = first).

    Returned as a BivarIntPoly depending only on the remaining variable,
    stored in the second slot.
    """
    if p.is_zero() or q.is_zero():
        raise ValueError("resultant of a zero polynomial")
    if var == 1:
        p, q = p.swap(), q.swap()
    if p.deg_x() == 0 and q.deg_x() == 0:
        raise ValueError("both polynomials are constant in the eliminated variable")
    names = p.names
    det = _bareiss_det(sylvester_matrix(p.rows(), q.rows()))
    return BivarIntPoly.from_rows([det], names)


def resultant_V(p: BivarIntPoly, q: BivarIntPoly) -> BivarIntPoly:
    return resultant(p, q, 0)


def discriminant(p: BivarIntPoly, var: int = 0) -> BivarIntPoly:
    """Discriminant in variable ``var``, normalised to a primitive polynomial
    with positive leading coefficient.  Only its zero set is meaningful."""
    if var == 1:
        p = p.swap()
    d = p.deg_x()
    if d < 2:
        raise ValueError("discriminant needs degree >= 2 in the eliminated variable")
    res = resultant(p, p.derivative(0), 0)
    rows = res.rows()
    if not rows:
        return BivarIntPoly({}, p.names)
    quotient = _dense.exact_div(rows[0], p.leading_coeff_x())
    return BivarIntPoly.from_rows([_dense.primitive(quotient)], p.names)


def discriminant_V(p: BivarIntPoly) -> BivarIntPoly:
    return discriminant(p, 0)


@dataclass(frozen=True)
class UnivarRatPoly:
    """Dense univariate polynomial with rational coefficients, ascending."""

    coeffs: tuple

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self):
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return UnivarRatPoly(a)

    def __mul__(self, other):
        if self.is_zero() or other.is_zero():
            return UnivarRatPoly()
        r = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            for j, y in enumerate(other.coeffs):
                r[i + j] += x * y
        return UnivarRatPoly(r)

    def derivative(self):
        return UnivarRatPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def integer_primitive(self):
        """Primitive integer multiple with positive leading coefficient."""
        if not self.coeffs:
            return []
        den = 1
        for c in self.coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        return _dense.primitive([int(c * den) for c in self.coeffs])

    def compose_affine_square(self):
        """p(1 - y**2), used to move between s = sin^2 and B = cos."""
        out = UnivarRatPoly()
        base = UnivarRatPoly([1, 0, -1])
        power = UnivarRatPoly([1])
        for c in self.coeffs:
            out = out + UnivarRatPoly([c]) * power
            power = power * base
        return out


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return abs(a)


def poly_gcd_int(a, b):
    """GCD in Z[y] of two dense integer polynomials via primitive PRS."""
    a = _dense.primitive(a)
    b = _dense.primitive(b)
    if len(a) < len(b):
        a, b = b, a
    while b:
        r = _dense.pseudo_remainder(a, b)
        a, b = b, _dense.primitive(r)
    return _dense.primitive(a) if len(a) > 1 else [1]


def squarefree_part_int(a):
    g = poly_gcd_int(a, _dense.derivative(a))
    if len(g) <= 1:
        return _dense.primitive(a)
    return _dense.primitive(_dense.exact_div(_dense.primitive(a), g))


def sturm_sequence(a):
    """Sturm sequence of a dense integer polynomial, kept primitive.

    Each remainder is negated pseudo-remainder scaled by a positive factor,
    which leaves sign variations unchanged.
    """
    a = _dense.primitive(a)
    seq = [a, _dense.primitive(_dense.derivative(a))]
    while len(seq[-1]) > 1:
        p, q = seq[-2], seq[-1]
        r = _dense.pseudo_remainder(p, q)
        delta = len(p) - len(q) + 1
        if q[-1] < 0 and delta % 2 == 1:
            r = _dense.neg(r)
        r = _dense.neg(r)
        if not r:
            break
        g = _dense.content(r)
        seq.append([c // g for c in r])
    return seq


def _variations(seq, x: Fraction):
    num, den = x.numerator, x.denominator
    signs = [s for s in (_dense.sign_at_rational(p, num, den) for p in seq) if s]
    return sum(1 for u, v in zip(signs, signs[1:]) if u != v)


class RootInterval(NamedTuple):
    lo: Fraction
    hi: Fraction

    @property
    def mid(self) -> float:
        return float((self.lo + self.hi) / 2)

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo


def count_real_roots(p: UnivarRatPoly, lo, hi) -> int:
    """Number of distinct real roots in (lo, hi]."""
    a = squarefree_part_int(p.integer_primitive())
    if len(a) <= 1:
        return 0
    seq = sturm_sequence(a)
    return _variations(seq, Fraction(lo)) - _variations(seq, Fraction(hi))


def isolate_real_roots(p: UnivarRatPoly, lo, hi, tol=1e-12) -> list[RootInterval]:
    """Disjoint isolating intervals (lo_k, hi_k] of width <= tol, one per
    distinct real root of p in (lo, hi], sorted ascending."""
    if p.is_zero():
        raise ValueError("cannot isolate roots of the zero polynomial")
    lo, hi = Fraction(lo), Fraction(hi)
    if not lo < hi:
        raise ValueError("need lo < hi")
    if tol <= 0:
        raise ValueError("tol must be positive")
    tol = Fraction(tol)
    a = squarefree_part_int(p.integer_primitive())
    if len(a) <= 1:
        return []
    seq = sturm_sequence(a)
    out = []
    stack = [(lo, hi, _variations(seq, lo), _variations(seq, hi))]
    while stack:
        a_, b_, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            out.append(_refine_simple_root(a, a_, b_, tol))
            continue
        m = (a_ + b_) / 2
        vm = _variations(seq, m)
        stack.append((m, b_, vm, vb))
        stack.append((a_, m, va, vm))
    out.sort()
    return out


def _sign(a, x: Fraction):
    return _dense.sign_at_rational(a, x.numerator, x.denominator)


def _refine_simple_root(a, lo, hi, tol):
    """Shrink (lo, hi], known to hold exactly one root of the squarefree a,
    by sign bisection (cheaper than re-counting with the Sturm chain)."""
    s_hi = _sign(a, hi)
    if s_hi == 0:
        return RootInterval(max(lo, hi - tol), hi)
    while hi - lo > tol:
        m = (lo + hi) / 2
        s_m = _sign(a, m)
        if s_m == 0:
            return RootInterval(max(lo, m - tol), m)
        if s_m == s_hi:
            hi = m
        else:
            lo = m
    return RootInterval(lo, hi)


class TriLaurentPoly:
    """Integer polynomial in (t, L) with Laurent coefficients in M.

    Stored as ``{(deg_t, deg_L, deg_M): c}``; deg_M may be negative.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for k, v in dict(coeffs).items():
                if v:
                    c[tuple(int(e) for e in k)] = int(v)
        self._c = c

    @classmethod
    def const(cls, c):
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, t=0, L=0, M=0, c=1):
        return cls({(t, L, M): c})

    @property
    def coeffs(self):
        return dict(self._c)

    def is_zero(self):
        return not self._c

    def __add__(self, other):
        if isinstance(other, int):
            other = TriLaurentPoly.const(other)
        c = dict(self._c)
        for k, v in other._c.items():
            c[k] = c.get(k, 0) + v
        return TriLaurentPoly(c)

    __radd__ = __add__

    def __neg__(self):
        return TriLaurentPoly({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        if isinstance(other, int):
            other = TriLaurentPoly.const(other)
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            other = TriLaurentPoly.const(other)
        c = {}
        for (a1, b1, c1), v1 in self._c.items():
            for (a2, b2, c2), v2 in other._c.items():
                k = (a1 + a2, b1 + b2, c1 + c2)
                c[k] = c.get(k, 0) + v1 * v2
        return TriLaurentPoly(c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = TriLaurentPoly.const(other)
        if not isinstance(other, TriLaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def deg_t(self):
        return max((k[0] for k in self._c), default=0)

    def deg_L(self):
        return max((k[1] for k in self._c), default=0)

    def min_M(self):
        return min((k[2] for k in self._c), default=0)

    def shift_M(self, k):
        return TriLaurentPoly({(a, b, c + k): v for (a, b, c), v in self._c.items()})

    def evaluate(self, t, L, M):
        return sum(v * t ** a * L ** b * M ** c for (a, b, c), v in self._c.items())

    def __call__(self, t, L, M):
        return self.evaluate(t, L, M)

    def substitute_L(self, value: int) -> "TriLaurentPoly":
        c = {}
        for (a, b, m), v in self._c.items():
            k = (a, 0, m)
            c[k] = c.get(k, 0) + v * value ** b
        return TriLaurentPoly(c)

    def to_bivar_tM(self) -> BivarIntPoly:
        """As a polynomial in (t, M); requires no L and nonnegative M powers."""
        if any(b for (_, b, _) in self._c):
            raise ValueError("polynomial depends on L")
        if self.min_M() < 0:
            raise ValueError("negative M exponent; shift first")
        return BivarIntPoly({(a, m): v for (a, _, m), v in self._c.items()}, ("t", "M"))

    def __repr__(self):
        return f"TriLaurentPoly({len(self._c)} terms)"
