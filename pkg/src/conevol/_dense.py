"""Dense univariate integer polynomials as plain lists, ascending degree.

The empty list is the zero polynomial.  Long products and exact quotients
go through Kronecker substitution, so the heavy lifting is one big-integer
multiply or divide.  Those use GMP through gmpy2 when it is installed
(CPython's own long division is quadratic) and plain ints otherwise.
"""

from math import gcd

try:
    from gmpy2 import mpz as big
except ImportError:  # pragma: no cover - exercised only without gmpy2
    big = int

_KRONECKER_MIN = 12


def trim(a):
    while a and a[-1] == 0:
        a.pop()
    return a


def add(a, b):
    if len(a) < len(b):
        a, b = b, a
    r = list(a)
    for i, c in enumerate(b):
        r[i] += c
    return trim(r)


def sub(a, b):
    n = max(len(a), len(b))
    r = [0] * n
    for i, c in enumerate(a):
        r[i] = c
    for i, c in enumerate(b):
        r[i] -= c
    return trim(r)


def neg(a):
    return [-c for c in a]


def scale(a, k):
    if k == 0:
        return []
    return [k * c for c in a]


def shift(a, k):
    """Multiply by y**k."""
    if not a:
        return []
    return [0] * k + list(a)


def _maxbits(a):
    return max(abs(c) for c in a).bit_length()


def pack(a, nbytes):
    # two's-complement free packing: positive and negative parts separately
    pos = bytearray()
    negb = bytearray()
    zero = bytes(nbytes)
    for c in a:
        if c >= 0:
            pos += c.to_bytes(nbytes, "little")
            negb += zero
        else:
            pos += zero
            negb += (-c).to_bytes(nbytes, "little")
    return int.from_bytes(pos, "little") - int.from_bytes(negb, "little")


def unpack(value, nbytes, count):
    half = 1 << (8 * nbytes - 1)
    bias = int.from_bytes(half.to_bytes(nbytes, "little") * count, "little")
    raw = (value + bias).to_bytes(nbytes * count + 1, "little")
    out = [int.from_bytes(raw[i * nbytes:(i + 1) * nbytes], "little") - half
           for i in range(count)]
    return trim(out)


def mul(a, b):
    if not a or not b:
        return []
    if len(a) < _KRONECKER_MIN or len(b) < _KRONECKER_MIN:
        r = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    r[i + j] += x * y
        return trim(r)
    bits = _maxbits(a) + _maxbits(b) + min(len(a), len(b)).bit_length() + 2
    nbytes = bits // 8 + 1
    prod = big(pack(a, nbytes)) * big(pack(b, nbytes))
    return unpack(int(prod), nbytes, len(a) + len(b) - 1)


def divmod_exact_lc(a, b):
    """Schoolbook division, assuming the leading coefficient of `b` divides
    every leading term that comes up.  Returns (quotient, remainder)."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    lb = b[-1]
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c, rem = divmod(a[-1], lb)
        if rem:
            raise ArithmeticError("inexact polynomial division")
        k = len(a) - len(b)
        q[k] = c
        for j, y in enumerate(b):
            a[j + k] -= c * y
        trim(a)
    return trim(q), a


def exact_div(a, b):
    """Quotient a / b in Z[y]; raises if the division is not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return []
    if len(b) == 1:
        d = b[0]
        out = []
        for c in a:
            q, r = divmod(c, d)
            if r:
                raise ArithmeticError("inexact polynomial division")
            out.append(q)
        return out
    if len(a) < len(b):
        raise ArithmeticError("inexact polynomial division")
    nq = len(a) - len(b) + 1
    if nq < _KRONECKER_MIN and len(b) < _KRONECKER_MIN:
        q, r = divmod_exact_lc(a, b)
        if r:
            raise ArithmeticError("inexact polynomial division")
        return q
    # Mignotte: quotient coefficients are at most 2**deg(q) * ||a||_2
    bits = _maxbits(a) + len(a).bit_length() + nq + 2
    nbytes = bits // 8 + 1
    pa = pack(a, nbytes)
    pb = pack(b, nbytes)
    q, r = divmod(big(pa), big(pb))
    if r:
        raise ArithmeticError("inexact polynomial division")
    return unpack(int(q), nbytes, nq)


def derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def content(a):
    g = 0
    for c in a:
        g = gcd(g, c)
        if g == 1:
            break
    return g


def primitive(a):
    """Divide out the content and make the leading coefficient positive."""
    if not a:
        return []
    g = content(a)
    if a[-1] < 0:
        g = -g
    return [c // g for c in a]


def evaluate(a, x):
    acc = 0
    for c in reversed(a):
        acc = acc * x + c
    return acc


def sign_at_rational(a, num, den):
    """Sign of a(num/den) for den > 0, using integer arithmetic only."""
    if not a:
        return 0
    d = len(a) - 1
    acc = 0
    pw = 1
    # homogenised Horner: sum c_i num^i den^(d-i)
    for c in reversed(a):
        acc = acc * num + c * pw
        pw *= den
    return (acc > 0) - (acc < 0)


def pseudo_remainder(a, b):
    """prem(a, b) = lc(b)**(deg a - deg b + 1) * a mod b, computed in Z[y]."""
    if not b:
        raise ZeroDivisionError("pseudo-remainder by zero")
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    delta = len(a) - len(b) + 1
    if delta <= 0:
        return a
    steps = 0
    while a and len(a) - 1 >= db:
        k = len(a) - 1 - db
        lead = a[-1]
        a = [lb * c for c in a]
        for j, y in enumerate(b):
            a[j + k] -= lead * y
        a.pop()
        trim(a)
        steps += 1
    # missing steps where the degree dropped by more than one
    if steps < delta:
        a = scale(a, lb ** (delta - steps))
    return a
