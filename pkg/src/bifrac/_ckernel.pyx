# cython: language_level=3
# cython: binding=False
"""Compiled integer kernel for exact arithmetic in Q(cbrt(d)).

Cython build of ``bifrac._pykernel`` with the identical public surface and
semantics; see that module for the representation contract.  Coefficients are
arbitrary-precision Python ints, so the win over the pure kernel comes from
removing interpreter dispatch around the many small bigint operations, not
from machine arithmetic.  Keep the two files in lockstep.
"""

from math import gcd

cdef int _START_BITS = 32

cdef dict _delta_cache = {}


def icbrt(n):
    """Floor of the real cube root of a nonnegative int."""
    if n < 0:
        raise ValueError("icbrt argument must be nonnegative")
    if n == 0:
        return 0
    x = 1 << -(-(<object> n).bit_length() // 3)
    while True:
        y = (2 * x + n // (x * x)) // 3
        if y >= x:
            break
        x = y
    while x * x * x > n:
        x -= 1
    while (x + 1) ** 3 <= n:
        x += 1
    return x


def perfect_cube(n):
    if n < 0:
        n = -n
    r = icbrt(n)
    return r * r * r == n


def delta_shifts(d, long bits):
    """(floor(2^bits * cbrt(d)), floor(2^bits * cbrt(d)^2)), cached per d."""
    cdef tuple best = _delta_cache.get(d)
    cdef long shift
    if best is not None and <long> best[0] >= bits:
        shift = <long> best[0] - bits
        return best[1] >> shift, best[2] >> shift
    c1 = icbrt(d << (3 * bits))
    c2 = icbrt((d * d) << (3 * bits))
    _delta_cache[d] = (bits, c1, c2)
    return c1, c2


def normalize(p0, p1, p2, q):
    if q == 0:
        raise ZeroDivisionError("zero denominator")
    if q < 0:
        p0, p1, p2, q = -p0, -p1, -p2, -q
    g = gcd(p0, p1, p2, q)
    if g > 1:
        return p0 // g, p1 // g, p2 // g, q // g
    return p0, p1, p2, q


def add(tuple x, tuple y):
    p0, p1, p2, q = x
    r0, r1, r2, s = y
    return normalize(p0 * s + r0 * q, p1 * s + r1 * q, p2 * s + r2 * q, q * s)


def neg(tuple x):
    p0, p1, p2, q = x
    return (-p0, -p1, -p2, q)


def sub(tuple x, tuple y):
    return add(x, neg(y))


def sub_int(tuple x, n):
    # normal form is preserved: a common divisor of (p0 - n*q, p1, p2, q)
    # would divide p0 as well
    p0, p1, p2, q = x
    return (p0 - n * q, p1, p2, q)


def mul(d, tuple x, tuple y):
    p0, p1, p2, q = x
    r0, r1, r2, s = y
    return normalize(
        p0 * r0 + d * (p1 * r2 + p2 * r1),
        p0 * r1 + p1 * r0 + d * p2 * r2,
        p0 * r2 + p1 * r1 + p2 * r0,
        q * s,
    )


def inv(d, tuple x):
    # adjugate of the multiplication-by-x matrix in the basis
    # (1, cbrt(d), cbrt(d)^2), divided by its determinant (the field norm);
    # the norm vanishes only at zero because x^3 - d is irreducible
    p0, p1, p2, q = x
    n = p0 ** 3 + d * p1 ** 3 + d * d * p2 ** 3 - 3 * d * p0 * p1 * p2
    if n == 0:
        raise ZeroDivisionError("inverse of zero")
    return normalize(
        q * (p0 * p0 - d * p1 * p2),
        q * (d * p2 * p2 - p0 * p1),
        q * (p1 * p1 - p0 * p2),
        n,
    )


def bracket(d, tuple x, long bits):
    """Integer bounds: lo <= value * (q << bits) <= hi.  Returns (lo, hi, q << bits)."""
    p0, p1, p2, q = x
    c1, c2 = delta_shifts(d, bits)
    lo = hi = p0 << bits
    if p1 >= 0:
        lo += p1 * c1
        hi += p1 * (c1 + 1)
    else:
        lo += p1 * (c1 + 1)
        hi += p1 * c1
    if p2 >= 0:
        lo += p2 * c2
        hi += p2 * (c2 + 1)
    else:
        lo += p2 * (c2 + 1)
        hi += p2 * c2
    return lo, hi, q << bits


def floor(d, tuple x):
    p0, p1, p2, q = x
    if p1 == 0 and p2 == 0:
        return p0 // q
    cdef long bits = _START_BITS
    while True:
        lo, hi, den = bracket(d, x, bits)
        fl = lo // den
        if fl == hi // den:
            return fl
        bits <<= 1


def sign(d, tuple x):
    p0, p1, p2, q = x
    if p1 == 0 and p2 == 0:
        return (p0 > 0) - (p0 < 0)
    cdef long bits = _START_BITS
    while True:
        lo, hi, _ = bracket(d, x, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits <<= 1


def jacobi_step(d, tuple x, tuple y):
    """One expansion step: (a, b, x', y'); x' is None when y is an exact integer."""
    a = floor(d, x)
    b = floor(d, y)
    yf = sub_int(y, b)
    if yf[0] == 0 and yf[1] == 0 and yf[2] == 0:
        return a, b, None, None
    nx = inv(d, yf)
    ny = mul(d, sub_int(x, a), nx)
    return a, b, nx, ny
