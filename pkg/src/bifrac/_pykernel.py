"""Pure-Python integer kernel for exact arithmetic in Q(cbrt(d)).

A value is a 4-tuple ``(p0, p1, p2, q)`` of ints encoding

    (p0 + p1*cbrt(d) + p2*cbrt(d)**2) / q

with ``q > 0`` and ``gcd(p0, p1, p2, q) == 1``.  Every function assumes and
preserves that normal form.  ``d`` must be an integer >= 2 that is not a
perfect cube, so (1, cbrt(d), cbrt(d)^2) is a rational basis and a value with
``p1 == p2 == 0`` is the only way to encode a rational number.

Floor and sign are decided with dyadic brackets of cbrt(d): with
``c = icbrt(d << 3*B)`` we have ``c <= 2^B * cbrt(d) < c + 1`` exactly, so the
encoded value is trapped in a one-ulp interval whose width halves as ``B``
doubles.  A nonzero irrational value never sits on an integer boundary, hence
the refinement loop terminates; exactly-rational values take the shortcut.

This is the reference implementation.  ``_ckernel.pyx`` is the compiled copy
with the identical public surface; keep the two in lockstep.
"""

from math import gcd

_START_BITS = 32

# per-radicand best-known bracket: d -> (bits, floor(2^bits*cbrt(d)), floor(2^bits*cbrt(d)^2))
_delta_cache = {}


def icbrt(n):
    """Floor of the real cube root of a nonnegative int."""
    if n < 0:
        raise ValueError("icbrt argument must be nonnegative")
    if n == 0:
        return 0
    x = 1 << -(-n.bit_length() // 3)
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


def delta_shifts(d, bits):
    """(floor(2^bits * cbrt(d)), floor(2^bits * cbrt(d)^2)), cached per d."""
    best = _delta_cache.get(d)
    if best is not None and best[0] >= bits:
        shift = best[0] - bits
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


def add(x, y):
    p0, p1, p2, q = x
    r0, r1, r2, s = y
    return normalize(p0 * s + r0 * q, p1 * s + r1 * q, p2 * s + r2 * q, q * s)


def neg(x):
    p0, p1, p2, q = x
    return (-p0, -p1, -p2, q)


def sub(x, y):
    return add(x, neg(y))


def sub_int(x, n):
    # normal form is preserved: a common divisor of (p0 - n*q, p1, p2, q)
    # would divide p0 as well
    p0, p1, p2, q = x
    return (p0 - n * q, p1, p2, q)


def mul(d, x, y):
    p0, p1, p2, q = x
    r0, r1, r2, s = y
    return normalize(
        p0 * r0 + d * (p1 * r2 + p2 * r1),
        p0 * r1 + p1 * r0 + d * p2 * r2,
        p0 * r2 + p1 * r1 + p2 * r0,
        q * s,
    )


def inv(d, x):
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


def bracket(d, x, bits):
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


def floor(d, x):
    p0, p1, p2, q = x
    if p1 == 0 and p2 == 0:
        return p0 // q
    bits = _START_BITS
    while True:
        lo, hi, den = bracket(d, x, bits)
        fl = lo // den
        if fl == hi // den:
            return fl
        bits <<= 1


def sign(d, x):
    p0, p1, p2, q = x
    if p1 == 0 and p2 == 0:
        return (p0 > 0) - (p0 < 0)
    bits = _START_BITS
    while True:
        lo, hi, _ = bracket(d, x, bits)
        if lo > 0:
            return 1
        if hi < 0:
            return -1
        bits <<= 1


def jacobi_step(d, x, y):
    """One expansion step: (a, b, x', y'); x' is None when y is an exact integer."""
    a = floor(d, x)
    b = floor(d, y)
    yf = sub_int(y, b)
    if yf[0] == 0 and yf[1] == 0 and yf[2] == 0:
        return a, b, None, None
    nx = inv(d, yf)
    ny = mul(d, sub_int(x, a), nx)
    return a, b, nx, ny
