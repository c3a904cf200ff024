"""Redei rational functions and their higher-degree generalization.

The classic pair (N_n, D_n) collects the rational and irrational parts of
(z + sqrt(d))^n.  The degree-e generalization expands (z + d^((e-1)/e))^n over
the basis (1, d^(1/e), ..., d^((e-1)/e)); ``mu_sum`` evaluates one coordinate
by its binomial sum and ``mu_matrix`` recovers all of them as entries of the
n-th power of an e x e companion-style matrix (z on the diagonal, d above it,
1 in the bottom-left corner).  The two evaluations agree entry for entry,
which the test suite exploits as a dual-route check.

Coordinate ratios mu_n(k)/mu_n(e-1) converge to d^((e-k-1)/e);
``mu_limit_check`` certifies the deviation against an exact root bracket.
``redei_permutes`` decides bijectivity of z -> N_n/D_n on the projective line
over F_q (the point at infinity maps to itself; poles map to infinity).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

IntOrFraction = Union[int, Fraction]


def iroot(n: int, e: int) -> int:
    """Floor of the e-th root of a nonnegative int."""
    if n < 0:
        raise ValueError("iroot argument must be nonnegative")
    if e < 1:
        raise ValueError("root degree must be >= 1")
    if n in (0, 1) or e == 1:
        return n
    x = 1 << -(-n.bit_length() // e)
    while True:
        y = ((e - 1) * x + n // x ** (e - 1)) // e
        if y >= x:
            break
        x = y
    while x ** e > n:
        x -= 1
    while (x + 1) ** e <= n:
        x += 1
    return x


def is_perfect_power(n: int, e: int) -> bool:
    if n < 0:
        return False
    return iroot(n, e) ** e == n


@dataclass(frozen=True)
class RedeiPair:
    """(N_n, D_n) with (z + sqrt(d))^n = N_n + D_n*sqrt(d)."""

    n: int
    d: int
    z: IntOrFraction
    N: IntOrFraction
    D: IntOrFraction

    @property
    def Q(self) -> Fraction:
        if self.D == 0:
            raise ZeroDivisionError(f"D_{self.n}(d={self.d}, z={self.z}) = 0")
        return Fraction(self.N) / Fraction(self.D)


def redei_classic(d: int, z: IntOrFraction, n: int) -> RedeiPair:
    """Binomial-sum evaluation of N_n and D_n."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if d < 1 or math.isqrt(d) ** 2 == d:
        raise ValueError(f"d={d} must be a positive nonsquare")
    N = sum(math.comb(n, 2 * k) * d ** k * z ** (n - 2 * k)
            for k in range(n // 2 + 1))
    D = sum(math.comb(n, 2 * k + 1) * d ** k * z ** (n - 2 * k - 1)
            for k in range((n + 1) // 2))
    return RedeiPair(n, d, z, N, D)


@dataclass(frozen=True)
class MuValue:
    e: int
    k: int
    d: int
    z: int
    n: int
    value: int


def _check_mu_params(e: int, d: int, k: int | None = None) -> None:
    if e < 2:
        raise ValueError("e must be >= 2")
    if k is not None and not 0 <= k <= e - 1:
        raise ValueError(f"k={k} out of range 0..{e - 1}")
    if d < 2:
        raise ValueError(f"d={d} is out of range (need d >= 2)")
    if is_perfect_power(d, e):
        raise ValueError(f"d={d} is a perfect {e}th power")


def mu_sum(e: int, k: int, d: int, z: int, n: int) -> MuValue:
    """Binomial-sum evaluation of one expansion coordinate.

    Terms with binomial index outside [0, n] or a negative d-exponent are
    zero, so the sum effectively runs over e*h - k in range.
    """
    _check_mu_params(e, d, k)
    if n < 0:
        raise ValueError("n must be >= 0")
    total = 0
    for h in range(n // e + 2):
        j = e * h - k
        if 0 <= j <= n and (e - 1) * h - k >= 0:
            total += (math.comb(n, j) * d ** ((e - 1) * h - k)
                      * z ** (n - j))
    return MuValue(e, k, d, z, n, total)


def mu_vector(e: int, d: int, z: int, n: int) -> tuple[int, ...]:
    """All e coordinates of (z + d^((e-1)/e))^n, by the binomial sums."""
    return tuple(mu_sum(e, k, d, z, n).value for k in range(e))


def _mat_mul_int(a, b, e):
    return tuple(tuple(sum(a[i][k] * b[k][j] for k in range(e))
                       for j in range(e)) for i in range(e))


def mu_matrix(e: int, d: int, z: int, n: int) -> tuple[tuple[int, ...], ...]:
    """n-th power of the banded base matrix; entry (i, j) equals
    mu_n((i - j) mod e), times d when j > i.  The first column is
    mu_n(0), ..., mu_n(e-1) top to bottom."""
    _check_mu_params(e, d)
    if n < 0:
        raise ValueError("n must be >= 0")
    base = tuple(tuple(z if i == j else d if j == i + 1 else
                       1 if (i, j) == (e - 1, 0) else 0
                       for j in range(e)) for i in range(e))
    result = tuple(tuple(int(i == j) for j in range(e)) for i in range(e))
    power = base
    m = n
    while m:
        if m & 1:
            result = _mat_mul_int(result, power, e)
        m >>= 1
        if m:
            power = _mat_mul_int(power, power, e)
    return result


def _root_enclosure(radicand: int, e: int,
                    width: Fraction) -> tuple[Fraction, Fraction]:
    """[lo, hi] with lo^e <= radicand <= hi^e and hi - lo <= width."""
    r = iroot(radicand, e)
    if r ** e == radicand:
        return Fraction(r), Fraction(r)
    lo, hi = Fraction(1), Fraction(max(radicand, 2))
    while hi - lo > width:
        mid = (lo + hi) / 2
        if mid ** e < radicand:
            lo = mid
        else:
            hi = mid
    return lo, hi


@dataclass
class MuLimitReport:
    """Exact ratio trace against a certified bracket of the limit."""

    e: int
    k: int
    d: int
    z: int
    n_max: int
    tol: Fraction
    target_lo: Fraction
    target_hi: Fraction
    ratios: list[tuple[int, Fraction | None]]
    zero_denominators: list[int]
    deviation: Fraction | None
    passed: bool

    def to_dict(self) -> dict:
        return {
            "params": {"e": self.e, "k": self.k, "d": self.d, "z": self.z,
                       "n_max": self.n_max, "tol": str(self.tol)},
            "target": [str(self.target_lo), str(self.target_hi)],
            "ratios": [{"n": n, "ratio": None if r is None else str(r)}
                       for n, r in self.ratios],
            "zero_denominators": list(self.zero_denominators),
            "deviation": None if self.deviation is None else str(self.deviation),
            "passed": self.passed,
        }


def mu_limit_check(e: int, d: int, z: int, k: int, n_max: int,
                   tol) -> MuLimitReport:
    """Deviation of mu_n(k)/mu_n(e-1) from d^((e-k-1)/e) at n = n_max.

    Zero denominators along the way are reported, not fatal; the check fails
    only if the final ratio is unavailable or deviates by more than tol.
    """
    _check_mu_params(e, d, k)
    if n_max < 3:
        raise ValueError("n_max must be >= 3")
    tol = Fraction(tol)
    if tol <= 0:
        raise ValueError("tol must be positive")
    target_lo, target_hi = _root_enclosure(d ** (e - k - 1), e, tol / 100)
    ratios: list[tuple[int, Fraction | None]] = []
    zeros: list[int] = []
    for n in range(1, n_max + 1):
        vec = mu_vector(e, d, z, n)
        den = vec[e - 1]
        if den == 0:
            zeros.append(n)
            ratios.append((n, None))
        else:
            ratios.append((n, Fraction(vec[k], den)))
    final = ratios[-1][1]
    if final is None:
        deviation = None
        passed = False
    else:
        deviation = max(abs(final - target_lo), abs(final - target_hi))
        passed = deviation <= tol
    return MuLimitReport(e, k, d, z, n_max, tol, target_lo, target_hi,
                         ratios, zeros, deviation, passed)


def _is_odd_prime(q: int) -> bool:
    if q < 3 or q % 2 == 0:
        return False
    i = 3
    while i * i <= q:
        if q % i == 0:
            return False
        i += 2
    return True


def _fq2_pow(a: int, b: int, d: int, q: int, n: int) -> tuple[int, int]:
    """(a + b*sqrt(d))^n over F_q, d a non-residue; returns (N, D) mod q."""
    ra, rb = 1, 0
    while n:
        if n & 1:
            ra, rb = (ra * a + rb * b * d) % q, (ra * b + rb * a) % q
        n >>= 1
        if n:
            a, b = (a * a + b * b * d) % q, (2 * a * b) % q
    return ra, rb


def redei_permutes(q: int, d: int, n: int) -> bool:
    """Whether z -> N_n(d,z)/D_n(d,z) permutes the projective line over F_q.

    Poles (D_n = 0) map to the point at infinity; infinity maps to itself
    since deg N_n = n exceeds deg D_n = n - 1.
    """
    if not _is_odd_prime(q):
        raise ValueError(f"q={q} is not an odd prime")
    if n < 1:
        raise ValueError("n must be >= 1")
    dm = d % q
    if dm == 0 or pow(dm, (q - 1) // 2, q) != q - 1:
        raise ValueError(f"d={d} is a quadratic residue modulo q={q}")
    infinity = q
    images = {infinity}
    for z in range(q):
        num, den = _fq2_pow(z, 1, dm, q, n)
        images.add(infinity if den == 0 else num * pow(den, -1, q) % q)
    return len(images) == q + 1
