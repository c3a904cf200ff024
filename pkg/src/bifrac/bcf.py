"""Bifurcating continued fractions as data.

A ``Bcf`` holds two rational partial-quotient sequences with an optional
(pre-period, period) structure.  Convergents (A_n/C_n, B_n/C_n) come from the
third-order recurrence

    X_n = a_n*X_{n-1} + b_n*X_{n-2} + X_{n-3}

seeded by A_0 = a_0, B_0 = b_0, C_0 = 1 and the virtual triples
(A,B,C)_{-1} = (1,0,0), (A,B,C)_{-2} = (0,1,0); the same numbers are the first
column of the running product of the step matrices [[a,1,0],[b,0,1],[1,0,0]],
and ``matrix_product`` computes that product independently so the two routes
can be checked against each other.

``lemma_sequences`` splits each rational convergent into an integer numerator
sequence over a product-of-denominators sequence (six sequences in all).  The
recurrence coefficients at a given index depend only on quotient numerators
and denominators; note the s'/s'' third coefficient at n=3 omits d_1 because
their denominator products only start at i=2.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .cubic import RationalLike

Matrix3 = tuple[tuple[Fraction, ...], ...]


def mat_identity() -> Matrix3:
    one, zero = Fraction(1), Fraction(0)
    return ((one, zero, zero), (zero, one, zero), (zero, zero, one))


def mat_mul(a: Matrix3, b: Matrix3) -> Matrix3:
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(3)) for j in range(3))
        for i in range(3))


def step_matrix(a: RationalLike, b: RationalLike) -> Matrix3:
    one, zero = Fraction(1), Fraction(0)
    return ((Fraction(a), one, zero), (Fraction(b), zero, one),
            (one, zero, zero))


@dataclass(frozen=True)
class Bcf:
    """Two partial-quotient sequences, optionally eventually periodic.

    ``period_len == 0`` means a finite fraction; otherwise the stored
    sequences have length ``preperiod_len + period_len`` and indices past the
    end resolve cyclically into the period block.
    """

    a_seq: tuple[Fraction, ...]
    b_seq: tuple[Fraction, ...]
    preperiod_len: int = 0
    period_len: int = 0

    def __post_init__(self):
        object.__setattr__(self, "a_seq",
                           tuple(Fraction(x) for x in self.a_seq))
        object.__setattr__(self, "b_seq",
                           tuple(Fraction(x) for x in self.b_seq))
        if len(self.a_seq) != len(self.b_seq):
            raise ValueError("quotient sequences differ in length")
        if self.preperiod_len < 0 or self.period_len < 0:
            raise ValueError("negative pre-period/period")
        if self.period_len:
            if len(self.a_seq) != self.preperiod_len + self.period_len:
                raise ValueError(
                    "periodic fraction must store exactly pre-period + period quotients")

    def __len__(self):
        return len(self.a_seq)

    @property
    def is_periodic(self) -> bool:
        return self.period_len > 0

    def resolve_index(self, n: int) -> int:
        if n < 0:
            raise IndexError("negative quotient index")
        if n < len(self.a_seq):
            return n
        if not self.period_len:
            raise IndexError(f"finite fraction has no quotient {n}")
        return self.preperiod_len + (n - self.preperiod_len) % self.period_len

    def quotient(self, n: int) -> tuple[Fraction, Fraction]:
        i = self.resolve_index(n)
        return self.a_seq[i], self.b_seq[i]


@dataclass(frozen=True)
class ConvergentTriple:
    A: Fraction
    B: Fraction
    C: Fraction
    index: int

    def pair(self) -> tuple[Fraction, Fraction]:
        if self.C == 0:
            raise ZeroDivisionError(f"C_{self.index} = 0")
        return self.A / self.C, self.B / self.C


def convergents(f: Bcf, n: int) -> list[ConvergentTriple]:
    """Triples (A_k, B_k, C_k) for k = 0..n from the recurrence."""
    if n < 0:
        raise ValueError("n must be >= 0")
    hist = [(Fraction(0), Fraction(1), Fraction(0)),
            (Fraction(1), Fraction(0), Fraction(0))]
    out = []
    for k in range(n + 1):
        a, b = f.quotient(k)
        if k == 0:
            cur = (a, b, Fraction(1))
        else:
            p1, p2, p3 = hist[k + 1], hist[k], hist[k - 1]
            cur = tuple(a * p1[i] + b * p2[i] + p3[i] for i in range(3))
        hist.append(cur)
        out.append(ConvergentTriple(cur[0], cur[1], cur[2], k))
    return out


def matrix_product(f: Bcf, n: int) -> Matrix3:
    """Product of the step matrices for quotients 0..n.

    Columns are the convergent triples at n, n-1, n-2 (rows A, B, C).
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    m = mat_identity()
    for k in range(n + 1):
        a, b = f.quotient(k)
        m = mat_mul(m, step_matrix(a, b))
    return m


def evaluate_numeric(f: Bcf, depth: int) -> tuple[Fraction, Fraction]:
    """Exact rational pair (A/C, B/C) at the given depth."""
    return convergents(f, depth)[-1].pair()


@dataclass(frozen=True)
class LemmaSequences:
    """Integer numerator/denominator sequences of the rational convergents.

    A_n = s_n/t_n, B_n = sp_n/tp_n, C_n = spp_n/tpp_n, exactly, where the
    quotients at index i are read as pairs (a_i, b_i) and (c_i, d_i).
    """

    s: tuple[int, ...]
    sp: tuple[int, ...]
    spp: tuple[int, ...]
    t: tuple[int, ...]
    tp: tuple[int, ...]
    tpp: tuple[int, ...]


def lemma_sequences_from_pairs(a_pairs: Sequence[tuple[int, int]],
                               b_pairs: Sequence[tuple[int, int]],
                               n: int,
                               preperiod_len: int = 0,
                               period_len: int = 0) -> LemmaSequences:
    """Numerator/denominator split of the convergents for explicit pairs.

    The pairs need not be in lowest terms (the split depends on the chosen
    representation; the ratios do not).  Denominators must be nonzero.
    """
    if n < 0:
        raise ValueError("n must be >= 0")

    def resolve(pairs, i):
        if i < len(pairs):
            return pairs[i]
        if not period_len:
            raise IndexError(f"no quotient pair at index {i}")
        return pairs[preperiod_len + (i - preperiod_len) % period_len]

    def ap(i):
        num, den = resolve(a_pairs, i)
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in a-quotient {i}")
        return num, den

    def bp(i):
        num, den = resolve(b_pairs, i)
        if den == 0:
            raise ZeroDivisionError(f"zero denominator in b-quotient {i}")
        return num, den

    a0, b0 = ap(0)
    c0, d0 = bp(0)
    s = [a0]
    sp = [c0]
    spp = [1]
    t = [b0]
    tp = [d0]
    tpp = [1]
    if n >= 1:
        a1, b1 = ap(1)
        c1, d1 = bp(1)
        s.append(a0 * a1 * d1 + b0 * b1 * c1)
        sp.append(a1 * c0 + b1 * d0)
        spp.append(a1)
        t.append(b0 * b1 * d1)
        tp.append(d0 * b1)
        tpp.append(b1)
    if n >= 2:
        a2, b2 = ap(2)
        c2, d2 = bp(2)
        # closed forms: the symbolic seed s_{-1} = 1/d_0 is never materialized
        s.append(a2 * d2 * s[1] + b2 * b1 * c2 * d1 * s[0]
                 + b2 * b1 * b0 * d2 * d1)
        sp.append(b1 * b2 * c0 * c2 + a1 * a2 * c0 * d2 + a2 * b1 * d0 * d2)
        spp.append(b1 * b2 * c2 + a1 * a2 * d2)
        for seq in (t, tp, tpp):
            seq.append(seq[1] * b2 * d2)
    for i in range(3, n + 1):
        an, bn = ap(i)
        cn, dn = bp(i)
        bn1, dn1 = ap(i - 1)[1], bp(i - 1)[1]
        bn2, dn2 = ap(i - 2)[1], bp(i - 2)[1]
        k1 = an * dn
        k2 = bn * bn1 * cn * dn1
        k3 = bn * bn1 * bn2 * dn * dn1 * dn2
        # t'/t'' products start at index 2, so the i=3 back-reference to
        # index 0 carries no d_1 factor
        k3_prime = bn * bn1 * bn2 * dn * dn1 if i == 3 else k3
        s.append(k1 * s[-1] + k2 * s[-2] + k3 * s[-3])
        sp.append(k1 * sp[-1] + k2 * sp[-2] + k3_prime * sp[-3])
        spp.append(k1 * spp[-1] + k2 * spp[-2] + k3_prime * spp[-3])
        for seq in (t, tp, tpp):
            seq.append(seq[-1] * bn * dn)
    return LemmaSequences(tuple(s), tuple(sp), tuple(spp),
                          tuple(t), tuple(tp), tuple(tpp))


def lemma_sequences(f: Bcf, n: int) -> LemmaSequences:
    """Numerator/denominator split using the lowest-terms quotients of f."""
    a_pairs = [(x.numerator, x.denominator) for x in f.a_seq]
    b_pairs = [(x.numerator, x.denominator) for x in f.b_seq]
    return lemma_sequences_from_pairs(a_pairs, b_pairs, n,
                                      f.preperiod_len, f.period_len)


def tail_states(f: Bcf, value: tuple, n: int) -> list[tuple]:
    """Exact complete-quotient states (x_k, y_k), k = 1..n, of ``value``.

    Inverts x_{k+1} = 1/(y_k - b_k), y_{k+1} = (x_k - a_k)/(y_k - b_k) with
    the fraction's rational quotients substituted for the integer parts.
    """
    if n < 0:
        raise ValueError("n must be >= 0")
    x, y = value
    out = []
    for k in range(n):
        a, b = f.quotient(k)
        rem = y - b
        if rem == 0:
            raise ZeroDivisionError(
                f"y_{k} - b_{k} = 0: the fraction terminates or does not "
                f"represent the given value")
        ir = 1 / rem
        x, y = ir, (x - a) * ir
        out.append((x, y))
    return out


def fixed_point_check(period_matrix: Matrix3, candidate: tuple) -> bool:
    """Exact check of both fixed-point identities for a purely periodic block.

    ``period_matrix`` must hold the consecutive convergent triples of one full
    period in its columns (rows A, B, C) and ``candidate`` the claimed pair
    (alpha, beta) in Q(cbrt(d)) or Q.
    """
    alpha, beta = candidate
    (an, an1, an2), (bn, bn1, bn2), (cn, cn1, cn2) = period_matrix
    den = alpha * cn + beta * cn1 + cn2
    if den == 0:
        raise ZeroDivisionError("zero denominator in fixed-point identity")
    return (alpha * den == alpha * an + beta * an1 + an2
            and beta * den == alpha * bn + beta * bn1 + bn2)


def characteristic_poly(m: Matrix3) -> tuple[Fraction, Fraction, Fraction, Fraction]:
    """Monic characteristic polynomial det(xI - m), highest degree first."""
    tr = m[0][0] + m[1][1] + m[2][2]
    minors = (m[0][0] * m[1][1] - m[0][1] * m[1][0]
              + m[0][0] * m[2][2] - m[0][2] * m[2][0]
              + m[1][1] * m[2][2] - m[1][2] * m[2][1])
    det = (m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
           - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
           + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]))
    return (Fraction(1), Fraction(-tr), Fraction(minors), Fraction(-det))


# -- serialization ----------------------------------------------------------

def frac_str(x: RationalLike) -> str:
    f = Fraction(x)
    return f"{f.numerator}/{f.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def bcf_to_dict(f: Bcf) -> dict:
    return {
        "a": [frac_str(x) for x in f.a_seq],
        "b": [frac_str(x) for x in f.b_seq],
        "preperiod": f.preperiod_len,
        "period": f.period_len,
    }


def bcf_from_dict(obj: dict) -> Bcf:
    return Bcf(tuple(parse_frac(x) for x in obj["a"]),
               tuple(parse_frac(x) for x in obj["b"]),
               int(obj["preperiod"]), int(obj["period"]))


def bcf_to_json(f: Bcf) -> str:
    return json.dumps(bcf_to_dict(f))


def bcf_from_json(text: str) -> Bcf:
    return bcf_from_dict(json.loads(text))
