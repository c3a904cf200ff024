"""Periodic bifurcating representation of (cbrt(d^2), cbrt(d)) and friends.

``build_theorem_bcf`` constructs, for any non-cube d >= 2 and integer z != 0,
the eventually periodic fraction (pre-period 2, period 3) with rational
quotients

    a: z, 2z/d, | 3dz/(z^3+d^2), 3z, 3z/d |
    b: 0, -z^2/d, | -3z^2/(z^3+d^2), -3dz^2/(z^3+d^2), -3z^2/d |

whose depth-n convergent equals (mu_{n+1}(0)/mu_{n+1}(2),
mu_{n+1}(1)/mu_{n+1}(2)) exactly and converges to (cbrt(d^2), cbrt(d)).
``verify_mu_convergents`` and ``sn_mu_identity`` check those exact statements
index by index; the latter needs the quotients in the displayed (unreduced)
form above, which ``TheoremFraction`` keeps alongside the canonical fraction,
because the integer split of Lemma-style sequences is representation
dependent (e.g. d=4, z=2 displays 24/24, which reduces to 1).

``transform_limits`` and the four-matrix solver extend the construction to
fractional-linear images (m00*cbrt(d^2) + m01*cbrt(d) + m02) /
(m20*cbrt(d^2) + m21*cbrt(d) + m22): when the target first and third rows are
realizable as a product of four step matrices with a0 = b0 = 1, prefixing the
four solved quotient pairs yields an eventually periodic fraction converging
to the target value paired with a second coordinate determined by the solved
second row.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .bcf import (Bcf, Matrix3, bcf_to_dict, convergents, frac_str,
                  lemma_sequences_from_pairs, mat_identity, mat_mul,
                  step_matrix)
from .cubic import CubicNumber, _check_radicand
from .redei import mu_vector


class InfeasibleMatrixError(ValueError):
    """The target rows cannot be produced by a four-step prefix with a0 = b0 = 1."""


@dataclass(frozen=True)
class TheoremFraction:
    """The periodic fraction for (cbrt(d^2), cbrt(d)) at parameter z.

    ``a_pairs``/``b_pairs`` are the displayed numerator/denominator forms
    (not reduced); ``fraction`` holds the same quotients in lowest terms.
    """

    d: int
    z: int
    fraction: Bcf
    a_pairs: tuple[tuple[int, int], ...]
    b_pairs: tuple[tuple[int, int], ...]


def build_theorem_bcf(d: int, z: int) -> TheoremFraction:
    _check_radicand(d)
    if not isinstance(z, int) or isinstance(z, bool):
        raise ValueError("z must be an int")
    if z == 0:
        raise ValueError("z=0 is not allowed")
    w = z ** 3 + d * d
    if w == 0:
        raise ValueError(f"z^3 + d^2 = 0 for d={d}, z={z}")
    a_pairs = ((z, 1), (2 * z, d), (3 * d * z, w), (3 * z, 1), (3 * z, d))
    b_pairs = ((0, 1), (-z * z, d), (-3 * z * z, w), (-3 * d * z * z, w),
               (-3 * z * z, d))
    fraction = Bcf(tuple(Fraction(p, q) for p, q in a_pairs),
                   tuple(Fraction(p, q) for p, q in b_pairs),
                   preperiod_len=2, period_len=3)
    return TheoremFraction(d, z, fraction, a_pairs, b_pairs)


@dataclass
class CheckItem:
    n: int
    passed: bool
    lhs: list[str]
    rhs: list[str]


@dataclass
class CheckReport:
    """Per-index exact comparisons plus a one-line verdict."""

    params: dict
    checks: list[CheckItem] = field(default_factory=list)
    skipped: list[int] = field(default_factory=list)
    passed: bool = True
    first_failure: int | None = None
    summary: str = ""

    def record(self, n: int, passed: bool, lhs: list[str], rhs: list[str]):
        self.checks.append(CheckItem(n, passed, lhs, rhs))
        if not passed and self.first_failure is None:
            self.first_failure = n
            self.passed = False

    def finish(self, label: str):
        if self.passed:
            skipped = f" ({len(self.skipped)} skipped)" if self.skipped else ""
            self.summary = f"{label}: all {len(self.checks)} checks passed{skipped}"
        else:
            self.summary = f"{label}: first failure at n={self.first_failure}"
        return self

    def to_dict(self) -> dict:
        return {
            "params": self.params,
            "checks": [{"n": c.n, "pass": c.passed, "lhs": c.lhs,
                        "rhs": c.rhs} for c in self.checks],
            "summary": self.summary,
        }


def verify_mu_convergents(d: int, z: int, n_max: int) -> CheckReport:
    """Exact equality of convergent n with the mu_{n+1} coordinate ratios.

    Indices where C_n = 0 or mu_{n+1}(2) = 0 are reported as skipped (this
    happens for some negative z), everything else is compared exactly.
    """
    tf = build_theorem_bcf(d, z)
    report = CheckReport(params={"d": d, "z": z, "n_max": n_max})
    triples = convergents(tf.fraction, n_max)
    for n in range(n_max + 1):
        tri = triples[n]
        m0, m1, m2 = mu_vector(3, d, z, n + 1)
        if tri.C == 0 or m2 == 0:
            report.skipped.append(n)
            continue
        lhs = (tri.A / tri.C, tri.B / tri.C)
        rhs = (Fraction(m0, m2), Fraction(m1, m2))
        report.record(n, lhs == rhs,
                      [frac_str(lhs[0]), frac_str(lhs[1])],
                      [frac_str(rhs[0]), frac_str(rhs[1])])
    return report.finish(f"convergent/mu equality d={d} z={z}")


def sn_mu_identity(d: int, z: int, n_max: int) -> CheckReport:
    """Exact power-scaled identities between the integer splits and mu.

    For n >= 2, with w = d^2 + z^3:

        s_n    = d^floor(2(n+1)/3) * w^floor(2n/3) * mu_{n+1}(0)
        s'_n   = d^floor((2n-1)/3) * w^floor(2n/3) * mu_{n+1}(1)
        d*s''_n = d^floor(2(n+1)/3) * w^floor(2n/3) * mu_{n+1}(2)

    computed from the displayed quotient pairs.
    """
    if n_max < 2:
        raise ValueError("n_max must be >= 2 (identities start at n=2)")
    tf = build_theorem_bcf(d, z)
    w = d * d + z ** 3
    seqs = lemma_sequences_from_pairs(tf.a_pairs, tf.b_pairs, n_max,
                                      preperiod_len=2, period_len=3)
    report = CheckReport(params={"d": d, "z": z, "n_max": n_max})
    for n in range(2, n_max + 1):
        m0, m1, m2 = mu_vector(3, d, z, n + 1)
        scale = w ** ((2 * n) // 3)
        rhs = (d ** ((2 * (n + 1)) // 3) * scale * m0,
               d ** ((2 * n - 1) // 3) * scale * m1,
               d ** ((2 * (n + 1)) // 3) * scale * m2)
        lhs = (seqs.s[n], seqs.sp[n], d * seqs.spp[n])
        report.record(n, lhs == rhs, [str(v) for v in lhs],
                      [str(v) for v in rhs])
    return report.finish(f"integer-split/mu identities d={d} z={z}")


@dataclass(frozen=True)
class TransformSpec:
    """Fractional-linear transform of the limit pair, given by a 3x3 matrix."""

    m: Matrix3
    d: int

    def __post_init__(self):
        object.__setattr__(self, "m", tuple(
            tuple(Fraction(x) for x in row) for row in self.m))
        if len(self.m) != 3 or any(len(row) != 3 for row in self.m):
            raise ValueError("transform matrix must be 3x3")
        _check_radicand(self.d)


def _row_value(row: Sequence[Fraction], d: int) -> CubicNumber:
    # row dotted with (cbrt(d)^2, cbrt(d), 1)
    return CubicNumber(d, a0=row[2], a1=row[1], a2=row[0])


def transform_limits(spec: TransformSpec) -> tuple[CubicNumber, CubicNumber]:
    """Exact limit pair of the transformed convergent ratios.

    ((m00*cbrt(d^2) + m01*cbrt(d) + m02) / (m20*cbrt(d^2) + m21*cbrt(d) + m22),
     (m10*cbrt(d^2) + m11*cbrt(d) + m12) / (same denominator)).
    """
    den = _row_value(spec.m[2], spec.d)
    if den.is_zero():
        raise ZeroDivisionError(
            "denominator a20*cbrt(d^2) + a21*cbrt(d) + a22 is zero")
    inv_den = den.inv()
    return (_row_value(spec.m[0], spec.d) * inv_den,
            _row_value(spec.m[1], spec.d) * inv_den)


def transformed_convergents(m: Matrix3, f: Bcf, n: int) -> list[tuple]:
    """Triples (A~_k, B~_k, C~_k) = m * (A_k, B_k, C_k) for k = 0..n."""
    mm = tuple(tuple(Fraction(x) for x in row) for row in m)
    out = []
    for tri in convergents(f, n):
        col = (tri.A, tri.B, tri.C)
        out.append(tuple(sum(mm[i][j] * col[j] for j in range(3))
                         for i in range(3)))
    return out


def four_matrix_rows(a: Sequence, b: Sequence) -> tuple[tuple, tuple]:
    """First and third rows of the product of four step matrices, in closed form."""
    a0, a1, a2, a3 = (Fraction(x) for x in a)
    b0, b1, b2, b3 = (Fraction(x) for x in b)
    row1 = (a0 + a3 + a0 * a1 * a2 * a3 + a2 * a3 * b1 + a0 * a3 * b2
            + a0 * a1 * b3 + b1 * b3,
            1 + a0 * a1 * a2 + a2 * b1 + a0 * b2,
            a0 * a1 + b1)
    row3 = (1 + a1 * a2 * a3 + a3 * b2 + a1 * b3,
            a1 * a2 + b2,
            a1)
    return row1, row3


def four_matrix_product(a: Sequence, b: Sequence) -> Matrix3:
    """Full product of the four step matrices (row 2 included)."""
    m = mat_identity()
    for ai, bi in zip(a, b):
        m = mat_mul(m, step_matrix(ai, bi))
    return m


@dataclass(frozen=True)
class FourMatrixSolution:
    a: tuple[Fraction, Fraction, Fraction, Fraction]
    b: tuple[Fraction, Fraction, Fraction, Fraction]


def four_matrix_solve(m: Matrix3) -> FourMatrixSolution:
    """Quotients (a0..a3, b0..b3) with a0 = b0 = 1 whose four-matrix product
    has rows 1 and 3 equal to those of ``m`` (row 2 is ignored and ends up
    determined).

    a1 and b1 are read off directly; the remaining four unknowns solve the
    residual linear system from the row equations.  The result is validated by
    reconstruction through ``four_matrix_rows``; failure of any denominator or
    of the reconstruction raises InfeasibleMatrixError.
    """
    mm = tuple(tuple(Fraction(x) for x in row) for row in m)
    a00, a01, a02 = mm[0]
    a20, a21, a22 = mm[2]
    a1 = a22
    b1 = a02 - a22
    den = a22 - a02
    if den == 0:
        raise InfeasibleMatrixError("denominator a22 - a02 vanishes")
    a2 = (1 - a01 + a21) / den
    b2 = a21 - a22 * a2
    det = a01 * a22 - a02 * a21
    if det == 0:
        raise InfeasibleMatrixError("denominator a01*a22 - a02*a21 vanishes")
    a3 = ((a00 - 1) * a22 - (a20 - 1) * a02) / det
    b3 = (a01 * (a20 - 1) - a21 * (a00 - 1)) / det
    solution = FourMatrixSolution((Fraction(1), a1, a2, a3),
                                  (Fraction(1), b1, b2, b3))
    row1, row3 = four_matrix_rows(solution.a, solution.b)
    if row1 != mm[0] or row3 != mm[2]:
        raise InfeasibleMatrixError("reconstruction failed: rows are not "
                                    "realizable with a0 = b0 = 1")
    return solution


def paired_periodic_bcf(m: Matrix3 | None, d: int, z: int) -> Bcf:
    """Eventually periodic fraction for the transformed limit pair.

    Prefixes the four solved quotient pairs to the base fraction; with
    ``m is None`` the base fraction itself is returned.  The first coordinate
    converges to the row-1/row-3 value of ``m``; the second coordinate is
    determined by the induced second row of the prefix product.
    """
    tf = build_theorem_bcf(d, z)
    if m is None:
        return tf.fraction
    solution = four_matrix_solve(m)
    return Bcf(solution.a + tf.fraction.a_seq,
               solution.b + tf.fraction.b_seq,
               preperiod_len=4 + tf.fraction.preperiod_len,
               period_len=tf.fraction.period_len)


def theorem_bcf_dict(tf: TheoremFraction) -> dict:
    return {"d": tf.d, "z": tf.z, "fraction": bcf_to_dict(tf.fraction)}
