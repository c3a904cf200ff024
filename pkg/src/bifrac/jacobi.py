"""Pair expansion of two reals into two partial-quotient sequences.

``jacobi_expand`` iterates

    a_n = [x_n],  b_n = [y_n],
    x_{n+1} = 1 / (y_n - [y_n]),  y_{n+1} = (x_n - [x_n]) / (y_n - [y_n])

over exact values (rationals, or elements of one Q(cbrt(d))).  Every complete
quotient (x_n, y_n) is stored in canonical form; the first exact repeat proves
eventual periodicity and fixes (pre-period, period).  If y_n is ever an exact
integer the expansion stops (status Terminated) -- the map is undefined there
and rational inputs routinely reach it.

Period detection hashes exact states, never quotient patterns: a repeated
run of quotients proves nothing, a repeated state proves everything.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

from ._backend import kernel as _k
from .cubic import CubicNumber

Value = Union[CubicNumber, Fraction, int]


@dataclass(frozen=True)
class ExpansionStep:
    a: int
    b: int


@dataclass(frozen=True)
class Periodic:
    preperiod_len: int
    period_len: int


@dataclass(frozen=True)
class Exhausted:
    max_steps: int


@dataclass(frozen=True)
class Terminated:
    at_step: int


Status = Union[Periodic, Exhausted, Terminated]


@dataclass(frozen=True)
class JacobiExpansion:
    steps: tuple[ExpansionStep, ...]
    status: Status

    @property
    def a_seq(self) -> tuple[int, ...]:
        return tuple(s.a for s in self.steps)

    @property
    def b_seq(self) -> tuple[int, ...]:
        return tuple(s.b for s in self.steps)

    def quotient(self, n: int) -> ExpansionStep:
        """Step n, resolving indices beyond the stored prefix when periodic."""
        if n < 0:
            raise IndexError("negative step index")
        if n < len(self.steps):
            return self.steps[n]
        if isinstance(self.status, Periodic):
            pre, per = self.status.preperiod_len, self.status.period_len
            return self.steps[pre + (n - pre) % per]
        raise IndexError(f"step {n} not available (expansion is not periodic)")


def _lift_pair(x: Value, y: Value):
    """Common exact domain: (d, x', y') with d None for the all-rational case."""
    irr = [v for v in (x, y)
           if isinstance(v, CubicNumber) and not v.is_rational()]
    radicands = {v.d for v in irr}
    if len(radicands) > 1:
        raise ValueError(f"mismatched radicands: {sorted(radicands)}")
    if radicands:
        d = radicands.pop()

        def lift(v):
            if isinstance(v, CubicNumber):
                return v if v.d == d else CubicNumber(d, v.as_fraction())
            return CubicNumber(d, Fraction(v))

        return d, lift(x), lift(y)
    to_frac = (lambda v: v.as_fraction() if isinstance(v, CubicNumber)
               else Fraction(v))
    return None, to_frac(x), to_frac(y)


def _expand_cubic(d: int, xt: tuple, yt: tuple, max_steps: int, kernel):
    """Expansion loop over kernel 4-tuples; returns (list[(a, b)], status)."""
    steps = []
    seen = {(xt, yt): 0}
    for n in range(max_steps):
        a, b, nx, ny = kernel.jacobi_step(d, xt, yt)
        steps.append((a, b))
        if nx is None:
            return steps, Terminated(n)
        key = (nx, ny)
        if key in seen:
            i = seen[key]
            return steps, Periodic(i, n + 1 - i)
        seen[key] = n + 1
        xt, yt = nx, ny
    return steps, Exhausted(max_steps)


def _expand_rational(x: Fraction, y: Fraction, max_steps: int):
    steps = []
    seen = {(x, y): 0}
    for n in range(max_steps):
        a = x.numerator // x.denominator
        b = y.numerator // y.denominator
        steps.append((a, b))
        rem = y - b
        if rem == 0:
            return steps, Terminated(n)
        x, y = 1 / rem, (x - a) / rem
        key = (x, y)
        if key in seen:
            i = seen[key]
            return steps, Periodic(i, n + 1 - i)
        seen[key] = n + 1
    return steps, Exhausted(max_steps)


def jacobi_expand(x: Value, y: Value, max_steps: int) -> JacobiExpansion:
    """Expand the pair (x, y) for at most max_steps exact steps."""
    if max_steps < 1:
        raise ValueError("max_steps must be >= 1")
    d, xv, yv = _lift_pair(x, y)
    if d is None:
        raw, status = _expand_rational(xv, yv, max_steps)
    else:
        raw, status = _expand_cubic(d, xv._t, yv._t, max_steps, _k)
    return JacobiExpansion(tuple(ExpansionStep(a, b) for a, b in raw), status)


def complete_quotients(x: Value, y: Value, n: int) -> list[tuple]:
    """Exact states (x_k, y_k) for k = 0..n (index 0 is the input pair)."""
    if n < 0:
        raise ValueError("n must be >= 0")
    d, xv, yv = _lift_pair(x, y)
    out = [(xv, yv)]
    for k in range(n):
        if d is None:
            a = xv.numerator // xv.denominator
            rem = yv - (yv.numerator // yv.denominator)
            if rem == 0:
                raise ValueError(f"expansion terminates at step {k}")
            xv, yv = 1 / rem, (xv - a) / rem
        else:
            _, _, nx, ny = _k.jacobi_step(d, xv._t, yv._t)
            if nx is None:
                raise ValueError(f"expansion terminates at step {k}")
            xv = CubicNumber._from_raw(d, nx)
            yv = CubicNumber._from_raw(d, ny)
        out.append((xv, yv))
    return out


def reconstruct(prefix: Iterable, tail_pair: Sequence[Value]) -> tuple:
    """Fold x_n = a_n + y_{n+1}/x_{n+1}, y_n = b_n + 1/x_{n+1} backwards.

    ``tail_pair`` must be the exact state reached after consuming ``prefix``;
    the return value is then the exact original pair.
    """
    d, x, y = _lift_pair(tail_pair[0], tail_pair[1])
    for step in reversed(list(prefix)):
        a, b = (step.a, step.b) if isinstance(step, ExpansionStep) else step
        if x == 0:
            raise ZeroDivisionError("zero complete quotient in fold")
        xi = 1 / x
        x, y = a + y * xi, b + xi
    return x, y


def _floor_any(v) -> int:
    if isinstance(v, CubicNumber):
        return v.floor()
    return v.numerator // v.denominator


def t_step(alpha: Value, beta: Value):
    """One step of the plane map T: returns (a, b, (alpha', beta')).

    a = [1/alpha], b = [beta/alpha],
    (alpha', beta') = (beta/alpha - b, 1/alpha - a).
    Iterating from alpha = 1/x, beta = y/x yields exactly the quotients of
    jacobi_expand(x, y).
    """
    _, av, bv = _lift_pair(alpha, beta)
    if av == 0:
        raise ZeroDivisionError("t_step requires alpha != 0")
    ia = 1 / av
    ratio = bv * ia
    a = _floor_any(ia)
    b = _floor_any(ratio)
    return a, b, (ratio - b, ia - a)
