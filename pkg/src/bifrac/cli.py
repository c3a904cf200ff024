"""Command-line surface: expansion, approximation, verification, comparison.

Five subcommands (jacobi, periodic, compare, redei, transform) print either a
human-readable TSV rendering or, with ``--format json``, one OutputRecord
object ``{command, params, result, timing_ms}``.  Rationals are serialized as
"p/q" strings, cubic numbers as {d, a0, a1, a2}.  Exit codes: 0 success,
1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import time
from fractions import Fraction

from .bcf import Bcf, bcf_to_dict, convergents, evaluate_numeric, frac_str
from .cubic import CubicNumber, delta_enclosure, value_enclosure
from .jacobi import Exhausted, Periodic, Terminated, jacobi_expand
from .periodic import (InfeasibleMatrixError, TransformSpec, build_theorem_bcf,
                       four_matrix_product, four_matrix_solve,
                       paired_periodic_bcf, transform_limits,
                       transformed_convergents, verify_mu_convergents)
from .redei import mu_matrix, mu_sum, mu_vector, redei_permutes

DEFAULT_ERROR_WIDTH = Fraction(1, 10 ** 12)


def _cubic_dict(x: CubicNumber) -> dict:
    return {"d": x.d, "a0": frac_str(x.a0), "a1": frac_str(x.a1),
            "a2": frac_str(x.a2)}


def _error_bound(approx: Fraction, target: CubicNumber) -> Fraction:
    """Certified upper bound on |approx - target|."""
    enc = value_enclosure(target - approx, DEFAULT_ERROR_WIDTH)
    return max(abs(enc.lo), abs(enc.hi))


def _sci(x: Fraction) -> str:
    return f"{float(x):.3e}"


def _parse_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"bad rational {text!r}: {exc}") from None


def _cbrt_pair(d2: int) -> tuple[CubicNumber, CubicNumber, int]:
    """(cbrt(d2), cbrt(sqrt(d2))) for a perfect-square d2 = d^2."""
    root = math.isqrt(d2)
    if root * root != d2:
        raise ValueError(f"--d2 value {d2} is not a perfect square")
    return CubicNumber.cbrt_square(root), CubicNumber.cbrt(root), root


def _status_dict(expansion) -> dict:
    status = expansion.status
    if isinstance(status, Periodic):
        return {"status": "periodic", "preperiod": status.preperiod_len,
                "period": status.period_len}
    if isinstance(status, Exhausted):
        return {"status": "exhausted", "max_steps": status.max_steps}
    assert isinstance(status, Terminated)
    return {"status": "terminated", "at_step": status.at_step}


def cmd_jacobi(args) -> tuple[dict, dict, int]:
    if args.d2 is not None:
        x, y, d = _cbrt_pair(args.d2)
        params = {"d2": args.d2, "d": d, "max_steps": args.max_steps}
    else:
        x = _parse_fraction(args.x)
        y = _parse_fraction(args.y)
        params = {"x": args.x, "y": args.y, "max_steps": args.max_steps}
    expansion = jacobi_expand(x, y, args.max_steps)
    result = _status_dict(expansion)
    result["a"] = list(expansion.a_seq)
    result["b"] = list(expansion.b_seq)
    return params, result, 0


def _jacobi_bcf(expansion) -> Bcf:
    status = expansion.status
    if isinstance(status, Periodic):
        return Bcf(expansion.a_seq, expansion.b_seq,
                   status.preperiod_len, status.period_len)
    return Bcf(expansion.a_seq, expansion.b_seq)


def cmd_periodic(args) -> tuple[dict, dict, int]:
    params = {"d": args.d, "z": args.z, "depth": args.depth}
    tf = build_theorem_bcf(args.d, args.z)
    cx, cy = evaluate_numeric(tf.fraction, args.depth)
    err_x = _error_bound(cx, CubicNumber.cbrt_square(args.d))
    err_y = _error_bound(cy, CubicNumber.cbrt(args.d))
    mu_report = verify_mu_convergents(args.d, args.z, args.depth)
    result = {
        "fraction": bcf_to_dict(tf.fraction),
        "convergent": {"depth": args.depth, "x": frac_str(cx),
                       "y": frac_str(cy)},
        "errors": {"x": _sci(err_x), "y": _sci(err_y)},
        "mu_check": {"passed": mu_report.passed,
                     "checks": len(mu_report.checks),
                     "first_failure": mu_report.first_failure,
                     "skipped": mu_report.skipped,
                     "summary": mu_report.summary},
    }
    return params, result, 0


def cmd_compare(args) -> tuple[dict, dict, int]:
    params = {"d": args.d, "z": args.z, "max_steps": args.max_steps}
    tf = build_theorem_bcf(args.d, args.z)
    target_x = CubicNumber.cbrt_square(args.d)
    target_y = CubicNumber.cbrt(args.d)
    expansion = jacobi_expand(target_x, target_y, args.max_steps)

    depths = [5, 10, 20, 40]
    rows = []
    for scheme, fraction, status in (
            ("jacobi", _jacobi_bcf(expansion), expansion.status),
            ("periodic-z", tf.fraction, Periodic(2, 3))):
        if isinstance(status, Periodic):
            pre, per = str(status.preperiod_len), str(status.period_len)
            limit = None
        elif isinstance(status, Exhausted):
            pre = per = f"none within {status.max_steps}"
            limit = len(fraction) - 1
        else:
            pre = per = f"terminated at {status.at_step}"
            limit = len(fraction) - 1
        row = {"scheme": scheme, "preperiod": pre, "period": per}
        for depth in depths:
            if limit is not None and depth > limit:
                row[f"err@{depth}"] = "-"
                continue
            cx, cy = evaluate_numeric(fraction, depth)
            row[f"err@{depth}"] = (f"{_sci(_error_bound(cx, target_x))},"
                                   f"{_sci(_error_bound(cy, target_y))}")
        rows.append(row)
    return params, {"depths": depths, "table": rows}, 0


def cmd_redei(args) -> tuple[dict, dict, int]:
    if args.ff_q is not None:
        if args.ff_d is None:
            raise ValueError("--ff-q requires --ff-d")
        params = {"q": args.ff_q, "d": args.ff_d, "n": args.n}
        permutes = redei_permutes(args.ff_q, args.ff_d, args.n)
        g = math.gcd(args.n, args.ff_q + 1)
        result = {"permutes": permutes, "gcd": g,
                  "criterion_match": permutes == (g == 1)}
        return params, result, 0
    if args.e is None or args.d is None or args.z is None:
        raise ValueError("mu mode requires --e, --d, --z and --n")
    params = {"e": args.e, "d": args.d, "z": args.z, "n": args.n}
    matrix = mu_matrix(args.e, args.d, args.z, args.n)
    if args.k is not None:
        params["k"] = args.k
        value = mu_sum(args.e, args.k, args.d, args.z, args.n).value
        result = {"mu": {str(args.k): value},
                  "matrix_match": matrix[args.k][0] == value}
    else:
        vec = mu_vector(args.e, args.d, args.z, args.n)
        result = {"mu": {str(k): v for k, v in enumerate(vec)},
                  "matrix_match": all(matrix[k][0] == vec[k]
                                      for k in range(args.e))}
    return params, result, 0


def _parse_matrix(text: str) -> tuple:
    entries = [tok for tok in text.replace(",", " ").split() if tok]
    if len(entries) != 9:
        raise ValueError(f"--matrix needs 9 rationals, got {len(entries)}")
    vals = [_parse_fraction(tok) for tok in entries]
    return tuple(tuple(vals[3 * i + j] for j in range(3)) for i in range(3))


def cmd_transform(args) -> tuple[dict, dict, int]:
    m = _parse_matrix(args.matrix)
    params = {"d": args.d, "z": args.z, "depth": args.depth,
              "matrix": [[frac_str(x) for x in row] for row in m]}
    spec = TransformSpec(m, args.d)
    lim_x, lim_y = transform_limits(spec)
    result: dict = {"limits": {"x": _cubic_dict(lim_x),
                               "y": _cubic_dict(lim_y)}}
    code = 0
    tf = build_theorem_bcf(args.d, args.z)
    try:
        solution = four_matrix_solve(m)
    except InfeasibleMatrixError as exc:
        result["solver"] = {"feasible": False, "reason": str(exc)}
        code = 1
    else:
        full = four_matrix_product(solution.a, solution.b)
        paired = paired_periodic_bcf(m, args.d, args.z)
        result["solver"] = {
            "feasible": True,
            "a": [frac_str(x) for x in solution.a],
            "b": [frac_str(x) for x in solution.b],
            "induced_second_row": [frac_str(x) for x in full[1]],
        }
        result["paired_fraction"] = bcf_to_dict(paired)

    table = []
    for depth in (5, 10, args.depth):
        tri = transformed_convergents(m, tf.fraction, depth)[-1]
        if tri[2] == 0:
            table.append({"depth": depth, "x": "C=0", "y": "C=0",
                          "err_x": "-", "err_y": "-"})
            continue
        cx, cy = tri[0] / tri[2], tri[1] / tri[2]
        table.append({
            "depth": depth,
            "x": frac_str(cx), "y": frac_str(cy),
            "err_x": _sci(_error_bound(cx, lim_x)),
            "err_y": _sci(_error_bound(cy, lim_y)),
        })
    result["convergence"] = table
    return params, result, code


def _tsv_lines(prefix: str, value, lines: list[str]) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _tsv_lines(f"{prefix}.{k}" if prefix else str(k), v, lines)
    elif isinstance(value, (list, tuple)):
        if value and all(isinstance(v, dict) for v in value):
            keys = list(value[0].keys())
            lines.append("\t".join([prefix] + keys))
            for v in value:
                lines.append("\t".join([prefix] + [str(v.get(k, ""))
                                                   for k in keys]))
        else:
            lines.append(f"{prefix}\t{' '.join(str(v) for v in value)}")
    else:
        lines.append(f"{prefix}\t{value}")


def render_tsv(record: dict) -> str:
    lines: list[str] = []
    _tsv_lines("", record, lines)
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bifrac",
        description="Exact bifurcating continued fractions for cubic roots")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=("tsv", "json"), default="tsv")
        p.add_argument("--out", metavar="FILE", default=None)

    p = sub.add_parser("jacobi", help="expand a pair with the Jacobi scheme")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--d2", "--cbrt-pair", dest="d2", type=int, metavar="M",
                     help="expand (cbrt(M), cbrt(sqrt(M))) for M = d^2")
    src.add_argument("--x", metavar="P/Q", help="rational x (with --y)")
    p.add_argument("--y", metavar="P/Q", help="rational y (with --x)")
    p.add_argument("--max-steps", type=int, default=100)
    common(p)
    p.set_defaults(func=cmd_jacobi)

    p = sub.add_parser("periodic",
                       help="periodic representation of (cbrt(d^2), cbrt(d))")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--depth", type=int, default=30)
    common(p)
    p.set_defaults(func=cmd_periodic)

    p = sub.add_parser("compare",
                       help="Jacobi expansion vs the periodic representation")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--max-steps", type=int, default=100)
    common(p)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("redei",
                       help="generalized coordinate polynomials / permutation check")
    p.add_argument("--e", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--z", type=int)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int)
    p.add_argument("--ff-q", type=int, dest="ff_q",
                   help="finite-field mode: odd prime q")
    p.add_argument("--ff-d", type=int, dest="ff_d",
                   help="finite-field mode: non-residue d")
    common(p)
    p.set_defaults(func=cmd_redei)

    p = sub.add_parser("transform",
                       help="fractional-linear image of the limit pair")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--z", type=int, required=True)
    p.add_argument("--matrix", required=True, metavar='"9 rationals"')
    p.add_argument("--depth", type=int, default=20)
    common(p)
    p.set_defaults(func=cmd_transform)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "jacobi" and args.d2 is None and (
            args.x is None or args.y is None):
        parser.error("jacobi needs either --d2 or both --x and --y")
    started = time.perf_counter()
    try:
        params, result, code = args.func(args)
    except (ValueError, ZeroDivisionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    record = {
        "command": args.command,
        "params": params,
        "result": result,
        "timing_ms": int((time.perf_counter() - started) * 1000),
    }
    text = (json.dumps(record, indent=2) if args.format == "json"
            else render_tsv(record))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
