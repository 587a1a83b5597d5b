"""``kurepa`` command-line interface.

Exit codes: 0 success, 1 usage or parse error, 2 pole at the argument,
3 self-test failure.
"""
import argparse
import csv
import io
import json
import math
import re
import sys

from . import core
from . import special as sf
from . import xval
from .core import Method
from .errors import KurepaError, PoleError

EXIT_OK, EXIT_USAGE, EXIT_POLE, EXIT_SELFTEST = 0, 1, 2, 3

_UNUM = r"(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?"
_REAL = re.compile(rf"[+-]?{_UNUM}")
_IMAG = re.compile(rf"([+-]?)({_UNUM})?[ij]")
_BOTH = re.compile(rf"([+-]?{_UNUM})([+-])({_UNUM})?[ij]")


def parse_complex(text):
    """Parse ``a``, ``bi``, ``a+bi`` or ``a-bi`` (spaces allowed, decimal only)."""
    s = re.sub(r"\s+", "", text)
    if _REAL.fullmatch(s):
        return complex(float(s), 0.0)
    m = _IMAG.fullmatch(s)
    if m:
        mag = float(m.group(2)) if m.group(2) else 1.0
        return complex(0.0, -mag if m.group(1) == "-" else mag)
    m = _BOTH.fullmatch(s)
    if m:
        mag = float(m.group(3)) if m.group(3) else 1.0
        return complex(float(m.group(1)), -mag if m.group(2) == "-" else mag)
    raise ValueError(f"not a complex literal: {text!r}")


def _complex_arg(text):
    try:
        return parse_complex(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _method_arg(text):
    try:
        return Method.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _positive_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v > 0 or math.isinf(v):
        raise argparse.ArgumentTypeError("must be a positive finite number")
    return v


def _nonneg_float(text):
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not v >= 0 or math.isinf(v):
        raise argparse.ArgumentTypeError("must be a non-negative finite number")
    return v


def _range_arg(text):
    parts = text.split(":")
    try:
        if len(parts) != 3:
            raise ValueError
        lo, hi, n = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a:b:n, got {text!r}") from None
    if n < 1 or not (lo < hi or (lo == hi and n == 1)):
        raise argparse.ArgumentTypeError("range needs n >= 1 and a < b (a == b allowed when n == 1)")
    return lo, hi, n


class _Parser(argparse.ArgumentParser):
    """Exits 1 on usage errors and accepts complex literals such as ``-1+2i``."""

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)
        self._negative_number_matcher = re.compile(r"^-(?:\d|\.\d|[ij]$)")

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# output


def _num(x):
    return repr(float(x))


def _cnum(z):
    sign = "-" if math.copysign(1.0, z.imag) < 0 else "+"
    return f"{_num(z.real)} {sign} {_num(abs(z.imag))}i"


def _csv_text(header, rows):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _g17(x):
    return "%.17g" % x


def _emit(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


# --------------------------------------------------------------------------
# commands


def _pole_message(function, point):
    return (f"{function} has a pole at z = {point}; "
            f"see `kurepa pv {function} {point}` or `kurepa residue {function} {point}`")


def cmd_eval(args):
    z = args.z
    try:
        if args.function == "K":
            res = core.kurepa(z, args.method, args.tol)
        else:
            res = core.k1(z, args.method, args.tol)
    except PoleError as exc:
        point = exc.point if exc.point is not None else round(z.real)
        if args.function == "K" and core.kurepa_pole_distance(z) > sf.POLE_TOL:
            print(f"error: {exc}", file=sys.stderr)
        else:
            print(f"error: {_pole_message(args.function, point)}", file=sys.stderr)
        return EXIT_POLE
    except KurepaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    d = res.to_dict()
    flags = d["flags"]
    if args.format == "json":
        doc = {"function": args.function, "z": [z.real, z.imag], **d}
        _emit(json.dumps(doc))
    elif args.format == "csv":
        _emit(_csv_text(
            ["function", "z_re", "z_im", "value_re", "value_im", "method", "abs_error_estimate", "flags"],
            [[args.function, _g17(z.real), _g17(z.imag), _g17(res.value.real), _g17(res.value.imag),
              d["method"], _g17(res.abs_error_estimate), ";".join(flags)]]))
    else:
        _emit(f"value      {_cnum(res.value)}\n"
              f"method     {d['method']}\n"
              f"abs_error  {res.abs_error_estimate:.3g}\n"
              f"flags      {', '.join(flags) if flags else '-'}")
    return EXIT_OK


def _scalar_out(args, kind, value):
    if args.format == "json":
        _emit(json.dumps({"function": args.function, "point": args.n, kind: value}))
    elif args.format == "csv":
        _emit(_csv_text(["function", "point", kind], [[args.function, args.n, _g17(value)]]))
    else:
        _emit(_num(value))
    return EXIT_OK


def cmd_pv(args):
    n = args.n
    if args.function == "Gamma":
        value = sf.pv_gamma_at_negative_integer(-n) if n <= 0 else float(math.factorial(n - 1))
    elif args.function == "K":
        value = core.pv_kurepa(n)
    else:
        value = core.pv_k1(n)
    return _scalar_out(args, "pv", value)


def cmd_residue(args):
    n = args.n
    if args.function == "K":
        value = core.residue_kurepa(-n) if n <= -1 else 0.0
    else:
        value = core.residue_k1(n)
    return _scalar_out(args, "residue", value)


def cmd_seq(args):
    if not 0 <= args.n_max <= 10000:
        print("error: n_max must lie in 0..10000", file=sys.stderr)
        return EXIT_USAGE
    digits = core.left_factorial_decimal_strings(args.n_max)
    if args.format == "json":
        # digits are JSON integer literals; json.dumps on huge ints would be quadratic
        _emit('{"n_max": %d, "values": [%s]}' % (args.n_max, ", ".join(digits)))
    elif args.format == "csv":
        _emit("n,K\n" + "".join(f"{i},{d}\n" for i, d in enumerate(digits)))
    else:
        _emit("\n".join(digits))
    return EXIT_OK


def constants():
    return {
        "L1": core.l1_constant(),
        "Ei(1)": sf.EI_ONE,
        "Ei(1)/e": sf.EI_ONE / math.e,
        "euler_gamma": sf.EULER_GAMMA,
        "1/e": 1.0 / math.e,
    }


def cmd_const(args):
    c = constants()
    if args.format == "json":
        _emit(json.dumps(c))
    elif args.format == "csv":
        _emit(_csv_text(["name", "value"], [[k, _g17(v)] for k, v in c.items()]))
    else:
        width = max(map(len, c))
        _emit("\n".join(f"{k:<{width}}  {v:.17g}" for k, v in c.items()))
    return EXIT_OK


def cmd_grid(args):
    try:
        spec = xval.GridSpec(args.re_range[0], args.re_range[1], args.im_range[0], args.im_range[1],
                             args.re_range[2], args.im_range[2], args.exclusion)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    methods = args.methods or ([Method.INTEGRAL, Method.SLAVIC, Method.INCGAMMA] if args.function == "K"
                               else [Method.SERIES, Method.INCGAMMA])
    try:
        report = xval.grid_sweep(spec, methods, args.function)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    doc = report.to_csv() if args.format == "csv" else json.dumps(report.to_json_dict(), indent=2) + "\n"
    if args.out:
        try:
            with open(args.out, "w", encoding="utf-8", newline="") as fh:
                fh.write(doc)
        except OSError as exc:
            print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
            return EXIT_USAGE
        summary_stream = sys.stdout
    else:
        sys.stdout.write(doc)
        summary_stream = sys.stderr
    print(grid_summary(report), file=summary_stream)
    return EXIT_OK


def grid_summary(report):
    parts = []
    if report.pairs:
        worst = max(report.pairs, key=lambda p: p.max_abs_diff)
        parts.append(f"max_abs_diff={worst.max_abs_diff:.3g} ({worst.a} vs {worst.b} at "
                     f"{_cnum(complex(*worst.at))})")
    parts.append(f"residual_max={report.residual_max:.3g}")
    parts.append(f"evaluated_points={report.evaluated_points}")
    parts.append(f"skipped_points={report.skipped_points}")
    parts.append(f"failures={len(report.failures)}")
    return " ".join(parts)


def cmd_selftest(args):
    results = xval.run_selftest(scale=args.tolerance_scale)
    failed = [r for r in results if not r.passed]
    if args.verbosity == "quiet":
        _emit("PASS" if not failed else "FAIL: " + ", ".join(r.name for r in failed))
    else:
        for r in results:
            line = (f"{'PASS' if r.passed else 'FAIL'}  {r.name:<28} "
                    f"max_residual={r.max_residual:.3g}  bound={r.bound:.3g}")
            if not r.passed or args.verbosity == "verbose":
                line += f"  at={r.worst_point}"
            if args.verbosity == "verbose" and r.detail:
                line += f"  ({r.detail})"
            _emit(line)
        _emit(f"{len(results) - len(failed)}/{len(results)} checks passed")
    return EXIT_SELFTEST if failed else EXIT_OK


# --------------------------------------------------------------------------
# parser


def _add_format(p, choices=("text", "json", "csv"), default="text"):
    p.add_argument("--format", choices=choices, default=default, help="output format")


def build_parser():
    parser = _Parser(prog="kurepa", description="Kurepa's left factorial K(z) and its companion K1(z).")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("eval", help="evaluate K or K1 at a complex point")
    p.add_argument("function", choices=("K", "K1"))
    p.add_argument("z", type=_complex_arg, help="complex literal, e.g. 0.5, 2i, -1.5+0.25i")
    p.add_argument("--method", type=_method_arg, default=Method.AUTO,
                   help="Integral, Recurrence, Series, Slavic, IncGamma or Auto (default)")
    p.add_argument("--tol", type=_positive_float, default=1e-12, help="target absolute tolerance")
    _add_format(p)
    p.set_defaults(handler=cmd_eval)

    p = sub.add_parser("pv", help="principal value at an integer point")
    p.add_argument("function", choices=("K", "K1", "Gamma"))
    p.add_argument("n", type=int, help="the integer point")
    _add_format(p)
    p.set_defaults(handler=cmd_pv)

    p = sub.add_parser("residue", help="residue at an integer point")
    p.add_argument("function", choices=("K", "K1"))
    p.add_argument("n", type=int, help="the integer point")
    _add_format(p)
    p.set_defaults(handler=cmd_residue)

    p = sub.add_parser("seq", help="exact left factorials K(0)..K(n_max)")
    p.add_argument("n_max", type=int)
    _add_format(p)
    p.set_defaults(handler=cmd_seq)

    p = sub.add_parser("grid", help="cross-method sweep over a rectangular grid")
    p.add_argument("--function", choices=("K", "K1"), default="K")
    p.add_argument("--methods", type=lambda s: [_method_arg(t) for t in s.split(",") if t],
                   help="comma-separated methods (at least two)")
    p.add_argument("--re-range", type=_range_arg, required=True, metavar="a:b:n")
    p.add_argument("--im-range", type=_range_arg, required=True, metavar="a:b:n")
    p.add_argument("--exclusion", type=_nonneg_float, default=0.05, metavar="r",
                   help="skip points within r of a pole (default 0.05)")
    p.add_argument("--out", help="output file (default: stdout, summary on stderr)")
    _add_format(p, ("json", "csv"), "json")
    p.set_defaults(handler=cmd_grid)

    p = sub.add_parser("const", help="print L1, Ei(1), Ei(1)/e, Euler's gamma and 1/e")
    _add_format(p)
    p.set_defaults(handler=cmd_const)

    p = sub.add_parser("selftest", help="run the full cross-validation suite")
    p.add_argument("--verbosity", choices=("quiet", "normal", "verbose"), default="normal")
    p.add_argument("--tolerance-scale", type=_positive_float, default=1.0, help=argparse.SUPPRESS)
    p.set_defaults(handler=cmd_selftest)
    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    return args.handler(args)


if __name__ == "__main__":
    sys.exit(main())
