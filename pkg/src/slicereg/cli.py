"""Command-line front end.

Exit codes: 0 success (or an implication whose hypotheses fail), 1 an
inequality violation, 2 a parse error, 3 a domain error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import analysis, inequalities, kernels
from .hypercomplex import DomainError, algebra_from_tag, element_from_json, element_to_json
from .inequalities import CHECKS, CONSTRAINTS, LAWS, PolynomialGenerator, config_hash
from .slicepoly import polynomial_from_json, polynomial_to_json

EXIT_OK, EXIT_VIOLATION, EXIT_PARSE, EXIT_DOMAIN = 0, 1, 2, 3


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def _clean(obj):
    """Plain JSON types; non-finite floats become null."""
    if isinstance(obj, dict):
        return {str(k): _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        return x if math.isfinite(x) else None
    if isinstance(obj, complex):
        return [obj.real, obj.imag]
    if isinstance(obj, np.ndarray):
        return _clean(obj.tolist())
    if hasattr(obj, "coeffs") and hasattr(obj, "algebra"):
        return element_to_json(obj)
    return obj


def dumps(obj) -> str:
    return json.dumps(_clean(obj), sort_keys=True, allow_nan=False)


def load_json(text_or_path: str, what: str = "input"):
    """Read JSON from a file path, or parse the argument itself as inline JSON."""
    path = Path(text_or_path)
    stripped = text_or_path.lstrip()
    if stripped[:1] in "{[" or not stripped:
        text, source = text_or_path, f"inline {what}"
    elif path.is_file():
        text, source = path.read_text(encoding="utf-8"), str(path)
    else:
        try:
            return json.loads(text_or_path)
        except json.JSONDecodeError:
            raise ParseError(f"{what}: no such file and not valid JSON: {text_or_path!r}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno} column {exc.colno}: {exc.msg}") from None


def _threads(args) -> int:
    if args.threads is not None:
        return max(1, args.threads)
    env = os.environ.get("SLICEREG_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise ParseError(f"SLICEREG_THREADS must be an integer, got {env!r}") from None
    return 1


def _degree_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    try:
        out = (int(lo), int(hi)) if sep else (int(lo), int(lo))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a..b, got {text!r}") from None
    if not 0 <= out[0] <= out[1]:
        raise argparse.ArgumentTypeError(f"bad degree range {text!r}")
    return out


def _write(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        Path(out).write_text(text, encoding="utf-8")


def _csv_text(rows) -> str:
    buf = io.StringIO()
    csv.writer(buf, lineterminator="\n").writerows(rows)
    return buf.getvalue()


# -- commands -------------------------------------------------------------------


def cmd_eval(args) -> int:
    P = polynomial_from_json(load_json(args.poly, "polynomial"))
    q = element_from_json(load_json(args.point, "point"), P.algebra)
    _write(dumps({"value": element_to_json(P.eval(q)), "point": element_to_json(q)}), args.out)
    return EXIT_OK


def _single_check(args):
    name = args.name
    tol = args.tol
    if name == "lax-ratio":
        data = load_json(args.poly, "zero set")
        if not isinstance(data, dict) or "zeros" not in data:
            raise DomainError("lax-ratio input must be an object with 'zeros' and optional 'theta'")
        zeros = [complex(*z) if isinstance(z, list) else complex(z) for z in data["zeros"]]
        theta = float(data.get("theta", args.theta))
        cfg = {"check": name, "zeros": [[z.real, z.imag] for z in zeros], "theta": theta}
        return inequalities.lax_ratio_check(zeros, theta), cfg
    subject = load_json(args.poly, "polynomial")
    P = polynomial_from_json(subject)
    cfg = {"check": name, "polynomial": polynomial_to_json(P), "tol": tol}
    if name == "bernstein":
        return inequalities.bernstein_check(P, tol), cfg
    if name == "bernstein-min":
        return inequalities.bernstein_min_check(P, tol), cfg
    if name == "bernstein-l2":
        return inequalities.bernstein_l2_check(P), cfg
    if name == "erdos-lax":
        return inequalities.erdos_lax_subclass_check(P, tol), cfg
    if name == "erdos-lax-zeros":
        return inequalities.erdos_lax_zero_structure_check(P, tol), cfg
    if name == "ankeny-growth":
        cfg["R"] = args.R
        return inequalities.ankeny_growth_check(P, args.R, tol), cfg
    cfg["delta"] = args.delta
    return inequalities.ankeny_converse_scenario(P, args.delta, tol=tol), cfg


def cmd_check(args) -> int:
    report, cfg = _single_check(args)
    _write(dumps(report.to_dict(args.name, None, config_hash(cfg))), args.out)
    return EXIT_VIOLATION if report.violation else EXIT_OK


def cmd_fuzz(args) -> int:
    gen = PolynomialGenerator(
        seed=args.seed,
        degree_range=args.deg,
        law=args.law,
        constraint=args.constraint,
        algebra=algebra_from_tag(args.algebra),
    )
    result = inequalities.fuzz_campaign(gen, args.check, args.trials, threads=_threads(args))
    _write(_csv_text(result.csv_rows()), args.out)
    witness = args.witness
    if witness is None and args.out not in (None, "-"):
        witness = str(Path(args.out).with_suffix("")) + ".witness.json"
    if witness is not None:
        doc = {"config": result.config, "config_hash": result.config_hash, "summary": result.summary}
        _write(dumps(doc), witness)
    s = result.summary
    print(
        f"{args.check}: {s['trials']} trials, {s['violations']} violations, "
        f"{s['equality_cases']} equality cases, {s['precondition_failures']} precondition failures, "
        f"max ratio {s['ratio_max']!r} [config {result.config_hash}]",
        file=sys.stderr,
    )
    return EXIT_VIOLATION if s["violations"] else EXIT_OK


def cmd_norm(args) -> int:
    P = polynomial_from_json(load_json(args.poly, "polynomial"))
    if args.min:
        res = analysis.min_modulus_sphere(P, args.R, args.tol)
    else:
        res = analysis.sup_norm_sphere(P, args.R, args.tol)
    doc = res.to_json()
    doc["config_hash"] = config_hash({"command": "norm", "polynomial": polynomial_to_json(P), "R": args.R, "min": args.min, "tol": args.tol})
    _write(dumps(doc), args.out)
    return EXIT_OK


def cmd_zeros(args) -> int:
    P = polynomial_from_json(load_json(args.poly, "polynomial"))
    _write(dumps(analysis.zero_set(P).to_json()), args.out)
    return EXIT_OK


def cmd_kernel(args) -> int:
    if args.nodes < 1:
        raise DomainError("--nodes must be positive")
    x = 2.0 * math.pi * np.arange(args.nodes) / args.nodes
    vals = kernels.dirichlet(args.n, x) if args.dirichlet else kernels.fejer(args.n, x)
    rows = [["x", "value"]] + [[repr(float(a)), repr(float(b))] for a, b in zip(x, vals)]
    _write(_csv_text(rows), args.out)
    return EXIT_OK


# -- parser ---------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="slicereg", description="Slice regular polynomials: evaluation, norms, zeros and inequality checks.")
    parser.add_argument("--threads", type=int, default=None, help="worker cap (default: $SLICEREG_THREADS or 1)")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def poly_arg(p, required=True):
        p.add_argument("-p", "--poly", required=required, help="polynomial JSON file or inline JSON")

    def out_arg(p):
        p.add_argument("-o", "--out", default=None, help="output path (default stdout)")

    p = sub.add_parser("eval", help="evaluate P(q)")
    poly_arg(p)
    p.add_argument("-q", "--point", required=True, help="point as JSON element")
    out_arg(p)
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("check", help="run one inequality check")
    p.add_argument("name", choices=CHECKS)
    poly_arg(p)
    p.add_argument("-R", type=float, default=2.0, help="radius for ankeny-growth")
    p.add_argument("--delta", type=float, default=2.0, help="radius range (1, delta) for ankeny-converse")
    p.add_argument("--theta", type=float, default=0.0, help="evaluation angle for lax-ratio")
    p.add_argument("--tol", type=float, default=analysis.DEFAULT_TOL, help="norm search tolerance")
    out_arg(p)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("fuzz", help="seeded campaign with a CSV summary")
    p.add_argument("--check", required=True, choices=CHECKS)
    p.add_argument("--trials", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--deg", type=_degree_range, default=(1, 12), help="degree range a..b")
    p.add_argument("--constraint", choices=CONSTRAINTS, default="none")
    p.add_argument("--law", choices=LAWS, default="uniform")
    p.add_argument("--algebra", default="quaternion", help="quaternion, octonion or clifford:m")
    out_arg(p)
    p.add_argument("--witness", default=None, help="summary and extremal witness JSON path")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("norm", help="max (or min) of |P| on the sphere |q| = R")
    poly_arg(p)
    p.add_argument("-R", type=float, default=1.0)
    p.add_argument("--min", action="store_true", help="minimum modulus instead of the maximum")
    p.add_argument("--tol", type=float, default=analysis.DEFAULT_TOL)
    out_arg(p)
    p.set_defaults(func=cmd_norm)

    p = sub.add_parser("zeros", help="zero set of a quaternionic polynomial")
    poly_arg(p)
    out_arg(p)
    p.set_defaults(func=cmd_zeros)

    p = sub.add_parser("kernel", help="tabulate a Fejer or Dirichlet kernel on [0, 2pi)")
    p.add_argument("action", nargs="?", choices=["eval"], default="eval")
    kind = p.add_mutually_exclusive_group(required=True)
    kind.add_argument("--fejer", action="store_true")
    kind.add_argument("--dirichlet", action="store_true")
    p.add_argument("-n", type=int, required=True, help="kernel order")
    p.add_argument("--nodes", type=int, default=512)
    out_arg(p)
    p.set_defaults(func=cmd_kernel)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "fuzz" and args.trials < 1:
            raise DomainError("--trials must be >= 1")
        return args.func(args)
    except ParseError as exc:
        print(f"slicereg: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (DomainError, ArithmeticError, ValueError) as exc:
        print(f"slicereg: domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
