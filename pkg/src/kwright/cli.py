"""Command-line front end.

Exit codes: 0 success, 1 violated hypothesis or domain, 2 input or parse
error, 3 numerical non-convergence, 4 ``verify`` found an error above ``--tol``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from typing import Any, Sequence

import numpy as np

from .errors import KWrightError, NonConvergenceError, OverflowError
from .gamma import gamma_k
from .operators import (
    COROLLARIES,
    THEOREMS,
    EKParams,
    MSMParams,
    PowerWeight,
    SaigoParams,
    TransformedWright,
    corollary_transform,
    evaluate_image_with_error,
    simplify,
    transform,
)
from .series import WrightParams, classify, kwright_sum
from .validation import default_tolerance, max_rel_error, verify_theorem

EXIT_PRECONDITION = 1
EXIT_INPUT = 2
EXIT_NONCONVERGENCE = 3
EXIT_VERIFY_FAILED = 4


class InputError(Exception):
    """Unreadable or malformed command-line input."""


def parse_complex(text: str) -> complex | float:
    """``1.5``, ``1+2j`` or ``1.5,-0.5``; real values come back as floats."""
    s = text.strip().replace(" ", "")
    try:
        if "," in s:
            re, im = (float(v) for v in s.split(","))
            z = complex(re, im)
        else:
            z = complex(s.replace("i", "j"))
    except ValueError as exc:
        raise InputError(f"cannot parse {text!r} as a complex number") from exc
    return z.real if z.imag == 0 else z


def _load_json(source: str) -> Any:
    """JSON from an inline string or a file path."""
    text = source
    if not source.lstrip().startswith(("{", "[")):
        try:
            with open(source, encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {source}: {exc.strerror}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON in {source}: {exc}") from exc


def _wright(args: argparse.Namespace, required: bool = True) -> WrightParams:
    if args.params is None:
        if required:
            raise InputError("--params is required")
        return WrightParams(args.k if args.k is not None else 1.0)
    data = _load_json(args.params)
    if not isinstance(data, dict):
        raise InputError("WrightParams JSON must be an object")
    if args.k is not None:
        data = {**data, "k": args.k}
    try:
        return WrightParams.from_dict(data)
    except KWrightError as exc:
        raise InputError(str(exc)) from exc


_OP_FIELDS = ("alpha", "alpha_prime", "beta", "beta_prime", "gamma")


def _operator(args: argparse.Namespace):
    values: dict[str, Any] = {}
    if args.op is not None:
        data = _load_json(args.op)
        if not isinstance(data, dict):
            raise InputError("operator JSON must be an object")
        for key, val in data.items():
            if key not in _OP_FIELDS:
                raise InputError(f"unknown operator field {key!r}")
            values[key] = parse_complex(str(val)) if isinstance(val, str) else val
    for key in _OP_FIELDS:
        flag = getattr(args, key)
        if flag is not None:
            values[key] = parse_complex(flag)
    v = {key: values.get(key, 0.0) for key in _OP_FIELDS}
    if args.theorem is not None:
        if args.theorem not in THEOREMS:
            raise InputError(f"unknown theorem {args.theorem!r}; choose from {', '.join(THEOREMS)}")
        kind, side = THEOREMS[args.theorem]
        return MSMParams(v["alpha"], v["alpha_prime"], v["beta"], v["beta_prime"], v["gamma"], side, kind)
    if args.corollary not in COROLLARIES:
        raise InputError(f"unknown corollary {args.corollary!r}; choose from {', '.join(COROLLARIES)}")
    family, kind, side = COROLLARIES[args.corollary]
    if family == "ek":
        return EKParams(v["alpha"], v["gamma"], side, kind)
    return SaigoParams(v["alpha"], v["beta"], v["gamma"], side, kind)


def _transformed(args: argparse.Namespace) -> TransformedWright:
    if getattr(args, "transform", None) is not None:
        data = _load_json(args.transform)
        try:
            return TransformedWright.from_dict(data)
        except KWrightError as exc:
            raise InputError(str(exc)) from exc
    if args.theorem is None and args.corollary is None:
        raise InputError("give --theorem, --corollary or --transform")
    if args.rho is None:
        raise InputError("--rho is required")
    op = _operator(args)
    f = _wright(args, required=False)
    w = PowerWeight(parse_complex(args.rho), args.mu, parse_complex(args.a))
    t = transform(op, w, f) if isinstance(op, MSMParams) else corollary_transform(op, w, f)
    return simplify(t) if args.simplify else t


# ---------------------------------------------------------------------------
# output


def _c(z: complex) -> list[float]:
    z = complex(z)
    return [z.real, z.imag]


def _emit(fmt: str, payload: Any, rows: list[dict], out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2) + "\n")
    elif fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
        writer.writeheader()
        writer.writerows(rows)
        out.write(buf.getvalue())
    else:
        for row in rows:
            out.write("  ".join(f"{k}={v}" for k, v in row.items()) + "\n")


def _pairs_rows(t: TransformedWright) -> list[dict]:
    rows = []
    for label, pairs in (("upper", t.params.upper), ("lower", t.params.lower)):
        for value, step in pairs:
            z = complex(value)
            rows.append({"list": label, "re": z.real, "im": z.imag, "step": float(step)})
    return rows


# ---------------------------------------------------------------------------
# commands


def cmd_eval(args: argparse.Namespace, out) -> int:
    if args.transform is not None:
        t = _transformed(args)
        value, err = evaluate_image_with_error(t, args.x, args.tol)
        payload = {"x": args.x, "value": _c(value), "est_error": err}
        _emit(args.format, payload, [{"x": args.x, "re": value.real, "im": value.imag, "est_error": err}], out)
        return 0
    f = _wright(args)
    z = parse_complex(args.z)
    verdict = classify(f, z)
    if not verdict.convergent:
        raise _Refused(f"series does not converge at z={z}: {verdict.describe()}")
    value, err = kwright_sum(f, z, args.tol)
    payload = {"z": _c(z), "value": _c(value), "est_error": err}
    row = {"z_re": complex(z).real, "z_im": complex(z).imag, "re": value.real, "im": value.imag, "est_error": err}
    _emit(args.format, payload, [row], out)
    return 0


def cmd_gammak(args: argparse.Namespace, out) -> int:
    z = parse_complex(args.z)
    value = complex(gamma_k(z, args.k))
    payload = {"z": _c(z), "k": args.k, "value": _c(value)}
    row = {"z_re": complex(z).real, "z_im": complex(z).imag, "k": args.k, "re": value.real, "im": value.imag}
    _emit(args.format, payload, [row], out)
    return 0


def cmd_classify(args: argparse.Namespace, out) -> int:
    f = _wright(args)
    z = parse_complex(args.z)
    verdict = classify(f, z)
    d = verdict.data
    payload = {
        "Delta": d.delta_cap,
        "delta": d.delta_radius,
        "mu": _c(d.mu),
        "kind": verdict.kind,
        "convergent": verdict.convergent,
        "class": verdict.describe(),
    }
    row = {
        "Delta": d.delta_cap,
        "delta": d.delta_radius,
        "mu_re": d.mu.real,
        "mu_im": d.mu.imag,
        "kind": verdict.kind,
        "convergent": verdict.convergent,
        "class": verdict.describe(),
    }
    _emit(args.format, payload, [row], out)
    return 0


def cmd_transform(args: argparse.Namespace, out) -> int:
    t = _transformed(args)
    if args.format == "json":
        out.write(t.to_json() + "\n")
    elif args.format == "csv":
        _emit("csv", None, _pairs_rows(t), out)
    else:
        sign = "+" if t.argument_sign > 0 else "-"
        out.write(f"k^({t.prefactor_k_exp}) * x^({t.x_exponent}) * Psi^k(a * x^({sign}mu/k)), k={t.k}\n")
        for row in _pairs_rows(t):
            out.write(f"  {row['list']}: ({complex(row['re'], row['im'])}, {row['step']})\n")
    return 0


def cmd_verify(args: argparse.Namespace, out) -> int:
    names = list(THEOREMS) if args.theorem == "all" else [args.theorem]
    for name in names:
        if name not in THEOREMS:
            raise InputError(f"unknown theorem {name!r}; choose from {', '.join(THEOREMS)} or all")
    rows, summary = [], {}
    failed = False
    for name in names:
        tol = args.tol if args.tol is not None else default_tolerance(THEOREMS[name][0])
        checks = verify_theorem(name, args.draws, args.seed)
        rows.extend(c.to_dict() for c in checks)
        worst = max_rel_error(checks)
        summary[name] = {"max_rel_error": worst, "tol": tol, "pass": worst < tol}
        failed |= not worst < tol
    if args.format == "json":
        out.write(json.dumps({"seed": args.seed, "draws": args.draws, "theorems": summary, "checks": rows}, indent=2) + "\n")
    elif args.format == "csv":
        _emit("csv", None, rows, out)
    else:
        for name, s in summary.items():
            verdict = "PASS" if s["pass"] else "FAIL"
            out.write(f"theorem {name}: max relative error {s['max_rel_error']:.3e} (tol {s['tol']:.1e}) {verdict}\n")
    return EXIT_VERIFY_FAILED if failed else 0


def cmd_table(args: argparse.Namespace, out) -> int:
    t = _transformed(args)
    if args.x is not None:
        xs = [float(v) for v in args.x.split(",")]
    else:
        xs = [float(v) for v in np.linspace(args.x_min, args.x_max, args.num)]
    rows = []
    for x in xs:
        value, err = evaluate_image_with_error(t, x, args.tol)
        rows.append({"x": x, "re": value.real, "im": value.imag, "est_error": err})
    payload = [{"x": r["x"], "value": [r["re"], r["im"]], "est_error": r["est_error"]} for r in rows]
    _emit(args.format, payload, rows, out)
    return 0


class _Refused(KWrightError):
    """The requested evaluation is outside the served region."""


# ---------------------------------------------------------------------------
# parser


def _positive(text: str) -> float:
    try:
        v = float(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from exc
    if not v > 0:
        raise argparse.ArgumentTypeError(f"must be positive: {text!r}")
    return v


def _add_operator_args(p: argparse.ArgumentParser, with_transform: bool) -> None:
    which = p.add_mutually_exclusive_group()
    which.add_argument("--theorem", help=f"MSM theorem id: {', '.join(THEOREMS)}")
    which.add_argument("--corollary", help=f"Saigo or Erdelyi-Kober corollary id: {', '.join(COROLLARIES)}")
    if with_transform:
        which.add_argument("--transform", help="TransformedWright JSON (inline or file)")
    p.add_argument("--op", help="operator JSON (inline or file) with alpha, alpha_prime, beta, beta_prime, gamma")
    for key in _OP_FIELDS:
        p.add_argument(f"--{key.replace('_', '-')}", dest=key, help=f"override {key}")
    p.add_argument("--params", help="operand WrightParams JSON (inline or file); default is the empty series")
    p.add_argument("--k", type=_positive, help="k (overrides the operand's k)")
    p.add_argument("--rho", help="weight exponent rho")
    p.add_argument("--mu", type=_positive, default=1.0, help="argument exponent mu > 0 (default 1)")
    p.add_argument("--a", default="0", help="argument coefficient a (default 0)")
    p.add_argument("--simplify", action="store_true", help="cancel coincident upper/lower pairs")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "pretty"), default=argparse.SUPPRESS, help="output format")
    common.add_argument("--tol", type=_positive, default=argparse.SUPPRESS, help="tolerance")
    common.add_argument("-o", "--output", default=argparse.SUPPRESS, help="output file (default stdout)")
    parser = argparse.ArgumentParser(
        prog="kwright", description="K-Wright functions under MSM fractional operators.", parents=[common]
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("eval", parents=[common], help="evaluate pPsi_q^k(z), or a transform at x")
    p.add_argument("--params", help="WrightParams JSON (inline or file)")
    p.add_argument("--k", type=_positive, help="override k")
    p.add_argument("--z", default="0", help="argument z")
    p.add_argument("--transform", help="TransformedWright JSON to evaluate at --x instead")
    p.add_argument("--x", type=_positive, default=1.0, help="x for --transform (default 1)")
    p.set_defaults(func=cmd_eval, default_format="pretty", default_tol=1e-12)

    p = sub.add_parser("gammak", parents=[common], help="evaluate Gamma_k(z)")
    p.add_argument("--z", required=True, help="argument z")
    p.add_argument("--k", type=_positive, default=1.0, help="k (default 1)")
    p.set_defaults(func=cmd_gammak, default_format="pretty", default_tol=1e-12)

    p = sub.add_parser("classify", parents=[common], help="convergence data and class of a K-Wright series")
    p.add_argument("--params", help="WrightParams JSON (inline or file)")
    p.add_argument("--k", type=_positive, help="override k")
    p.add_argument("--z", default="0", help="argument z (default 0)")
    p.set_defaults(func=cmd_classify, default_format="pretty", default_tol=1e-12)

    p = sub.add_parser("transform", parents=[common], help="emit the closed-form image of a theorem or corollary")
    _add_operator_args(p, with_transform=False)
    p.set_defaults(func=cmd_transform, default_format="json", default_tol=1e-12, transform=None)

    p = sub.add_parser("verify", parents=[common], help="closed form against quadrature for seeded random draws")
    p.add_argument("--theorem", default="all", help=f"theorem id ({', '.join(THEOREMS)}) or all")
    p.add_argument("--draws", type=int, default=20, help="number of random draws (default 20)")
    p.add_argument("--seed", type=int, default=0, help="random seed (default 0)")
    p.set_defaults(func=cmd_verify, default_format="pretty", default_tol=None)

    p = sub.add_parser("table", parents=[common], help="CSV of a transform over an x-grid")
    _add_operator_args(p, with_transform=True)
    p.add_argument("--x", help="comma-separated x values")
    p.add_argument("--x-min", type=_positive, default=0.5)
    p.add_argument("--x-max", type=_positive, default=2.0)
    p.add_argument("--num", type=int, default=7)
    p.set_defaults(func=cmd_table, default_format="csv", default_tol=1e-12)
    return parser


def run(argv: Sequence[str] | None = None, out=None, err=None) -> int:
    out = sys.stdout if out is None else out
    err = sys.stderr if err is None else err
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    args.format = getattr(args, "format", None) or args.default_format
    args.tol = getattr(args, "tol", None) or args.default_tol
    args.output = getattr(args, "output", "-")
    sink = out
    try:
        if args.output != "-":
            sink = open(args.output, "w", encoding="utf-8", newline="")
        try:
            return args.func(args, sink)
        finally:
            if sink is not out:
                sink.close()
    except (InputError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_INPUT
    except (NonConvergenceError, OverflowError) as exc:
        err.write(f"non-convergence: {exc}\n")
        return EXIT_NONCONVERGENCE
    except (KWrightError, ValueError) as exc:
        err.write(f"precondition: {exc}\n")
        return EXIT_PRECONDITION


def main() -> None:
    sys.exit(run())
