"""Command-line front end.

Usage::

    qbessel eval --func I --kind 3 --nu 0.5 --z 1.0 --q 0.9 --json
    qbessel table --func K --kind 3 --nu 1 --z-start 0.5 --z-end 3 --steps 6 --q 0.8
    qbessel verify --suite diffeq
    qbessel limit-scan --func I --kind 2 --nu 0.5 --z 1 --q-list 0.9,0.99,0.999 --assert-monotone

Exit status: 0 success, 1 verification failure, 2 domain or usage error,
3 non-convergence.  Setting ``QBESSEL_ORACLE=1`` switches every evaluation
to the extended-precision oracle arithmetic.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys

from . import classical
from .bessel import Kind, jackson_j, modified_i
from .core import NotConverged, QBesselError, SeriesPolicy, SeriesResult
from .integral import q_const
from .macdonald import NEAR_INTEGER, macdonald_k
from .verify import SUITES, run_suite, summarize

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_DOMAIN = 2
EXIT_NOT_CONVERGED = 3

CSV_HEADER = ["func", "kind", "nu", "q", "z_re", "z_im", "value_re", "value_im", "converged", "flag"]


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors already; keep that but make it explicit
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_DOMAIN, f"{self.prog}: error: {message}\n")


def _policy(args) -> SeriesPolicy:
    kw = {}
    if args.eps is not None:
        kw["eps_series"] = args.eps
    if args.max_terms is not None:
        kw["max_terms"] = args.max_terms
    if os.environ.get("QBESSEL_ORACLE") == "1":
        return SeriesPolicy.oracle_mode(**kw)
    return SeriesPolicy(**kw)


def _fmt(x: float) -> str:
    """Shortest round-trip text; NaN and infinities spelled as in CSV readers."""
    x = float(x)
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    return repr(x)


def _jsonable(x):
    if isinstance(x, float) and not math.isfinite(x):
        return None
    if isinstance(x, dict):
        return {k: _jsonable(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    return x


def _dump(obj) -> None:
    print(json.dumps(_jsonable(obj), indent=2, allow_nan=False))


def _evaluate(func: str, kind: int, nu: float, z: complex, q: float,
              policy: SeriesPolicy, path: str = "series") -> tuple[SeriesResult, str]:
    if func == "I":
        return modified_i(kind, nu, z, q, policy), "series"
    if func == "J":
        return jackson_j(kind, nu, z, q, policy), "series"
    res = macdonald_k(kind, nu, z, q, policy, path=path)
    if path == "closed":
        return res, "closed-form"
    n = round(abs(nu))
    return res, "continuation" if abs(abs(nu) - n) < NEAR_INTEGER else "series"


def _record(func, kind, nu, q, z, res: SeriesResult, path: str) -> dict:
    v = complex(res.value)
    return dict(func=func, kind=kind, nu=nu, q=q, z_re=z.real, z_im=z.imag,
                value_re=v.real, value_im=v.imag, terms_used=int(res.terms_used),
                tail_bound=float(res.tail_bound), path=path, converged=bool(res.converged))


# -- subcommands ---------------------------------------------------------------


def cmd_eval(args) -> int:
    z = complex(args.z, args.z_im)
    res, path = _evaluate(args.func, args.kind, args.nu, z, args.q, _policy(args), args.path)
    rec = _record(args.func, args.kind, args.nu, args.q, z, res, path)
    if args.json:
        _dump(rec)
    else:
        for k in ("value_re", "value_im", "tail_bound"):
            rec[k] = _fmt(rec[k])
        for k, v in rec.items():
            print(f"{k}: {v}")
    return EXIT_OK


def _grid(start: float, end: float, steps: int) -> list[float]:
    if steps == 1:
        return [start]
    h = (end - start) / (steps - 1)
    return [start + i * h for i in range(steps - 1)] + [end]


def cmd_table(args) -> int:
    if args.steps < 1:
        raise argparse.ArgumentTypeError("--steps must be at least 1")
    if not args.z_end >= args.z_start:
        raise argparse.ArgumentTypeError("need --z-end >= --z-start")
    policy = _policy(args)
    rows = []
    for x in _grid(args.z_start, args.z_end, args.steps):
        z = complex(x, args.z_im)
        row = dict(func=args.func, kind=args.kind, nu=args.nu, q=args.q, z_re=z.real, z_im=z.imag)
        try:
            res, _ = _evaluate(args.func, args.kind, args.nu, z, args.q, policy)
        except NotConverged:
            row.update(value_re=math.nan, value_im=math.nan, converged=False, flag="not_converged")
        except QBesselError as exc:
            row.update(value_re=math.nan, value_im=math.nan, converged=False,
                       flag=type(exc).__name__)
        else:
            v = complex(res.value)
            row.update(value_re=v.real, value_im=v.imag, converged=bool(res.converged), flag="")
        rows.append(row)
    if args.json:
        _dump(dict(header=CSV_HEADER, rows=rows))
        return EXIT_OK
    w = csv.writer(sys.stdout, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r["func"], r["kind"], _fmt(r["nu"]), _fmt(r["q"]), _fmt(r["z_re"]), _fmt(r["z_im"]),
                    _fmt(r["value_re"]), _fmt(r["value_im"]), "true" if r["converged"] else "false",
                    r["flag"]])
    return EXIT_OK


def cmd_verify(args) -> int:
    rows = run_suite(args.suite, q_values=args.q or None, tol_scale=args.tol_scale,
                     policy=_policy(args))
    summary = summarize(rows)
    ok = all(r.passed for r in rows)
    if args.json:
        _dump(dict(suite=args.suite, passed=ok, summary=summary,
                   rows=[r.as_dict() for r in rows]))
    else:
        for s in summary:
            status = "PASS" if s["failed"] == 0 else "FAIL"
            print(f"{status}  {s['identity']:<28} checks={s['checks']:<4d} "
                  f"failed={s['failed']:<4d} worst_rel={_fmt(s['worst_rel'])}")
        for r in rows:
            if not r.passed:
                print(f"  failed {r.identity} {json.dumps(_jsonable(r.params), sort_keys=True)}"
                      f" rel={_fmt(r.rel_residual)} {r.note}".rstrip())
        print("all passed" if ok else "verification FAILED")
    return EXIT_OK if ok else EXIT_VERIFY


def _parse_qs(text: str) -> list[float]:
    try:
        qs = [float(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad q list {text!r}") from exc
    if not qs or any(not 0 < q < 1 for q in qs) or qs != sorted(qs):
        raise argparse.ArgumentTypeError("q-list must be ascending values in (0, 1)")
    return qs


def cmd_limit_scan(args) -> int:
    policy = _policy(args)
    z = complex(args.z, 0.0)
    rows = []
    for q in args.q_list:
        if args.func == "Q":
            value = complex(q_const(args.nu, q, policy).value)
            ref = complex(math.pi / 2)
        elif args.func == "I":
            value = complex(modified_i(args.kind, args.nu, z, q, policy).value)
            ref = classical.bessel_i(args.nu, z)
        else:
            value = complex(macdonald_k(args.kind, args.nu, z, q, policy).value)
            ref = classical.bessel_k(args.nu, z)
        rows.append(dict(q=q, value_re=value.real, value_im=value.imag,
                         reference=ref.real, error=abs(value - ref)))
    errors = [r["error"] for r in rows]
    monotone = all(b < a for a, b in zip(errors, errors[1:]))
    if args.json:
        _dump(dict(func=args.func, kind=args.kind, nu=args.nu, z=args.z,
                   rows=rows, monotone=monotone))
    else:
        print("q,value_re,value_im,reference,error")
        for r in rows:
            print(",".join(_fmt(r[k]) for k in ("q", "value_re", "value_im", "reference", "error")))
    if args.assert_monotone and not monotone:
        print("error: the error column is not strictly decreasing", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


# -- argument parsing -------------------------------------------------------------


def _kind(text: str) -> int:
    k = int(text)
    if k not in (1, 2, 3):
        raise argparse.ArgumentTypeError("kind must be 1, 2 or 3")
    return k


def _q(text: str) -> float:
    q = float(text)
    if not 0 < q < 1:
        raise argparse.ArgumentTypeError("q must lie in (0, 1)")
    return q


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--eps", type=float, default=None, help="series truncation threshold")
    common.add_argument("--max-terms", type=int, default=None, help="series term budget")
    common.add_argument("--json", action="store_true", help="emit one JSON document")

    p = _Parser(prog="qbessel", description="q-Bessel and q-Bessel-Macdonald functions.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def point(sp, with_z=True):
        sp.add_argument("--kind", type=_kind, default=1)
        sp.add_argument("--nu", type=float, required=True)
        sp.add_argument("--q", type=_q, required=True)
        if with_z:
            sp.add_argument("--z", type=float, required=True)
        sp.add_argument("--z-im", type=float, default=0.0)

    e = sub.add_parser("eval", parents=[common], help="evaluate one function value")
    e.add_argument("--func", choices=("I", "K", "J"), required=True)
    point(e)
    e.add_argument("--path", choices=("series", "closed"), default="series",
                   help="evaluation path for K")
    e.set_defaults(run=cmd_eval)

    t = sub.add_parser("table", parents=[common], help="tabulate over a z range")
    t.add_argument("--func", choices=("I", "K", "J"), required=True)
    point(t, with_z=False)
    t.add_argument("--z-start", type=float, required=True)
    t.add_argument("--z-end", type=float, required=True)
    t.add_argument("--steps", type=int, default=11)
    t.set_defaults(run=cmd_table)

    v = sub.add_parser("verify", parents=[common], help="run identity verification suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--q", type=_q, action="append", help="override the q grid (repeatable)")
    v.add_argument("--tol-scale", type=float, default=1.0)
    v.set_defaults(run=cmd_verify)

    s = sub.add_parser("limit-scan", parents=[common], help="approach the classical limit q -> 1")
    s.add_argument("--func", choices=("I", "K", "Q"), required=True)
    s.add_argument("--kind", type=_kind, default=1)
    s.add_argument("--nu", type=float, required=True)
    s.add_argument("--z", type=float, default=1.0)
    s.add_argument("--q-list", type=_parse_qs, default=[0.9, 0.99, 0.999])
    s.add_argument("--assert-monotone", action="store_true")
    s.set_defaults(run=cmd_limit_scan)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.run(args)
    except NotConverged as exc:
        print(f"error: not converged: {exc}", file=sys.stderr)
        return EXIT_NOT_CONVERGED
    except (QBesselError, argparse.ArgumentTypeError, ValueError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
