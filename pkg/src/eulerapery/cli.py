"""Command-line front end: ``eulerapery {eval,verify,suite,list} ...``."""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from fractions import Fraction

import mpmath

from . import identities
from .compositions import parse_composition
from .finite_sums import finite_t, finite_zeta
from .posets import load_poset, poset_integral
from .quadrature import quadrature_eval
from .results import DEFAULT_CONFIG, EvalResult
from .series import (
    central_binomial_series,
    euler_apery_sum,
    multiple_polylog,
    t_polylog,
    t_star_value,
    t_value,
)
from .words import parse_word, series_eval

EVAL_KINDS = ("mhs", "mhss", "t", "apery", "li", "tpolylog", "cb", "word", "poset")
FAMILIES = {
    "zeta-star": "zeta_star",
    "t-star": "t_star",
    "zeta-star-param": "zeta_star_parametric",
}


class CliError(Exception):
    pass


def _global_flags() -> argparse.ArgumentParser:
    g = argparse.ArgumentParser(add_help=False)
    g.add_argument("--digits", type=int, default=DEFAULT_CONFIG.working_precision,
                   help="working precision in decimal digits")
    g.add_argument("--max-terms", type=int, default=DEFAULT_CONFIG.max_terms)
    g.add_argument("--tol", type=float, default=None,
                   help="target error for eval, pass tolerance for verify and suite")
    g.add_argument("--engine", choices=("auto", "series", "quadrature", "both"), default="auto")
    g.add_argument("--output", choices=("text", "json", "csv"), default="text")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", default=None, help="write the output (suite: the JSON report) to FILE")
    return g


def build_parser() -> argparse.ArgumentParser:
    common = _global_flags()
    parser = argparse.ArgumentParser(prog="eulerapery", description=__doc__.split(":")[0])
    sub = parser.add_subparsers(dest="command", required=True)

    ev = sub.add_parser("eval", parents=[common], help="evaluate one quantity")
    ev.add_argument("kind", choices=EVAL_KINDS)
    ev.add_argument("--k", help="composition such as 2,1 (cb: a nonnegative integer)")
    ev.add_argument("--n", type=int, help="truncation point of a finite sum")
    ev.add_argument("--x", help="argument, e.g. 0.5 or 1/3")
    ev.add_argument("--exact", action="store_true", help="print finite sums as fractions")
    ev.add_argument("--star", action="store_true", help="t: star variant")
    ev.add_argument("--family", choices=tuple(FAMILIES), default="zeta-star")
    ev.add_argument("--k1", type=int)
    ev.add_argument("--tail", default="", help="inner composition of an Euler-Apery sum")
    ev.add_argument("--args", help="li: comma-separated arguments (reals, i, -i)")
    ev.add_argument("--form", choices=("plain", "squared"), default="plain")
    ev.add_argument("--word", help='whitespace-separated atoms, e.g. "x1 x0"')
    ev.add_argument("--lower", default="0")
    ev.add_argument("--upper", default="1")
    ev.add_argument("--file", help="poset JSON file")
    ev.add_argument("--z", default="1")

    ve = sub.add_parser("verify", parents=[common], help="run one identity check")
    ve.add_argument("name")
    for key in ("n", "m", "k", "x", "p"):
        ve.add_argument(f"--{key}", default=None)

    su = sub.add_parser("suite", parents=[common], help="run registry entries over their default grids")
    su.add_argument("--filter", default=None, help="glob on entry names")

    sub.add_parser("list", parents=[common], help="list registry entries")
    return parser


def _config(args):
    target = DEFAULT_CONFIG.target_tol
    if args.tol is not None:
        if args.tol < 0:
            raise CliError("--tol must be nonnegative")
        if args.command == "eval":
            target = args.tol
        elif args.tol > 0:
            # a looser pass budget lets the series stop earlier
            target = args.tol / 100
    try:
        return DEFAULT_CONFIG.replace(max_terms=args.max_terms, target_tol=target, working_precision=args.digits)
    except ValueError as exc:
        raise CliError(str(exc)) from None


def _number(text: str):
    text = text.strip()
    if text in ("i", "+i"):
        return 1j
    if text == "-i":
        return -1j
    try:
        return Fraction(text)
    except ValueError:
        pass
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        raise CliError(f"cannot parse number {text!r}") from None


def _real(text: str) -> Fraction:
    v = _number(text)
    if not isinstance(v, Fraction):
        raise CliError(f"expected a real number, got {text!r}")
    return v


def _need(value, flag):
    if value is None:
        raise CliError(f"missing {flag}")
    return value


def _composition(text, flag="--k"):
    try:
        return tuple(parse_composition(_need(text, flag)))
    except ValueError as exc:
        raise CliError(f"{flag}: {exc}") from None


def _finite(args, fn):
    k = _composition(args.k)
    n = _need(args.n, "--n")
    x = None if args.x is None else _real(args.x)
    with mpmath.workdps(args.digits):
        return fn(n, k, x)


def _eval(args, cfg):
    """Returns ``("exact", value)``, ``("result", EvalResult)`` or ``("both", (series, quadrature))``."""
    kind = args.kind
    if kind in ("mhs", "mhss"):
        value = _finite(args, lambda n, k, x: finite_zeta(n, k, strict=kind == "mhs", x=x))
        return "exact", value
    if kind == "t":
        k = _composition(args.k)
        if args.n is not None:
            value = _finite(args, lambda n, k, x: finite_t(n, k, strict=not args.star, x=x))
            return "exact", value
        return "result", (t_star_value(k, cfg) if args.star else t_value(k, cfg))
    if kind == "apery":
        k1 = _need(args.k1, "--k1")
        tail = _composition(args.tail, "--tail") if args.tail else ()
        x = None if args.x is None else _real(args.x)
        return "result", euler_apery_sum(FAMILIES[args.family], k1, tail, x, cfg)
    if kind == "li":
        k = _composition(args.k)
        vals = tuple(_number(s) for s in _need(args.args, "--args").split(","))
        return "result", multiple_polylog(k, vals, cfg)
    if kind == "tpolylog":
        return "result", t_polylog(_composition(args.k), _real(_need(args.x, "--x")), cfg)
    if kind == "cb":
        try:
            k = int(_need(args.k, "--k"))
        except ValueError:
            raise CliError("--k must be an integer for cb") from None
        return "result", central_binomial_series(k, _real(_need(args.x, "--x")), args.form, cfg)
    if kind == "word":
        word = parse_word(_need(args.word, "--word"))
        lower, upper = _real(args.lower), _real(args.upper)
        series_ok = lower == 0 and not any(a.is_kernel for a in word)
        return _routes(args.engine, series_ok,
                       lambda: series_eval(word, upper, cfg),
                       lambda: quadrature_eval(word, float(lower), float(upper), cfg=cfg))
    if kind == "poset":
        X = load_poset(_need(args.file, "--file"))
        z = _real(args.z)
        return _routes(args.engine, True,
                       lambda: poset_integral(X, z, cfg, "series"),
                       lambda: poset_integral(X, z, cfg, "quadrature"))
    raise CliError(f"unknown kind {kind!r}")


def _routes(engine, series_ok, series, quad):
    if engine == "auto":
        engine = "series" if series_ok else "quadrature"
    if engine in ("series", "both") and not series_ok:
        raise CliError("the series route needs lower = 0 and a word without kernel atoms")
    if engine == "series":
        return "result", series()
    if engine == "quadrature":
        return "result", quad()
    return "both", (series(), quad())


def _fmt(v, digits) -> str:
    return mpmath.nstr(v, digits, min_fixed=-mpmath.inf, max_fixed=mpmath.inf)


def _result_row(r: EvalResult, digits, label="value") -> dict:
    return {
        "label": label,
        "value_re": _fmt(r.value.real, digits),
        "value_im": _fmt(r.value.imag, digits),
        "err": repr(r.err_estimate),
        "terms": str(r.terms_used),
        "engine": r.engine,
        "converged": r.converged,
    }


def _render_eval(kind, payload, args) -> tuple:
    digits = args.digits
    if kind == "exact":
        v = payload
        if args.exact and isinstance(v, Fraction):
            text = str(v)
        else:
            text = _fmt(v if not isinstance(v, Fraction) else mpmath.mpf(v.numerator) / v.denominator, digits)
        rows = [{"label": "value", "value": text, "exact": isinstance(v, Fraction)}]
        return rows, True
    results = [("value", payload)] if kind == "result" else [("series", payload[0]), ("quadrature", payload[1])]
    rows = [_result_row(r, digits, label) for label, r in results]
    ok = all(r.converged for _, r in results)
    if kind == "both":
        diff = abs(payload[0].value - payload[1].value)
        rows.append({"label": "difference", "value_re": _fmt(diff, 6), "value_im": "0",
                     "err": repr(payload[0].err_estimate + payload[1].err_estimate), "terms": "",
                     "engine": "", "converged": ok})
    return rows, ok


def _emit(rows, fmt, text_lines) -> str:
    if fmt == "json":
        return json.dumps(rows if len(rows) != 1 else rows[0], indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        fields = []
        for r in rows:
            fields += [f for f in r if f not in fields]
        w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
        w.writeheader()
        w.writerows(rows)
        return buf.getvalue()
    return "\n".join(text_lines) + "\n"


def _eval_text(rows):
    lines = []
    for r in rows:
        if "value" in r:
            lines.append(r["value"])
            continue
        value = r["value_re"] if r["value_im"] in ("0", "0.0") else f"{r['value_re']} + {r['value_im']}i"
        prefix = "" if r["label"] == "value" else f"{r['label']}: "
        tail = "" if r["label"] == "difference" else f"  (err {float(r['err']):.2e}, {r['engine']} {r['terms']})"
        if r["label"] != "difference" and not r["converged"]:
            tail += "  NOT CONVERGED"
        lines.append(prefix + value + tail)
    return lines


def _report_text(rep) -> str:
    status = "PASS" if rep.passed else "FAIL"
    params = " ".join(f"{k}={v}" for k, v in identities.format_params(rep.params).items())
    line = f"{status}  {rep.name:18s} {params:28s} residual={rep.residual:.3e}  tol={rep.tolerance:.0e}"
    if rep.diagnostics:
        line += f"  [{rep.diagnostics}]"
    return line


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
        return
    try:
        with open(path, "w") as fh:
            fh.write(text)
    except OSError as exc:
        raise CliError(f"cannot write {path}: {exc.strerror or exc}") from None


def _report_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["name", "params", "lhs_re", "rhs_re", "residual", "tolerance", "pass"])
    for rep in reports:
        j = rep.to_json()
        params = ";".join(f"{k}={v}" for k, v in j["params"].items())
        w.writerow([rep.name, params, j["lhs"]["value_re"] if j["lhs"] else "", j["rhs"]["value_re"] if j["rhs"] else "",
                    j["residual"], j["tolerance"], rep.passed])
    return buf.getvalue()


def _cmd_eval(args) -> int:
    cfg = _config(args)
    kind, payload = _eval(args, cfg)
    rows, ok = _render_eval(kind, payload, args)
    _write(_emit(rows, args.output, _eval_text(rows)), args.out)
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    cfg = _config(args)
    if args.name not in identities.REGISTRY:
        raise CliError(f"unknown identity {args.name!r}; valid names: {', '.join(identities.REGISTRY)}")
    params = {k: getattr(args, k) for k in ("n", "m", "k", "x", "p") if getattr(args, k) is not None}
    try:
        with mpmath.workdps(args.digits):
            rep = identities.verify(args.name, params, args.tol, cfg)
    except ValueError as exc:
        raise CliError(str(exc)) from None
    if args.output == "json":
        text = json.dumps(rep.to_json(args.digits), indent=2) + "\n"
    elif args.output == "csv":
        text = _report_csv([rep])
    else:
        j = rep.to_json(args.digits)
        text = "\n".join([_report_text(rep), f"  lhs = {j['lhs']['value_re']}", f"  rhs = {j['rhs']['value_re']}"]) + "\n"
    _write(text, args.out)
    return 0 if rep.passed else 1


def _cmd_suite(args) -> int:
    cfg = _config(args)
    start = time.perf_counter()
    reports = identities.run_suite(args.filter, cfg, args.tol, seed=args.seed)
    total = time.perf_counter() - start
    passed = sum(r.passed for r in reports)
    groups = sorted({r.name for r in reports})
    summary = [f"{name:18s} {sum(r.passed for r in reports if r.name == name):4d}/"
               f"{sum(1 for r in reports if r.name == name):<4d} "
               f"max residual {max(r.residual for r in reports if r.name == name):.2e}" for name in groups]
    summary.append(f"{passed}/{len(reports)} checks passed in {len(groups)} entries ({total:.1f} s)")
    summary += [_report_text(r) for r in reports if not r.passed]
    document = {
        "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
        "filter": args.filter,
        "seed": args.seed,
        "passed": passed,
        "total": len(reports),
        "reports": [r.to_json(args.digits) for r in reports],
    }
    report_json = json.dumps(document, indent=2) + "\n"
    if args.out is not None:
        _write(report_json, args.out)
        sys.stdout.write("\n".join(summary) + "\n")
    elif args.output == "json":
        sys.stdout.write(report_json)
    elif args.output == "csv":
        sys.stdout.write(_report_csv(reports))
    else:
        sys.stdout.write("\n".join(summary) + "\n")
    return 0 if passed == len(reports) else 1


def _cmd_list(args) -> int:
    rows = [{"name": e.name, "parameters": ",".join(e.schema), "tolerance": repr(e.tolerance),
             "grid_size": str(len(e.grid(args.seed))), "description": e.summary}
            for e in identities.REGISTRY.values()]
    lines = [f"{r['name']:18s} {r['parameters']:8s} tol={float(r['tolerance']):<7.0e} "
             f"grid={r['grid_size']:>4s}  {r['description']}" for r in rows]
    _write(_emit(rows, args.output, lines) if args.output != "json" else json.dumps(rows, indent=2) + "\n", args.out)
    return 0


COMMANDS = {"eval": _cmd_eval, "verify": _cmd_verify, "suite": _cmd_suite, "list": _cmd_list}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (CliError, ValueError, KeyError, OSError, ArithmeticError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        print(f"eulerapery: error: {msg}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
