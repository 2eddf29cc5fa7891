"""Command-line entry point: ``fqsums <subcommand> ...``."""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .artin_schreier import (
    as_binomial_report,
    as_count_charsum,
    as_count_direct,
    as_count_pairs,
    as_report,
    make_instance,
)
from .bounds import binomial_report, index_report, weil_report
from .charsum import char_sum_full, char_sum_nonzero
from .codes import make_code, min_weight_floor, min_weight_search, weight_table
from .cyclotomic import cv_abs
from .errors import FqSumsError
from .field import FieldSpec, parse_field
from .index import index_form
from .poly import format_poly, parse_poly
from .sweep import CampaignConfig, run_campaign


def _elem(spec: FieldSpec, x: int):
    return x if x < spec.p else spec.format_element(x)


def _emit(args, data: dict, lines=None):
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
        return
    for key, value in (lines if lines is not None else data.items()):
        if isinstance(value, (dict, list)):
            value = json.dumps(value, sort_keys=True)
        print(f"{key}: {value}")


def _need_field(args) -> FieldSpec:
    if not args.field:
        raise FqSumsError("--field is required (e.g. --field q=7)")
    return parse_field(args.field)


def cmd_field(args) -> int:
    spec = _need_field(args)
    data = {
        "p": spec.p, "m": spec.m, "q": spec.q, "modulus": list(spec.modulus),
        "gamma": spec.format_element(spec.gamma), "literal": spec.literal,
        "trace_kernel_size": sum(1 for x in spec.elements() if spec.trace(x) == 0),
    }
    _emit(args, data)
    return 0


def cmd_index(args) -> int:
    spec = _need_field(args)
    form = index_form(spec, parse_poly(spec, args.poly))
    data = {"b": _elem(spec, form.b), "a": _elem(spec, form.a), "r": form.r, "s": form.s,
            "ell": form.ell, "f": format_poly(spec, form.f), "n0": form.n0}
    _emit(args, data)
    return 0


def cmd_charsum(args) -> int:
    spec = _need_field(args)
    g = parse_poly(spec, args.poly)
    total = char_sum_nonzero(spec, g) if args.nonzero else char_sum_full(spec, g)
    mag, err = cv_abs(total)
    data = {"sum": total.to_json(), "magnitude": mag, "error": err,
            "domain": "nonzero" if args.nonzero else "full"}
    _emit(args, data)
    return 0


def _report_lines(rep) -> list:
    lines = [("bound", rep.bound), ("center", f"{rep.center}" + (
        f"*zeta^{rep.center_phase}" if rep.center_phase else "")),
        ("lhs", rep.lhs), ("lhs_error", rep.lhs_error), ("rhs", rep.rhs),
        ("slack", rep.slack), ("holds", rep.holds), ("applicable", rep.applicable),
        ("reason", rep.reason)]
    lines += sorted(rep.params.items())
    if rep.literal is not None:
        lines += [("literal." + k, v) for k, v in _report_lines(rep.literal)]
    return lines


def cmd_bounds(args) -> int:
    if args.mode == "sweep":
        return _bounds_sweep(args)
    spec = _need_field(args)
    if not args.poly:
        raise FqSumsError("--poly is required")
    g = parse_poly(spec, args.poly)
    chosen = ["weil", "index"] if args.bound == "all" else [args.bound]
    reports = [{"weil": weil_report, "index": index_report}[name](spec, g) for name in chosen]
    if args.json:
        print(json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True))
    else:
        for i, rep in enumerate(reports):
            if i:
                print()
            _emit(args, {}, _report_lines(rep))
    return 1 if any(r.holds == "violated" for r in reports) else 0


def _bounds_sweep(args) -> int:
    if not args.fields:
        raise FqSumsError("bounds sweep needs --fields")
    family = {"kind": args.family}
    if args.max_degree is not None:
        family["max_degree"] = args.max_degree
    if args.coprime_r:
        family["coprime_r"] = True
    config = CampaignConfig.from_dict({
        "fields": [f if "=" in f else f"q={f}" for f in args.fields.split(",") if f],
        "family": family, "bounds": args.bounds.split(","), "seed": args.seed,
        "out": args.out, "threads": args.threads or 1})
    return _finish_campaign(args, run_campaign(config))


def _finish_campaign(args, report) -> int:
    if args.out is None and report.config.out is None:
        sys.stdout.write(report.csv_text())
    else:
        _emit(args, report.to_json())
    return report.exit_code


def cmd_binomial(args) -> int:
    spec = _need_field(args)
    a = parse_poly(spec, args.a).constant
    rep = binomial_report(spec, args.n, args.r, a, with_index=True)
    if args.json:
        print(json.dumps(rep.to_json(), indent=2, sort_keys=True))
    else:
        _emit(args, {}, _report_lines(rep))
    return 1 if rep.holds == "violated" else 0


def cmd_ascurve(args) -> int:
    inst = make_instance(args.q, args.m, args.poly)
    direct = as_count_direct(inst)
    data = {"N": as_count_pairs(inst), "N_direct": direct, "N_charsum": as_count_charsum(inst),
            "bound_report": None}
    if args.bound:
        data["bound_report"] = as_report(inst, count=direct).to_json()
    if args.binomial:
        n, r, a = args.binomial
        data["binomial_report"] = as_binomial_report(inst, n, r, a).to_json()
    if args.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        lines = [("N", data["N"]), ("N_direct", direct), ("N_charsum", data["N_charsum"])]
        if args.bound:
            lines += [("bound." + k, v) for k, v in _report_lines(as_report(inst, count=direct))]
        _emit(args, data, lines)
    return 0


def cmd_code(args) -> int:
    J = [int(j) for j in args.J.split(",") if j.strip()] if args.J else []
    code = make_code(args.q, args.m, args.N, J)
    rows = weight_table(code, verify_bounds=args.verify_bounds)
    if args.out:
        with open(args.out, "w", newline="") as fh:
            writer = csv.writer(fh, quoting=csv.QUOTE_NONNUMERIC, lineterminator="\n")
            writer.writerow(["a", "weight", "window_lo", "window_hi", "in_window"])
            for row in rows:
                g = format_poly(code.ext, code.g_a(row["a"]))
                writer.writerow([g, row["weight"], _blank(row["window_lo"]),
                                 _blank(row["window_hi"]), _blank(row["in_window"])])
    weights = {}
    for row in rows:
        weights[row["weight"]] = weights.get(row["weight"], 0) + 1
    data = {"q": code.q, "m": code.m, "N": code.N, "k": code.k, "J": list(code.J),
            "weight_distribution": {str(w): c for w, c in sorted(weights.items())}}
    if args.verify_bounds:
        checked = [row for row in rows if row["in_window"] is not None]
        data["windows_checked"] = len(checked)
        data["windows_missed"] = sum(1 for row in checked if not row["in_window"])
    if args.min_weight:
        res = min_weight_search(code, budget=args.budget, seed=args.seed)
        data["min_weight"] = res.min_weight
        data["min_weight_exhaustive"] = res.exhaustive
        data["min_weight_argmin"] = list(res.argmin) if res.argmin else None
        try:
            floor = min_weight_floor(code)
        except FqSumsError as exc:
            data["min_weight_floor"] = None
            data["min_weight_floor_reason"] = str(exc)
        else:
            data["min_weight_floor"] = floor.value
    _emit(args, data)
    return 1 if data.get("windows_missed") else 0


def _blank(value):
    return "" if value is None else value


def cmd_sweep(args) -> int:
    config = CampaignConfig.load(args.config)
    if args.out:
        config.out = args.out
    if args.threads:
        config.threads = args.threads
    return _finish_campaign(args, run_campaign(config))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--field", help='field literal, e.g. "q=7" or "q=3^2;mod=2,1,1"')
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, help="worker processes for sweeps")

    parser = argparse.ArgumentParser(prog="fqsums", parents=[common],
                                     description="Character sums over finite fields.")
    parser.set_defaults(field=None, json=False, threads=None)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("field", parents=[common], help="inspect a field")
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("index", parents=[common], help="index form of a polynomial")
    p.add_argument("--poly", required=True)
    p.set_defaults(func=cmd_index)

    p = sub.add_parser("charsum", parents=[common], help="exact character sum")
    p.add_argument("--poly", required=True)
    p.add_argument("--nonzero", action="store_true", help="sum over nonzero x only")
    p.set_defaults(func=cmd_charsum)

    p = sub.add_parser("bounds", parents=[common], help="Weil and index bounds, or a sweep")
    p.add_argument("mode", nargs="?", choices=["sweep"])
    p.add_argument("--poly")
    p.add_argument("--bound", choices=["weil", "index", "all"], default="all")
    p.add_argument("--fields", help="comma-separated field sizes for sweeps")
    p.add_argument("--family", choices=["binomials", "trinomials", "monomials"],
                   default="binomials")
    p.add_argument("--bounds", default="index", help="comma-separated bounds for sweeps")
    p.add_argument("--max-degree", type=int)
    p.add_argument("--coprime-r", action="store_true", help="only r with gcd(r, p) = 1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("binomial", parents=[common], help="bound for x^n + a x^r")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--a", required=True, help="field element, e.g. 3 or [1,2]")
    p.set_defaults(func=cmd_binomial)

    p = sub.add_parser("ascurve", parents=[common], help="points on y^q - y = g(x)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--poly", required=True)
    p.add_argument("--bound", action="store_true")
    p.add_argument("--binomial", type=int, nargs=3, metavar=("N", "R", "A"))
    p.set_defaults(func=cmd_ascurve)

    p = sub.add_parser("code", parents=[common], help="trace-form cyclic code weights")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--J", default="")
    p.add_argument("--min-weight", action="store_true")
    p.add_argument("--verify-bounds", action="store_true")
    p.add_argument("--budget", type=int, default=1 << 16)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_code)

    p = sub.add_parser("sweep", parents=[common], help="run a JSON-configured campaign")
    p.add_argument("--config", required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FqSumsError as exc:
        print(f"fqsums: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
