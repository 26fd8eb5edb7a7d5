"""Command-line entry point.

`curvelct compute` runs any subset of the three LCT methods on one curve
and compares them; `curvelct batch` runs one compute line per file line.
Exit codes: 0 = AGREE (or documented smooth-branch disagreement),
2 = genuine cross-method disagreement, 1 = error.
"""

from __future__ import annotations

import argparse
import json
import shlex
import sys
import time
from fractions import Fraction
from typing import List, Optional, Tuple

from . import univar
from .arith import field_from_spec, rat_str
from .errors import CurveLctError, SmoothBranch
from .newton import lct_monom_closedform, monom_ideal, newton_polygon
from .poly import normalize_coordinates, ord_m, parse_poly
from .resolution import resolution_lct
from .skp import skp_from_curve
from .valtree import lct_formula

METHODS = ("formula", "howald", "resolution")


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="curvelct",
        description="Exact log canonical thresholds of plane curve branches.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    comp = sub.add_parser("compute", help="run LCT methods on one curve")
    _add_compute_args(comp)
    batch = sub.add_parser("batch", help="run one compute line per file line")
    batch.add_argument("file", help="newline-delimited compute argument lines")
    return parser


def _add_compute_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--field", default="q", help="'q' or 'fp:<prime>'")
    p.add_argument("--poly", required=True, help="curve polynomial, e.g. 'y^2 - x^3'")
    p.add_argument(
        "--method",
        default="all",
        choices=METHODS + ("all",),
        help="which LCT computation(s) to run",
    )
    p.add_argument("--allow-smooth", action="store_true", help="evaluate the formula on smooth branches")
    p.add_argument("--json", action="store_true", help="emit the full JSON report")
    p.add_argument("--dot", metavar="PATH", help="write the dual graph in DOT format")
    p.add_argument("--seed", type=int, default=None, help="seed for randomized root splitting")
    p.add_argument("--max-blowups", type=int, default=None, help="override the blow-up budget")
    return None


def _howald_report(f, allow_smooth: bool) -> dict:
    """LCT via the Newton polygon of the terminal key polynomial."""
    fn, _ = normalize_coordinates(f)
    F = fn.field
    lead = fn.y_coeffs()[fn.deg_y]
    if len(lead) == 1 and lead[0] != F.one:
        fn = fn.scale(F.inv(lead[0]))
    if ord_m(fn) == 1 and not allow_smooth:
        raise SmoothBranch("smooth branch; pass --allow-smooth to evaluate anyway")
    skp = skp_from_curve(fn)
    value = lct_monom_closedform(skp)
    polygon = newton_polygon(monom_ideal(skp.keys[skp.k]))
    return {"lct": rat_str(value), "polygon": polygon.to_json(), "method": "howald"}


def run_compute(args: argparse.Namespace) -> Tuple[dict, int]:
    if args.seed is not None:
        univar.DEFAULT_SEED = args.seed
    field = field_from_spec(args.field)
    f = parse_poly(field, args.poly)
    methods = METHODS if args.method == "all" else (args.method,)
    started = time.monotonic()
    results: dict = {}
    values: List[Tuple[str, Fraction]] = []
    smooth = False
    for method in methods:
        if method == "formula":
            out = lct_formula(f, allow_smooth=args.allow_smooth)
            smooth = smooth or out.smooth
            results["formula"] = out.to_json()
            values.append(("formula", out.lct))
        elif method == "howald":
            rep = _howald_report(f, args.allow_smooth)
            results["howald"] = rep
            values.append(("howald", Fraction(rep["lct"])))
        else:
            res = resolution_lct(f, max_blowups=args.max_blowups)
            results["resolution"] = res.to_json()
            values.append(("resolution", res.lct))
            if args.dot:
                with open(args.dot, "w") as fh:
                    fh.write(res.tree.to_dot() + "\n")
            smooth = smooth or res.exceptional_min is None

    distinct = {v for _, v in values}
    if len(distinct) == 1:
        verdict = "AGREE"
        code = 0
    elif smooth:
        # the formula intentionally exceeds the capped germ value on smooth input
        verdict = "DISAGREE-BY-DESIGN"
        code = 0
    else:
        verdict = "DISAGREE"
        code = 2
    report = {
        "field": args.field,
        "poly": args.poly,
        "results": results,
        "values": {name: rat_str(v) for name, v in values},
        "verdict": verdict,
        "elapsed_ms": round((time.monotonic() - started) * 1000, 3),
    }
    if verdict == "DISAGREE-BY-DESIGN":
        report["warning"] = (
            "smooth branch: the valuation formula exceeds the germ LCT 1 by design"
        )
    return report, code


def _print_report(report: dict, as_json: bool) -> None:
    if as_json:
        print(json.dumps(report, indent=2))
        return
    for name, value in report["values"].items():
        print(f"{name:<11} {value}")
    print(f"verdict     {report['verdict']}")
    if "warning" in report:
        print(f"warning     {report['warning']}")


def run_batch(path: str) -> int:
    parser = argparse.ArgumentParser(prog="curvelct-batch-line")
    _add_compute_args(parser)
    worst = 0
    try:
        with open(path) as fh:
            lines = fh.readlines()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    for lineno, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            args = parser.parse_args(shlex.split(line))
            report, code = run_compute(args)
        except SystemExit:
            print(f"line {lineno}: cannot parse {line!r}", file=sys.stderr)
            worst = max(worst, 1)
            continue
        except CurveLctError as exc:
            print(f"line {lineno}: {type(exc).__name__}: {exc}", file=sys.stderr)
            worst = max(worst, 1)
            continue
        print(f"line {lineno}: {report['poly']} over {report['field']}: "
              f"{report['verdict']} " + " ".join(f"{k}={v}" for k, v in report["values"].items()))
        worst = max(worst, code)
    return worst


def main(argv: Optional[List[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "batch":
        return run_batch(args.file)
    try:
        report, code = run_compute(args)
    except CurveLctError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    _print_report(report, args.json)
    return code


if __name__ == "__main__":
    sys.exit(main())
