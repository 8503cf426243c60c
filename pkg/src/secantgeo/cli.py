"""Command-line front door.

Exit codes: 0 all requested verdicts computed (even when some fail),
1 input error, 2 certification failure, 3 internal error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .defects import clifford_relation_check
from .genericity import CertificationError, derive_stream
from .jets import ChartError, chart_at, second_fundamental_form
from .oracles import join_dimension, tangent_join_dimension
from .polymaps import polymap_base_point, polymap_from_json, polymap_to_json
from .quadrics import rank_profile
from .report import AnalyzeOptions, analyze, load_input, render
from .scalars import Scalar
from .zoo import build


class InputError(ValueError):
    pass


def _read_json(path: str | None):
    try:
        if path is None or path == "-":
            text = sys.stdin.read()
            where = "<stdin>"
        else:
            with open(path, "r", encoding="utf-8") as fh:
                text = fh.read()
            where = path
    except OSError as e:
        raise InputError("cannot read input: %s" % e) from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise InputError("%s: invalid JSON at line %d column %d: %s"
                         % (where, e.lineno, e.colno, e.msg)) from None


def _common_flags(p: argparse.ArgumentParser, order=True):
    p.add_argument("--input", default="-", help="input JSON file (default: stdin)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=5)
    if order:
        p.add_argument("--order", type=int, default=3, choices=(3, 4))


def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="secantgeo",
                                 description="dimension and defect analysis of secant and "
                                             "tangential varieties from exact chart data")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", help="full report for a poly_map or quadric_system")
    _common_flags(p)
    p.add_argument("--k", type=int, default=4, dest="k_max",
                   help="largest secant order in the sigma_k table (default 4)")
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("zoo", help="emit the chart of a named example as poly_map JSON")
    p.add_argument("family", choices=("segre", "veronese", "veronese_of", "severi",
                                      "grassmannian", "cone", "rank_variety"))
    p.add_argument("--k", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--d", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--l", type=int)
    p.add_argument("--algebra", choices=("R", "C", "H", "O"))
    p.add_argument("--of", help="inner entry for veronese_of, e.g. veronese:2,1")

    p = sub.add_parser("oracle", help="independent dimension oracles on a poly_map")
    p.add_argument("which", choices=("join", "tangent"))
    _common_flags(p, order=False)
    p.add_argument("--k", type=int, default=2, help="secant order for the join oracle")

    p = sub.add_parser("clifford", help="Clifford relation verdict for an input")
    _common_flags(p)
    return ap


def _cmd_analyze(args) -> int:
    obj = _read_json(args.input)
    options = AnalyzeOptions(seed=args.seed, trials=args.trials, order=args.order,
                             k_max=args.k_max)
    try:
        rep = analyze(obj, options)
    except (ValueError, ChartError) as e:
        raise InputError(str(e)) from None
    sys.stdout.write(render(rep, args.format))
    return 0


def _cmd_zoo(args) -> int:
    params = {k: getattr(args, k) for k in ("k", "r", "d", "m", "l", "algebra", "of")
              if getattr(args, k, None) is not None}
    try:
        entry = build(args.family, params)
    except ValueError as e:
        raise InputError(str(e)) from None
    out = polymap_to_json(entry.map, base_point=entry.base_point)
    sys.stdout.write(json.dumps(out, indent=2) + "\n")
    return 0


def _cmd_oracle(args) -> int:
    obj = _read_json(args.input)
    try:
        f = polymap_from_json(obj)
    except ValueError as e:
        raise InputError(str(e)) from None
    stream = derive_stream(args.seed, "cli", "oracle", args.which)
    if args.which == "join":
        if args.k < 1:
            raise InputError("--k must be >= 1")
        dim = join_dimension(f, args.k, stream, args.trials)
        result = {"kind": "oracle_result", "quantity": "join", "k": args.k,
                  "dimension": dim}
    else:
        dim = tangent_join_dimension(f, stream, args.trials)
        result = {"kind": "oracle_result", "quantity": "tangent", "dimension": dim}
    sys.stdout.write(json.dumps(result, indent=2) + "\n")
    return 0


def _cmd_clifford(args) -> int:
    obj = _read_json(args.input)
    try:
        kind, f, base, s = load_input(obj)
        if f is not None:
            if base is None:
                base = [Scalar(0)] * f.domain_dim
            s = second_fundamental_form(chart_at(f, base, args.order))
    except (ValueError, ChartError) as e:
        raise InputError(str(e)) from None
    profile = rank_profile(s, derive_stream(args.seed, "profile"), args.trials)
    cv = clifford_relation_check(s, profile, derive_stream(args.seed, "defects"),
                                 args.trials)
    result = {
        "kind": "clifford_verdict",
        "applicable": cv.applicable,
        "fiber_condition_ok": cv.fiber_condition_ok,
        "proportionality_ok": cv.proportionality_ok,
        "phi_v_is_identity": cv.phi_v_is_identity,
        "relation_holds": cv.relation_holds,
        "sign": cv.sign,
        "kernel_orthogonal_to_v": cv.kernel_orthogonal_to_v,
        "module_dim": cv.module_dim,
        "kernel_dim": cv.kernel_dim,
    }
    sys.stdout.write(json.dumps(result, indent=2) + "\n")
    return 0


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    handlers = {"analyze": _cmd_analyze, "zoo": _cmd_zoo, "oracle": _cmd_oracle,
                "clifford": _cmd_clifford}
    try:
        return handlers[args.command](args)
    except InputError as e:
        sys.stderr.write("error: %s\n" % e)
        return 1
    except CertificationError as e:
        sys.stderr.write("certification failure: %s\n" % e)
        return 2
    except Exception as e:  # pragma: no cover - defensive
        sys.stderr.write("internal error: %s: %s\n" % (type(e).__name__, e))
        return 3


if __name__ == "__main__":
    sys.exit(main())
