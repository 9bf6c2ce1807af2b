"""Command-line front end.

Exit codes: 0 success, 1 protocol-level failure, 2 input or parameter
error, 3 I/O error, 4 dimension cap exceeded. Payloads go to stdout (or
``--out``), diagnostics to stderr.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys

import numpy as np

from . import statefile, states
from .criteria import classify
from .densmat import DEFAULT_TOL, BipartiteState
from .distill import recurrence_distill
from .errors import CapacityError, NotDistillableByProtocol, ParameterError, ValidationError
from .search import DEFAULT_BUDGET, search_2x2_projection

EXIT_OK = 0
EXIT_PROTOCOL = 1
EXIT_INPUT = 2
EXIT_IO = 3
EXIT_CAPACITY = 4

SCAN_FAMILIES = ("horodecki3x3", "werner", "isotropic")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _need(args, name):
    value = getattr(args, name)
    if value is None:
        raise ParameterError(f"--{name.replace('_', '-')} is required for family {args.family}")
    return value


def build_state(args) -> BipartiteState:
    fam = args.family
    if fam == "singlet":
        return states.singlet()
    if fam == "werner":
        return states.werner(_need(args, "f"))
    if fam == "isotropic":
        return states.isotropic(_need(args, "d"), _need(args, "f"))
    if fam == "horodecki3x3":
        return states.horodecki3x3(_need(args, "a"))
    if fam == "random_separable":
        return states.random_separable(_need(args, "da"), _need(args, "db"), _need(args, "k"), args.seed)
    if fam == "random_density":
        da, db = _need(args, "da"), _need(args, "db")
        return BipartiteState(states.random_density(da * db, args.seed), da, db)
    raise ParameterError(f"unknown family {fam!r}")


def _emit(text: str, out_path=None):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"


def cmd_generate(args) -> int:
    _emit(statefile.dumps(build_state(args)), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    s = statefile.read(args.input)
    _emit(_json(classify(s, ppt_tol=args.tol).to_dict()))
    return EXIT_OK


def cmd_distill(args) -> int:
    s = statefile.read(args.input)
    if s.dims != (2, 2):
        raise ValidationError(f"distill needs a 2x2 state, got dims {s.dims}")
    try:
        records = recurrence_distill(s, args.target, args.max_rounds, args.restarts, args.seed)
    except NotDistillableByProtocol as exc:
        _emit(_json({"success": False, "reason": str(exc), "target": args.target, "trajectory": []}))
        print(f"distillation failed: {exc}", file=sys.stderr)
        return EXIT_PROTOCOL
    ok = records[-1].reached_target
    payload = {"success": ok, "target": args.target, "trajectory": [r.to_dict() for r in records]}
    if not ok:
        payload["reason"] = "target not reached within max rounds"
        print(f"distillation failed: {payload['reason']}", file=sys.stderr)
    _emit(_json(payload))
    return EXIT_OK if ok else EXIT_PROTOCOL


def cmd_search(args) -> int:
    s = statefile.read(args.input)
    res = search_2x2_projection(s, args.copies, args.restarts, args.seed, budget=args.budget)
    _emit(_json(res.to_dict()))
    return EXIT_OK


def parse_grid(spec: str) -> list[float]:
    """``start:stop:step`` (inclusive) or a comma-separated list of values."""
    spec = spec.strip()
    if not spec:
        return []
    try:
        if ":" in spec:
            start, stop, step = (float(x) for x in spec.split(":"))
            if not step > 0:
                raise ParameterError(f"grid step must be positive, got {step}")
            if stop < start:
                return []
            n = int(np.floor((stop - start) / step + 1e-9)) + 1
            return [round(start + i * step, 12) for i in range(n)]
        return [float(x) for x in spec.split(",") if x.strip()]
    except ValueError:
        raise ParameterError(f"cannot parse grid {spec!r}") from None


def _scan_state(family: str, x: float, d) -> BipartiteState:
    if family == "horodecki3x3":
        return states.horodecki3x3(x)
    if family == "werner":
        return states.werner(x)
    if d is None:
        raise ParameterError("--d is required for family isotropic")
    return states.isotropic(d, x)


def cmd_scan_family(args) -> int:
    grid = parse_grid(args.grid)
    if not grid:
        raise ParameterError("parameter grid is empty")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["param", "min_pt_eigenvalue", "negativity", "realignment_norm", "label"])
    for x in grid:
        rep = classify(_scan_state(args.family, x, args.d), ppt_tol=args.tol)
        w.writerow([repr(x), repr(rep.min_pt_eigenvalue), repr(rep.negativity),
                    repr(rep.realignment_norm), rep.label.value])
    _emit(buf.getvalue(), args.out)
    return EXIT_OK


def make_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="boundent", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("generate", help="write a state file for a named family")
    g.add_argument("family", choices=states.FAMILIES)
    g.add_argument("--f", type=float, help="singlet / maximally-entangled fidelity")
    g.add_argument("--a", type=float, help="parameter of the 3x3 PPT family, 0 < a < 1")
    g.add_argument("--d", type=int, help="local dimension (isotropic)")
    g.add_argument("--da", type=int, help="dimension of subsystem A (random families)")
    g.add_argument("--db", type=int, help="dimension of subsystem B (random families)")
    g.add_argument("--k", type=int, help="number of product terms (random_separable)")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", help="output path (default: stdout)")
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("classify", help="PT spectrum, negativity, realignment and label as JSON")
    c.add_argument("input")
    c.add_argument("--tol", type=float, default=DEFAULT_TOL)
    c.set_defaults(func=cmd_classify)

    d = sub.add_parser("distill", help="recurrence distillation trajectory for a 2x2 state")
    d.add_argument("input")
    d.add_argument("--target", type=float, default=0.99)
    d.add_argument("--max-rounds", type=int, default=50)
    d.add_argument("--restarts", type=int, default=16, help="filter-search restarts")
    d.add_argument("--seed", type=int, default=0)
    d.set_defaults(func=cmd_distill)

    s = sub.add_parser("search", help="search 2x2 projections of N copies for NPT blocks")
    s.add_argument("input")
    s.add_argument("--copies", type=int, default=1)
    s.add_argument("--restarts", type=int, default=16)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="evaluations per restart")
    s.set_defaults(func=cmd_search)

    sc = sub.add_parser("scan-family", help="classify a family over a parameter grid, CSV out")
    sc.add_argument("family", choices=SCAN_FAMILIES)
    sc.add_argument("--grid", required=True, help="start:stop:step or v1,v2,...")
    sc.add_argument("--d", type=int, help="local dimension (isotropic)")
    sc.add_argument("--tol", type=float, default=DEFAULT_TOL)
    sc.add_argument("--out", help="output path (default: stdout)")
    sc.set_defaults(func=cmd_scan_family)
    return p


def main(argv=None) -> int:
    parser = make_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"boundent: usage error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except CapacityError as exc:
        print(f"boundent: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except (ParameterError, ValidationError, ValueError) as exc:
        print(f"boundent: invalid input: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"boundent: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
