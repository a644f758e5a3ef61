"""Command line entry point.

Subcommands: ``check``, ``run``, ``trace``, ``data``, ``enumerate``,
``logic``, ``gray2sd``.  All defaults can be overridden by environment
variables ``AMB_FUEL``, ``AMB_DEPTH``, ``AMB_SEED``, and ``AMB_BUDGET``.
Every nondeterministic run echoes its schedule and seed; identical flags
and seed give byte-identical output under the simulated scheduler.

Exit codes: 0 success, 1 domain error (type rejection, fuel exhaustion
under ``--strict``), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import domain as D
from . import gray as G
from . import opsem as O
from . import parser as P
from . import terms as T
from . import typecheck as TC
from . import types as Y
from .errors import AmbError, FuelExhaustedError
from .logic import analyses as LA
from .logic import parser as LP
from .logic import realizability as LR
from .logic import syntax as LS

DEFAULT_FUEL = 100000
DEFAULT_DEPTH = 64


def _env_int(name, default):
    raw = os.environ.get(name)
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError:
        raise SystemExit("%s must be an integer, got %r" % (name, raw))


def _build_parser():
    ap = argparse.ArgumentParser(
        prog="amb",
        description="Interpreter and analyses for a small language with a "
                    "globally angelic choice constructor.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_run_flags(p, with_trace=True):
        p.add_argument("--fuel", type=int,
                       default=_env_int("AMB_FUEL", DEFAULT_FUEL))
        p.add_argument("--depth", type=int,
                       default=_env_int("AMB_DEPTH", DEFAULT_DEPTH))
        group = p.add_mutually_exclusive_group()
        group.add_argument("--seed", type=int,
                           default=None, help="seeded fair schedule")
        group.add_argument("--schedule", choices=["rr"], default=None,
                           help="round-robin schedule (the default)")
        if with_trace:
            p.add_argument("--trace", metavar="PATH", default=None,
                           help="write the step trace to PATH")
        p.add_argument("--strict", action="store_true",
                       help="exit 1 when the run does not converge in fuel")
        p.add_argument("--parallel", action="store_true",
                       help="use the thread-racing backend (not reproducible)")
        p.add_argument("--json", action="store_true")

    p = sub.add_parser("check", help="type-check every definition in a file")
    p.add_argument("file")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("run", help="run main under a fair schedule")
    p.add_argument("file")
    add_run_flags(p)

    p = sub.add_parser("trace", help="run main and print the step trace")
    p.add_argument("file")
    add_run_flags(p, with_trace=False)
    p.add_argument("--width", type=int, default=120,
                   help="cap printed terms at this width")

    p = sub.add_parser("data", help="print the data set of main's denotation")
    p.add_argument("file")
    p.add_argument("--fuel", type=int, default=_env_int("AMB_FUEL", 10000))
    p.add_argument("--depth", type=int, default=_env_int("AMB_DEPTH", DEFAULT_DEPTH))
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("enumerate",
                       help="exhaustively enumerate reachable data parts")
    p.add_argument("file")
    p.add_argument("--steps", type=int, default=20)
    p.add_argument("--budget", type=int, default=_env_int("AMB_BUDGET", 20000))
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("logic", help="analyses over a formula file")
    p.add_argument("file")
    p.add_argument("--show", required=True,
                   choices=["harrop", "strict", "admissible", "tau", "minus",
                            "realize"])
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("gray2sd",
                       help="convert a rational's binary-digit code to "
                            "signed digits")
    p.add_argument("--x", required=True, metavar="P/Q")
    p.add_argument("--digits", type=int, default=16)
    p.add_argument("--seed", type=int, default=_env_int("AMB_SEED", 0))
    p.add_argument("--delays", default="",
                   help="comma list of per-digit step delays")
    p.add_argument("--bot-at", type=int, default=None,
                   help="force this digit undefined")
    p.add_argument("--fuel", type=int, default=_env_int("AMB_FUEL", 50000))
    p.add_argument("--json", action="store_true")
    return ap


def _load_main(path):
    with open(path, "r", encoding="utf-8") as fh:
        defs = P.parse_file(fh.read())
    inlined = P.inline_definitions(defs)
    if "main" not in inlined:
        raise AmbError("file has no main definition")
    return defs, inlined["main"].body


def _schedule_from(args):
    if getattr(args, "seed", None) is not None:
        return O.Schedule.seeded(args.seed), "seeded seed=%d" % args.seed
    return O.Schedule.round_robin(), "round-robin"


def _emit(args, text_lines, payload):
    if getattr(args, "json", False):
        print(json.dumps(payload, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def cmd_check(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        defs = P.parse_file(fh.read())
    rows = TC.check_definitions(defs)
    lines = []
    payload = []
    ok = True
    for name, ty, report in rows:
        if report is None:
            verdict = "untyped"
        elif report.accepted:
            verdict = "accepted"
        else:
            verdict = "rejected: %r" % report
            ok = False
        tystr = Y.type_to_source(ty) if ty is not None else "-"
        lines.append("%-16s %-40s %s" % (name, tystr, verdict))
        payload.append({"name": name, "type": tystr, "verdict": verdict})
    _emit(args, lines, {"command": "check", "defs": payload, "ok": ok})
    return 0 if ok else 1


def cmd_run(args, want_trace_lines=False):
    _defs, main = _load_main(args.file)
    if args.parallel:
        print("warning: thread-racing backend; output is not reproducible",
              file=sys.stderr)
        data = O.run_extract_parallel(main, args.fuel, args.depth)
        _emit(args, [D.data_to_source(data)],
              {"command": "run", "backend": "parallel",
               "data": D.data_to_source(data)})
        return 0
    sched, sched_desc = _schedule_from(args)
    data, trace = O.run_extract(main, sched, args.fuel, args.depth)
    header = "schedule: %s  fuel: %d  depth: %d" % (sched_desc, args.fuel,
                                                    args.depth)
    lines = [header]
    if want_trace_lines:
        for i, step in enumerate(trace.steps):
            lines.append("%-6d %-7s %-12s %s"
                         % (i, step.tag, _path_str(step.path),
                            T.to_source(step.program, width=args.width)))
    lines.append(D.data_to_source(data))
    payload = {"command": "trace" if want_trace_lines else "run",
               "schedule": sched_desc, "fuel": args.fuel, "depth": args.depth,
               "steps": len(trace.steps),
               "converged": trace.converged,
               "data": D.data_to_source(data)}
    if getattr(args, "trace", None):
        with open(args.trace, "w", encoding="utf-8") as fh:
            for i, step in enumerate(trace.steps):
                fh.write("%d\t%s\t%s\t%s\n"
                         % (i, step.tag, _path_str(step.path),
                            T.to_source(step.program, width=200)))
    _emit(args, lines, payload)
    if args.strict and not trace.converged:
        return 1
    return 0


def _path_str(path):
    return "(" + ",".join(str(i) for i in path) + ")"


def cmd_data(args):
    _defs, main = _load_main(args.file)
    approx = D.denote_fuel(main, args.fuel, args.depth)
    elems = sorted(D.data_to_source(e) for e in D.data_set(approx, args.depth))
    _emit(args, elems, {"command": "data", "fuel": args.fuel,
                        "depth": args.depth, "elements": elems})
    return 0


def cmd_enumerate(args):
    _defs, main = _load_main(args.file)
    found = O.enumerate_schedules(main, args.steps, node_budget=args.budget)
    elems = sorted(D.data_to_source(e) for e in found)
    _emit(args, elems, {"command": "enumerate", "steps": args.steps,
                        "elements": elems})
    return 0


def cmd_logic(args):
    with open(args.file, "r", encoding="utf-8") as fh:
        items = LP.parse_formula_file(fh.read())
    lines = []
    payload = []
    for name, value in items:
        if args.show == "harrop":
            out = str(LA.is_harrop(value)).lower()
        elif args.show == "strict":
            out = str(LA.is_strict(value)).lower()
        elif args.show == "admissible":
            out = str(LA.is_admissible(value)).lower()
        elif args.show == "tau":
            out = Y.type_to_source(LA.tau(value))
        elif args.show == "minus":
            erased = LA.erase_minus(value)
            out = (LS.formula_to_source(erased)
                   if isinstance(erased, LS.Formula)
                   else LS.pred_to_source(erased))
        else:
            formula = value
            if isinstance(value, LS.Predicate):
                vars_ = getattr(value, "vars", None)
                if isinstance(value, LS.Compr):
                    formula = LS.apply_pred(value, tuple(LS.RVar(v)
                                                         for v in value.vars))
                else:
                    formula = LS.PredApp(value, (LS.RVar("x"),))
            out = repr(LR.realizability_translate(formula))
        lines.append("%-10s %s" % (name, out))
        payload.append({"name": name, "result": out})
    _emit(args, lines, {"command": "logic", "show": args.show,
                        "items": payload})
    return 0


def cmd_gray2sd(args):
    try:
        num, _, den = args.x.partition("/")
        x = Fraction(int(num), int(den) if den else 1)
    except (ValueError, ZeroDivisionError):
        raise SystemExit("--x must be a fraction P/Q")
    delays = []
    if args.delays:
        delays = [int(s) for s in args.delays.split(",")]
    if args.bot_at is not None:
        while len(delays) <= args.bot_at:
            delays.append(1)
        delays[args.bot_at] = 0
    sched = O.Schedule.seeded(args.seed)
    header = "x: %s  digits: %d  seed: %d  delays: %s" % (
        x, args.digits, args.seed, delays or "-")
    try:
        digits = G.gtos_run(x, delays, sched, args.digits, fuel=args.fuel)
        exhausted = False
    except FuelExhaustedError as e:
        digits = e.partial
        exhausted = True
    lines = [header, G.format_digits(digits)]
    if exhausted:
        lines.append("warning: fuel exhausted after %d digits" % len(digits))
    _emit(args, lines, {"command": "gray2sd", "x": str(x), "seed": args.seed,
                        "digits": digits, "exhausted": exhausted})
    return 1 if exhausted else 0


def main(argv=None):
    ap = _build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code not in (0, None) else 0
    try:
        if args.command == "check":
            return cmd_check(args)
        if args.command == "run":
            return cmd_run(args)
        if args.command == "trace":
            args.trace = None
            return cmd_run(args, want_trace_lines=True)
        if args.command == "data":
            return cmd_data(args)
        if args.command == "enumerate":
            return cmd_enumerate(args)
        if args.command == "logic":
            return cmd_logic(args)
        if args.command == "gray2sd":
            return cmd_gray2sd(args)
    except AmbError as e:
        print("error: %s" % e, file=sys.stderr)
        return 1
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    return 2


if __name__ == "__main__":
    sys.exit(main())
