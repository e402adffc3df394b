"""Command-line front end.

Exit codes: 0 success, 1 infeasible, 2 input error, 3 oracle guard exceeded.
Reports print exact rationals; the decimals next to them are for display only.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Optional

from . import io
from .combined import solve_combined_3approx
from .errors import GuardExceeded, Infeasible, InputError, NonUniformVelocities, NotAPath
from .fast import solve_fast
from .gadgets import (assignment_to_schedule, build_delivery_instance, default_embedding,
                      scale_for_combined, schedule_to_assignment)
from .generate import gen_random
from .model import Instance, ObjectiveReport, Schedule, as_rational, format_rational
from .oracle import oracle_combined, oracle_fast_subdivided, oracle_path_lex, oracle_uniform_lex
from .path import decompose, line_point, path_order, path_to_line, solve_path
from .schedule import check_epsilon, evaluate_schedule, validate_schedule, with_combined
from .uniform import solve_uniform

EXIT_OK, EXIT_INFEASIBLE, EXIT_INPUT, EXIT_GUARD = 0, 1, 2, 3
VARIANTS = ("fast", "lex", "combined")


@dataclass
class RunConfig:
    command: str
    variant: Optional[str] = None
    epsilon: Optional[Fraction] = None
    refine: Optional[int] = None
    inputs: List[str] = field(default_factory=list)
    output: Optional[str] = None
    seed: Optional[int] = None
    extra: dict = field(default_factory=dict)

    def check(self):
        if self.variant == "combined" and self.epsilon is None:
            raise InputError("variant combined needs --epsilon")
        if self.epsilon is not None:
            self.epsilon = check_epsilon(self.epsilon)
        if self.refine is not None and self.command != "oracle":
            raise InputError("--refine only applies to the oracle command")
        if self.command == "oracle" and self.variant in ("fast", "combined") and self.refine is None:
            raise InputError(f"oracle variant {self.variant} needs --refine D")


def _show(x: Fraction) -> str:
    return f"{format_rational(x)}  (~{float(x):.6f}, display only)"


def _print_report(report: ObjectiveReport, note: str = ""):
    out = sys.stdout
    if note:
        print(note, file=out)
    print(f"T = {_show(report.delivery_time)}", file=out)
    print(f"E = {_show(report.energy)}", file=out)
    if report.combined_value is not None:
        print(f"combined = {_show(report.combined_value)}", file=out)


def _emit(cfg: RunConfig, schedule: Schedule, report: ObjectiveReport, note: str = ""):
    _print_report(report, note=note)
    if cfg.output:
        io.save(cfg.output, io.schedule_to_json(schedule, report))


def _is_path(inst: Instance) -> bool:
    try:
        path_order(inst)
        return True
    except NotAPath:
        return False


def _uniform(inst: Instance) -> bool:
    return len({a.velocity for a in inst.agents}) == 1


def _lex_unsupported():
    return InputError("lexicographic (T, E) is NP-hard on general graphs with mixed velocities; "
                      "only path graphs or uniform velocities are supported "
                      "('oracle --variant lex' handles tiny path or uniform instances)")


def _solve(cfg: RunConfig) -> int:
    inst = io.instance_from_json(io.load(cfg.inputs[0]))
    note = ""
    if cfg.variant == "fast":
        schedule, report = solve_fast(inst)
    elif cfg.variant == "lex":
        if _is_path(inst):
            schedule, report = solve_path(inst)
        elif _uniform(inst):
            schedule, report = solve_uniform(inst)
        else:
            raise _lex_unsupported()
    else:
        schedule, report = solve_combined_3approx(inst, cfg.epsilon)
        note = "3-approximation (single cheapest agent)"
    if cfg.epsilon is not None and report.combined_value is None:
        report = with_combined(report, cfg.epsilon)
    _emit(cfg, schedule, report, note)
    return EXIT_OK


def _oracle(cfg: RunConfig) -> int:
    inst = io.instance_from_json(io.load(cfg.inputs[0]))
    if cfg.variant == "fast":
        res = oracle_fast_subdivided(inst, cfg.refine, with_schedule=True)
        handovers = res.handovers
    elif cfg.variant == "combined":
        res = oracle_combined(inst, cfg.epsilon, cfg.refine, with_schedule=True)
        handovers = res.handovers
    elif _is_path(inst):
        line = path_to_line(inst)
        if inst.source == inst.target:
            handovers = None
        else:
            _, _, legs = oracle_path_lex(line)
            handovers = [(aid, line_point(inst, line, x)) for aid, x in legs]
    elif _uniform(inst):
        handovers = oracle_uniform_lex(inst, with_schedule=True).handovers
    else:
        raise _lex_unsupported()
    if not handovers:
        print("source equals target: nothing to deliver")
        return EXIT_OK
    schedule, report = evaluate_schedule(inst, handovers)
    if cfg.epsilon is not None:
        report = with_combined(report, cfg.epsilon)
    note = f"oracle, refinement D = {cfg.refine}" if cfg.refine else "oracle"
    _emit(cfg, schedule, report, note)
    return EXIT_OK


def _validate(cfg: RunConfig) -> int:
    inst = io.instance_from_json(io.load(cfg.inputs[0]))
    schedule = io.schedule_from_json(io.load(cfg.inputs[1]))
    problems = validate_schedule(inst, schedule)
    for v in problems:
        print(f"violation: {v}")
    if problems:
        return EXIT_INPUT
    print("valid")
    return EXIT_OK


def _evaluate(cfg: RunConfig) -> int:
    inst = io.instance_from_json(io.load(cfg.inputs[0]))
    handovers = io.handovers_from_json(io.load(cfg.inputs[1]))
    schedule, report = evaluate_schedule(inst, handovers)
    if cfg.epsilon is not None:
        report = with_combined(report, cfg.epsilon)
    _emit(cfg, schedule, report)
    return EXIT_OK


def _formula(path: str):
    doc = io.load(path)
    if isinstance(doc, dict) and "inside" not in doc and doc.get("format") == io.FORMULA_FORMAT:
        return default_embedding(doc["variables"], doc["clauses"])
    return io.formula_from_json(doc)


def _parse_assignment(text: str, x: int):
    vals = []
    for tok in text.replace(",", " ").split():
        low = tok.lower()
        if low in ("1", "t", "true"):
            vals.append(True)
        elif low in ("0", "f", "false"):
            vals.append(False)
        else:
            raise InputError(f"bad truth value {tok!r}")
    if len(vals) != x:
        raise InputError(f"assignment needs {x} values, got {len(vals)}")
    return vals


def _gadget(cfg: RunConfig) -> int:
    action = cfg.extra["action"]
    gadget = build_delivery_instance(_formula(cfg.inputs[0]))
    if action == "build":
        doc = io.instance_to_json(gadget.instance)
        if cfg.output:
            io.save(cfg.output, doc)
        else:
            sys.stdout.write(io.dumps(doc))
        print(f"agents: {len(gadget.instance.agents)}, target T = {gadget.target_time}, "
              f"target E = {gadget.target_energy}", file=sys.stderr)
        return EXIT_OK
    if action == "schedule":
        vals = _parse_assignment(cfg.extra["assignment"], gadget.formula.x)
        schedule = assignment_to_schedule(gadget, vals)
        _, report = evaluate_schedule(gadget.instance, schedule.handovers())
        _emit(cfg, schedule, report)
        return EXIT_OK
    if action == "assignment":
        schedule = io.schedule_from_json(io.load(cfg.extra["schedule"]))
        vals = schedule_to_assignment(gadget, schedule)
        print(" ".join(f"u{j}={'true' if v else 'false'}" for j, v in enumerate(vals, 1)))
        return EXIT_OK
    scaled = scale_for_combined(gadget, cfg.epsilon)
    doc = io.instance_to_json(scaled)
    if cfg.output:
        io.save(cfg.output, doc)
    else:
        sys.stdout.write(io.dumps(doc))
    return EXIT_OK


def _gen(cfg: RunConfig) -> int:
    e = cfg.extra
    inst = gen_random(e["kind"], e["n"], e["k"], cfg.seed, uniform=e["uniform"])
    doc = io.instance_to_json(inst)
    if cfg.output:
        io.save(cfg.output, doc)
    else:
        sys.stdout.write(io.dumps(doc))
    return EXIT_OK


def _envelope(cfg: RunConfig) -> int:
    inst = io.instance_from_json(io.load(cfg.inputs[0]))
    line = path_to_line(inst)
    if inst.source == inst.target:
        print("source equals target: empty envelope")
        return EXIT_OK
    dec = decompose(line)
    print(f"t = {format_rational(line.t)}, T = {_show(dec.T)}")
    print("rays:")
    for r in dec.rays:
        tag = " (never carries)" if r.zero else ""
        print(f"  owner {r.owner}: slope {r.slope} from ({r.x0}, {r.y0}){tag}")
    print("envelope segments:")
    for sg in dec.envelope.segments:
        print(f"  {sg}")
    return EXIT_OK


COMMANDS = {"solve": _solve, "oracle": _oracle, "validate": _validate, "evaluate": _evaluate,
            "gadget": _gadget, "gen": _gen, "envelope": _envelope}


def run(cfg: RunConfig) -> int:
    try:
        cfg.check()
        return COMMANDS[cfg.command](cfg)
    except Infeasible as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except GuardExceeded as exc:
        print(f"guard exceeded: {exc}", file=sys.stderr)
        return EXIT_GUARD
    except (InputError, NonUniformVelocities) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def _rational(text: str) -> Fraction:
    try:
        return as_rational(text)
    except InputError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fastdelivery", description="Exact single-package delivery solvers.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="solve an instance file")
    p.add_argument("instance")
    p.add_argument("--variant", choices=VARIANTS, default="fast")
    p.add_argument("--epsilon", type=_rational)
    p.add_argument("-o", "--output", help="write the schedule file here")

    p = sub.add_parser("oracle", help="brute-force reference solver (tiny instances)")
    p.add_argument("instance")
    p.add_argument("--variant", choices=VARIANTS, default="fast")
    p.add_argument("--refine", type=int, metavar="D", help="edge subdivision factor")
    p.add_argument("--epsilon", type=_rational)
    p.add_argument("-o", "--output")

    p = sub.add_parser("validate", help="check a schedule file against an instance")
    p.add_argument("instance")
    p.add_argument("schedule")

    p = sub.add_parser("evaluate", help="recompute times and energy of a schedule's handovers")
    p.add_argument("instance")
    p.add_argument("schedule")
    p.add_argument("--epsilon", type=_rational)
    p.add_argument("-o", "--output")

    p = sub.add_parser("gadget", help="3SAT gadget instances")
    gsub = p.add_subparsers(dest="action", required=True)
    g = gsub.add_parser("build")
    g.add_argument("--formula", required=True)
    g.add_argument("-o", "--output")
    g = gsub.add_parser("schedule")
    g.add_argument("--formula", required=True)
    g.add_argument("--assignment", required=True, help='truth values in variable order, e.g. "1,0,1"')
    g.add_argument("-o", "--output")
    g = gsub.add_parser("assignment")
    g.add_argument("--formula", required=True)
    g.add_argument("--schedule", required=True)
    g = gsub.add_parser("scale")
    g.add_argument("--formula", required=True)
    g.add_argument("--epsilon", type=_rational, required=True)
    g.add_argument("-o", "--output")

    p = sub.add_parser("gen", help="seeded random instance")
    p.add_argument("kind", choices=("path", "graph"))
    p.add_argument("n", type=int)
    p.add_argument("k", type=int)
    p.add_argument("seed", type=int)
    p.add_argument("--uniform", action="store_true", help="all agents get velocity 1")
    p.add_argument("-o", "--output")

    p = sub.add_parser("envelope", help="inspect the path solver's envelope")
    esub = p.add_subparsers(dest="action", required=True)
    e = esub.add_parser("dump")
    e.add_argument("instance")
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(ns.command, getattr(ns, "variant", None), getattr(ns, "epsilon", None),
                    getattr(ns, "refine", None), output=getattr(ns, "output", None))
    if ns.command in ("solve", "oracle", "envelope"):
        cfg.inputs = [ns.instance]
    elif ns.command in ("validate", "evaluate"):
        cfg.inputs = [ns.instance, ns.schedule]
    elif ns.command == "gadget":
        cfg.inputs = [ns.formula]
        cfg.extra = {"action": ns.action, "assignment": getattr(ns, "assignment", None),
                     "schedule": getattr(ns, "schedule", None)}
    elif ns.command == "gen":
        cfg.seed = ns.seed
        cfg.extra = {"kind": ns.kind, "n": ns.n, "k": ns.k, "uniform": ns.uniform}
    return cfg


def main(argv: Optional[List[str]] = None) -> int:
    ns = build_parser().parse_args(argv)
    return run(config_from_args(ns))


if __name__ == "__main__":
    sys.exit(main())
