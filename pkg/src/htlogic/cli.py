"""Command-line interface.

Every capability is a subcommand over JSON or inline text.  Exit codes:
0 for valid/holds/passed, 1 when a refutation or violation was found
(with evidence printed), 2 for usage, schema, or resource errors.
"""
from __future__ import annotations

import argparse
import itertools
import json
import os
import sys
from typing import Optional, Sequence

from . import algebra as alg
from . import decide as dec
from . import duality as dua
from . import formula as fml
from . import frame as frm
from .errors import ResourceError, StructureError


def _load_json(path: str) -> dict:
    with open(path, "r", encoding="utf-8") as handle:
        return json.load(handle)


def _algebra_arg(spec: str) -> alg.FiniteAlgebra:
    if spec == "bt":
        return alg.make_bt()
    if spec == "b":
        return alg.make_b()
    return alg.algebra_from_dict(_load_json(spec))


def _frame_arg(spec: str, close: bool) -> frm.HTFrame:
    if spec == "k0":
        return frm.make_k0()
    frame = frm.frame_from_dict(_load_json(spec))
    if close:
        frame = frm.reflexive_transitive_closure(frame)
    return frame


def _model_arg(path: str, close: bool) -> frm.HTModel:
    data = _load_json(path)
    base = os.path.dirname(os.path.abspath(path))

    def loader(ref: str) -> frm.HTFrame:
        return frm.frame_from_dict(_load_json(os.path.join(base, ref)))

    model = frm.model_from_dict(data, frame_loader=loader)
    if close:
        model = frm.HTModel(frm.reflexive_transitive_closure(model.frame), model.m)
    return model


def _parse_assignment(specs: Sequence[str]) -> dict[str, str]:
    out: dict[str, str] = {}
    for spec in specs:
        for item in spec.split(","):
            item = item.strip()
            if not item:
                continue
            if "=" not in item:
                raise StructureError(f"bad assignment entry {item!r}; use var=element")
            var, _, value = item.partition("=")
            out[var.strip()] = value.strip()
    return out


def _emit(args, data: dict, text_lines: Sequence[str]) -> None:
    if getattr(args, "format", "text") == "json":
        print(json.dumps(data, indent=2))
    else:
        for line in text_lines:
            print(line)


def _report_lines(title: str, report: alg.AxiomReport) -> list[str]:
    if report.passed:
        return [f"{title}: passed"]
    lines = [f"{title}: FAILED"]
    for label, witness in report.violations:
        lines.append(f"  {label} @ ({', '.join(witness)})")
    return lines


# --- subcommand handlers ---

def _cmd_decide(args) -> int:
    assumptions = tuple(fml.parse_formula(text) for text in args.assume)
    conclusion = fml.parse_formula(args.formula)
    result = dec.decide_consequence(
        assumptions, conclusion, max_assignments=3 ** args.max_vars
    )
    word = "holds" if assumptions else "valid"
    if result.holds:
        _emit(args, result.to_dict(), [word])
        return 0
    counter = ", ".join(f"{v}={e}" for v, e in sorted(result.counter_assignment.items()))
    lines = [
        "refuted",
        f"counter-assignment: {counter}",
        "countermodel: " + json.dumps(frm.model_to_dict(result.countermodel)),
    ]
    _emit(args, result.to_dict(), lines)
    return 1


def _cmd_check_algebra(args) -> int:
    a = _algebra_arg(args.file)
    reports: dict[str, Optional[alg.AxiomReport]] = {}
    reports["t_structure"] = alg.check_t_structure(a) if a.c is not None else None
    reports["ht_algebra"] = (
        alg.check_ht_algebra(a) if a.imp is not None and a.neg is not None else None
    )
    if all(r is None for r in reports.values()):
        raise StructureError("algebra has neither c nor imp/neg tables; nothing to check")
    try:
        reports["derived"] = alg.check_derived_properties(a)
    except StructureError:
        reports["derived"] = None
    lines: list[str] = []
    for title, report in reports.items():
        if report is None:
            lines.append(f"{title}: skipped")
        else:
            lines.extend(_report_lines(title, report))
    data = {
        title: (report.to_dict() if report is not None else None)
        for title, report in reports.items()
    }
    _emit(args, data, lines)
    ran = [r for r in reports.values() if r is not None]
    return 0 if all(r.passed for r in ran) else 1


def _cmd_check_frame(args) -> int:
    k = _frame_arg(args.file, args.close)
    report = frm.check_frame(k)
    lines = _report_lines("frame", report)
    lines.append(f"fixed-point: {str(report.details['fixed_point']).lower()}")
    _emit(args, report.to_dict(), lines)
    return 0 if report.passed else 1


def _cmd_check_model(args) -> int:
    model = _model_arg(args.file, args.close)
    frame_report = frm.check_frame(model.frame)
    model_report = frm.check_model(model)
    lines = _report_lines("frame", frame_report) + _report_lines("model", model_report)
    data = {"frame": frame_report.to_dict(), "model": model_report.to_dict()}
    _emit(args, data, lines)
    return 0 if frame_report.passed and model_report.passed else 1


def _cmd_eval(args) -> int:
    a = _algebra_arg(args.algebra)
    f = fml.parse_formula(args.formula)
    v = _parse_assignment(args.assign)
    value = alg.eval_formula(f, v, a)
    _emit(
        args,
        {"formula": fml.render_formula(f), "assignment": v, "value": value},
        [value],
    )
    return 0


def _cmd_sat(args) -> int:
    model = _model_arg(args.model, args.close)
    f = fml.parse_formula(args.formula)
    if args.state not in model.frame.states:
        raise StructureError(f"unknown state {args.state!r}")
    result = frm.sat(model, args.state, f)
    _emit(
        args,
        {"formula": fml.render_formula(f), "state": args.state, "sat": result},
        [str(result).lower()],
    )
    return 0 if result else 1


def _cmd_dualize(args) -> int:
    if args.to_frame is not None:
        a = _algebra_arg(args.to_frame)
        frame = dua.canonical_frame(a)
        print(json.dumps(frm.frame_to_dict(frame), indent=2))
    else:
        k = _frame_arg(args.to_algebra, args.close)
        a = dua.complex_algebra(k)
        print(json.dumps(alg.algebra_to_dict(a), indent=2))
    return 0


def _cmd_gen(args) -> int:
    if args.which == "bt":
        print(json.dumps(alg.algebra_to_dict(alg.make_bt()), indent=2))
    elif args.which == "b":
        print(json.dumps(alg.algebra_to_dict(alg.make_b()), indent=2))
    else:
        print(json.dumps(frm.frame_to_dict(frm.make_k0()), indent=2))
    return 0


def _cmd_harness(args) -> int:
    var_names = ["p", "q", "r", "s"][: args.vars]
    corpus = list(
        itertools.islice(fml.enumerate_formulas(args.depth, var_names), args.limit)
    )
    report = dec.equivalence_harness(
        corpus,
        max_frame_size=args.frames,
        mod_iso=args.mod_iso,
        max_assignments=3 ** args.max_vars,
    )
    lines = [
        f"checked {len(report.entries)} formulas: "
        f"{report.valid_count} valid, {len(report.entries) - report.valid_count} refuted",
        f"discrepancies: {len(report.discrepancies)}",
    ]
    lines.extend(f"  {d}" for d in report.discrepancies)
    _emit(args, report.to_dict(), lines)
    return 0 if report.passed else 1


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="htlogic",
        description="Two-agent propositional logic: decision procedure, "
        "algebra/frame validation, and duality constructions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["text", "json"], default="text")

    p = sub.add_parser("decide", help="decide validity or finite consequence")
    p.add_argument("formula")
    p.add_argument("--assume", action="append", default=[], metavar="FORMULA")
    p.add_argument("--max-vars", type=int, default=12)
    add_format(p)
    p.set_defaults(func=_cmd_decide)

    p = sub.add_parser("check-algebra", help="validate algebra axioms from JSON")
    p.add_argument("file")
    add_format(p)
    p.set_defaults(func=_cmd_check_algebra)

    p = sub.add_parser("check-frame", help="validate frame axioms from JSON")
    p.add_argument("file")
    p.add_argument("--close", action="store_true", help="take the reflexive-transitive closure of R first")
    add_format(p)
    p.set_defaults(func=_cmd_check_frame)

    p = sub.add_parser("check-model", help="validate a model from JSON")
    p.add_argument("file")
    p.add_argument("--close", action="store_true")
    add_format(p)
    p.set_defaults(func=_cmd_check_model)

    p = sub.add_parser("eval", help="evaluate a formula in an algebra")
    p.add_argument("formula")
    p.add_argument("--algebra", required=True, metavar="FILE|bt|b")
    p.add_argument("--assign", action="append", default=[], metavar="p=mid,q=top")
    add_format(p)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("sat", help="check satisfaction at a state of a model")
    p.add_argument("formula")
    p.add_argument("--model", required=True, metavar="FILE")
    p.add_argument("--state", required=True)
    p.add_argument("--close", action="store_true")
    add_format(p)
    p.set_defaults(func=_cmd_sat)

    p = sub.add_parser("dualize", help="convert between algebras and frames")
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--to-frame", metavar="FILE|bt|b")
    group.add_argument("--to-algebra", metavar="FILE|k0")
    p.add_argument("--close", action="store_true")
    add_format(p)
    p.set_defaults(func=_cmd_dualize)

    p = sub.add_parser("gen", help="emit a built-in structure as JSON")
    p.add_argument("which", choices=["bt", "b", "k0"])
    p.set_defaults(func=_cmd_gen)

    p = sub.add_parser("harness", help="cross-check the two semantics on a corpus")
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--vars", type=int, default=1, choices=[1, 2, 3, 4])
    p.add_argument("--frames", type=int, default=2)
    p.add_argument("--limit", type=int, default=1000)
    p.add_argument("--max-vars", type=int, default=12)
    p.add_argument("--mod-iso", action="store_true")
    add_format(p)
    p.set_defaults(func=_cmd_harness)

    return parser


def run(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (StructureError, ResourceError, fml.ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())
