"""Command-line entry point.

    fdnorm closure --set A1 schema.fd
    fdnorm keys schema.fd
    fdnorm classify [--decomposition d.dec] schema.fd
    fdnorm decompose --target {2nf,3nf,precise2nf} schema.fd
    fdnorm check --decomposition d.dec schema.fd
    fdnorm diagnose schema.fd

Exit codes: 0 clean, 1 violation or impossibility, 2 input error, 3 size limit.
Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import contextlib
import dataclasses
import io
import json
import sys
from pathlib import Path

from . import __version__
from .closure import attribute_closure, candidate_keys
from .config import size_limits
from .decomposition import analyze_case, decompose_2nf, plan_precise_2nf, synthesize_3nf
from .diagnosis import theorem1_verdict
from .dsl import parse_decomposition, parse_schema, render_decomposition
from .errors import AssumptionViolated, CyclicCover, FDNormError, SizeLimitExceeded
from .model import Decomposition, Schema, attrset, make_decomposition, ordered, render_attrs, sorted_fds
from .normal_forms import NormalForm, classify_database
from .verification import binary_lossless, chase_lossless, find_spurious_instance, preservation_check

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_LIMIT = 0, 1, 2, 3


# -- report -----------------------------------------------------------------


def _names(s) -> list[str]:
    return ordered(s)


def _fd(f) -> str:
    return f"{' '.join(ordered(f.lhs))} -> {' '.join(ordered(f.rhs))}"


@dataclasses.dataclass
class AnalysisReport:
    """One machine-readable document per run. Every field is always present;
    sections a command does not compute are null."""

    command: str
    seed: int
    schema: dict
    candidate_keys: list
    closure: dict | None = None
    classification: dict | None = None
    case_analysis: dict | None = None
    decomposition: dict | None = None
    verification: dict | None = None
    diagnosis: dict | None = None
    plan: dict | None = None
    exit_code: int = 0
    tool: str = "fdnorm"
    version: str = __version__

    def to_json(self) -> str:
        return json.dumps(dataclasses.asdict(self), indent=2, sort_keys=True, ensure_ascii=False)


def _schema_section(schema: Schema) -> dict:
    return {"attributes": _names(schema.universe), "fds": [_fd(f) for f in sorted_fds(schema.fds)]}


def _decomposition_section(d: Decomposition) -> dict:
    return {
        "tables": [
            {
                "name": r.name,
                "attributes": _names(r.attrs),
                "keys": [_names(k) for k in r.candidate_keys],
                "provenance": None if tag is None else str(tag),
            }
            for r, tag in zip(d.relations, d.provenance)
        ]
    }


def _classification_section(label) -> dict:
    return {
        "level": str(label.level),
        "lossless": label.lossless,
        "preserving": label.preserving,
        "lost": [_fd(f) for f in label.lost],
        "tables": [
            {"name": name, "level": str(level), "witnesses": [str(w) for w in label.table_witnesses.get(name, ())]}
            for name, level in label.table_levels.items()
        ],
    }


def _verification_section(d: Decomposition, schema: Schema, seed: int) -> dict:
    pres = preservation_check(d, schema)
    lossless = chase_lossless(d, schema)
    out = {
        "lossless_chase": lossless,
        "lossless_binary": binary_lossless(d.relations[0], d.relations[1], schema.fds) if len(d) == 2 else None,
        "preserved": pres.preserved,
        "lost": [_fd(f) for f in pres.lost],
        "instance": None,
    }
    if not lossless:
        try:
            found = find_spurious_instance(schema, d, n_keys=3, seeds=range(seed, seed + 20))
        except CyclicCover:
            found = None
        if found:
            s, inst, join = found
            out["instance"] = {
                "seed": s,
                "tuples": len(inst),
                "join_size": join.join_size,
                "spurious_count": join.spurious_count,
                "lossless_observed": join.lossless_observed,
            }
    return out


def _pair_section(pair) -> dict | None:
    if pair is None:
        return None
    return {
        "chain_a": [_names(n) for n in pair.chain_a.nodes],
        "chain_b": [_names(n) for n in pair.chain_b.nodes],
        "meeting": _fd(pair.meeting),
        "gamma": _names(pair.gamma),
    }


# -- commands ---------------------------------------------------------------


def _cmd_closure(args, schema, report, out):
    x = attrset(args.set)
    unknown = x - schema.universe
    if unknown:
        raise InputError("unknown attribute(s) in --set: " + ", ".join(ordered(unknown)))
    c = attribute_closure(x, schema.fds)
    report.closure = {"of": _names(x), "closure": _names(c)}
    print(f"{render_attrs(x)}+ = {render_attrs(c, braces=True)}", file=out)
    return EXIT_OK


def _cmd_keys(args, schema, report, out):
    for k in report.candidate_keys:
        print(render_attrs(k, braces=True), file=out)
    return EXIT_OK


def _print_label(label, out):
    for name, level in label.table_levels.items():
        print(f"{name}: {level}", file=out)
        for w in label.table_witnesses.get(name, ()):
            print(f"    {w}", file=out)
    print(f"lossless: {'yes' if label.lossless else 'no'}", file=out)
    print(f"dependency preserving: {'yes' if label.preserving else 'no'}", file=out)
    for f in label.lost:
        print(f"    {f} lost", file=out)
    print(f"database: {label.level}", file=out)


def _cmd_classify(args, schema, report, out):
    if args.decomposition:
        d = parse_decomposition(Path(args.decomposition).read_text(encoding="utf-8"), schema)
    else:
        d = make_decomposition(schema, {"R": schema.universe})
    label = classify_database(d, schema)
    report.classification = _classification_section(label)
    report.decomposition = _decomposition_section(d)
    _print_label(label, out)
    violated = label.level < NormalForm.NF3 or not label.lossless or not label.preserving
    return EXIT_VIOLATION if violated else EXIT_OK


def _cmd_check(args, schema, report, out):
    d = parse_decomposition(Path(args.decomposition).read_text(encoding="utf-8"), schema)
    v = _verification_section(d, schema, args.seed)
    report.decomposition = _decomposition_section(d)
    report.verification = v
    print(f"lossless (chase): {'yes' if v['lossless_chase'] else 'no'}", file=out)
    if v["lossless_binary"] is not None:
        print(f"lossless (binary rule): {'yes' if v['lossless_binary'] else 'no'}", file=out)
    print(f"dependency preserving: {'yes' if v['preserved'] else 'no'}", file=out)
    for f in preservation_check(d, schema).lost:
        print(f"    {f} lost", file=out)
    if v["instance"]:
        i = v["instance"]
        print(
            f"instance (seed {i['seed']}): {i['tuples']} tuples join back to {i['join_size']}, "
            f"{i['spurious_count']} spurious",
            file=out,
        )
    return EXIT_OK if v["lossless_chase"] and v["preserved"] else EXIT_VIOLATION


def _case_section(case) -> dict:
    return {
        "key": _names(case.key),
        "alpha1": _names(case.alpha1),
        "alpha2": _names(case.alpha2),
        "overlap": _names(case.overlap),
        "residual": _names(case.residual),
        "raw_case": case.raw_case,
        "merged_case": case.merged_case,
    }


def _cmd_decompose(args, schema, report, out):
    target = args.target
    if target == "3nf":
        d = synthesize_3nf(schema)
    elif target == "2nf":
        case = analyze_case(schema)
        report.case_analysis = _case_section(case)
        d = decompose_2nf(schema, case)
    else:
        outcome = plan_precise_2nf(schema)
        report.case_analysis = _case_section(outcome.case)
        report.plan = {
            "impossible": outcome.impossible,
            "narrative": list(outcome.narrative),
            "witness": _pair_section(outcome.impossibility_witness),
            "placements": [
                {
                    "name": p.name,
                    "tables": _decomposition_section(p.decomposition)["tables"],
                    "lost": [_fd(f) for f in p.lost],
                    "transitivity_split": p.transitivity_split,
                    "reason": p.reason,
                }
                for p in outcome.placements
            ],
        }
        for line in outcome.narrative:
            print(f"# {line}", file=out)
        if outcome.impossible:
            print("precisely-2NF decomposition impossible", file=out)
            return EXIT_VIOLATION
        d = outcome.decomposition

    report.decomposition = _decomposition_section(d)
    v = _verification_section(d, schema, args.seed)
    report.verification = v
    out.write(render_decomposition(d))
    print(f"# lossless: {'yes' if v['lossless_chase'] else 'no'}; preserving: {'yes' if v['preserved'] else 'no'}", file=out)
    for f in v["lost"]:
        print(f"# lost: {f}", file=out)
    return EXIT_OK if v["lossless_chase"] and v["preserved"] else EXIT_VIOLATION


def _cmd_diagnose(args, schema, report, out):
    verdict = theorem1_verdict(schema)
    check = verdict.assumption_check
    report.diagnosis = {
        "impossible": verdict.impossible,
        "assumptions": {
            "single_table": check.single_table,
            "key_count": check.key_count,
            "key": None if check.key is None else _names(check.key),
        },
        "witness": _pair_section(verdict.witness),
        "pair_count": len(verdict.pairs),
        "branches": list(verdict.branches),
    }
    if verdict.impossible is None:
        print(f"assumption failed: {check.key_count} candidate keys (exactly one required)", file=out)
        return EXIT_INPUT
    if not verdict.impossible:
        print("no partially overlapping chain pair found", file=out)
        with contextlib.suppress(AssumptionViolated):
            outcome = plan_precise_2nf(schema)
            report.plan = {"impossible": outcome.impossible, "narrative": list(outcome.narrative)}
            print(f"precisely-2NF decomposition found: {'no' if outcome.impossible else 'yes'}", file=out)
        return EXIT_OK
    w = verdict.witness
    print("impossible: the schema cannot be decomposed precisely into 2NF", file=out)
    print(f"chain A: {w.chain_a}", file=out)
    print(f"chain B: {w.chain_b}", file=out)
    print(f"meeting point: {w.meeting}", file=out)
    for b in verdict.branches:
        print(f"  - {b}", file=out)
    return EXIT_VIOLATION


COMMANDS = {
    "closure": _cmd_closure,
    "keys": _cmd_keys,
    "classify": _cmd_classify,
    "decompose": _cmd_decompose,
    "check": _cmd_check,
    "diagnose": _cmd_diagnose,
}


class InputError(Exception):
    pass


def _global_options(parser: argparse.ArgumentParser, suppress: bool) -> None:
    default = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    parser.add_argument("--json", action="store_true", default=default(False), help="print the machine-readable report")
    parser.add_argument("--seed", type=int, default=default(0), help="seed for the instance oracle")
    parser.add_argument("--max-attrs", type=int, default=default(None), help="bound for the exponential searches")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fdnorm", description="Functional dependency and normal form analysis.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(parser, suppress=False)
    common = argparse.ArgumentParser(add_help=False)
    _global_options(common, suppress=True)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("closure", parents=[common], help="attribute closure")
    p.add_argument("--set", required=True, help="attribute names, space or comma separated")
    sub.add_parser("keys", parents=[common], help="candidate keys")
    p = sub.add_parser("classify", parents=[common], help="normal form of the schema or a decomposition")
    p.add_argument("--decomposition", metavar="FILE")
    p = sub.add_parser("decompose", parents=[common], help="build a decomposition")
    p.add_argument("--target", choices=("2nf", "3nf", "precise2nf"), required=True)
    p = sub.add_parser("check", parents=[common], help="lossless join and dependency preservation")
    p.add_argument("--decomposition", metavar="FILE", required=True)
    sub.add_parser("diagnose", parents=[common], help="overlapping chain verdict")
    for name, sp in sub.choices.items():
        sp.add_argument("schema", metavar="SCHEMA_FILE")
    return parser


def main(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK

    limits = {} if args.max_attrs is None else {"keys": args.max_attrs, "projection": args.max_attrs}
    text_out = io.StringIO()
    try:
        with size_limits(**limits):
            schema = parse_schema(Path(args.schema).read_text(encoding="utf-8")).schema
            report = AnalysisReport(
                command=args.command,
                seed=args.seed,
                schema=_schema_section(schema),
                candidate_keys=[_names(k) for k in candidate_keys(schema.universe, schema.fds)],
            )
            code = COMMANDS[args.command](args, schema, report, text_out)
    except SizeLimitExceeded as exc:
        print(f"fdnorm: {exc}", file=stderr)
        return EXIT_LIMIT
    except (FDNormError, InputError, OSError, UnicodeDecodeError) as exc:
        print(f"fdnorm: {exc}", file=stderr)
        return EXIT_INPUT

    report.exit_code = code
    if args.json:
        stdout.write(report.to_json() + "\n")
    else:
        stdout.write(text_out.getvalue())
    return code


@dataclasses.dataclass(frozen=True)
class CommandResult:
    code: int
    out: str
    err: str


def run_command(argv) -> CommandResult:
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stderr(err):
        code = main(list(argv), stdout=out, stderr=err)
    return CommandResult(code, out.getvalue(), err.getvalue())


if __name__ == "__main__":
    sys.exit(main())
