from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Dict, Optional, Sequence, TextIO

# Make `lib` importable whether invoked as a script or imported as `app.main`
CURRENT_DIR = Path(__file__).resolve().parent
PROJECT_ROOT = CURRENT_DIR.parent
if str(CURRENT_DIR) not in sys.path:
    sys.path.insert(0, str(CURRENT_DIR))

from pydantic import BaseModel

from lib.cnf import Formula, emit_dimacs, format_half_units, read_dimacs
from lib.config import AnalysisSettings, load_settings
from lib.config_path import ConfigSource, resolve_config_source
from lib.entailment import classify, equivalent
from lib.errors import (
    ClauseTrimError,
    DimacsParseError,
    GeneratorError,
    PreconditionError,
    SearchExhausted,
    UnknownClauseError,
)
from lib.exact_search import SearchBudget, enumerate_ies, in_some_ies_exact, min_ies_size_exact
from lib.hardgen import generate, reduction_names
from lib.horn import horn_implied_atoms, horn_is_consistent
from lib.ies import Membership, has_unique_ies, in_all_ies, report
from lib.implication_graph import build_for, to_dot
from lib.logging_utils import configure_cli_logging, library_logger_level, setup_debug_logging
from lib.redundancy import check
from lib.reports import Regime
from lib.schemas import (
    ClassificationOut,
    ClauseMapOut,
    IesReportOut,
    MembershipOut,
    OracleOut,
    RedundancyReportOut,
    SidecarOut,
)

logger = logging.getLogger("clausetrim.cli")

EXIT_OK = 0
EXIT_FALSE = 1
EXIT_EXHAUSTED = 2
EXIT_USAGE = 64
EXIT_DATA = 65
EXIT_INTERNAL = 70

FORMATS = ("human", "json", "dimacs", "dot")
UNLIMITED_CLAUSES = sys.maxsize


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    base = _Parser(add_help=False)
    base.add_argument("--config", type=Path, default=None, help="YAML settings file.")
    base.add_argument("--format", choices=FORMATS, default="human")
    base.add_argument("-v", "--verbose", action="count", default=0)

    analysis = _Parser(add_help=False)
    analysis.add_argument("input", nargs="?", default="-", help="DIMACS file, '-' for stdin.")
    analysis.add_argument("--horn", action="store_true", help="Use the Horn pipeline on Horn input.")
    analysis.add_argument("--map", action="store_true", help="Print input line to clause id mapping on stderr.")
    analysis.add_argument("--max-clauses", type=int, default=None)
    analysis.add_argument("--max-nodes", type=int, default=None)
    analysis.add_argument("--time-cap", type=float, default=None)
    analysis.add_argument("--exact-force", action="store_true", help="Lift the undecided-clause cap of exact search.")

    parser = _Parser(prog="clausetrim", description="Redundancy and I.E.S. analysis of 2CNF and Horn formulae.")
    commands = parser.add_subparsers(dest="command", required=True)

    classify_cmd = commands.add_parser("classify", parents=[base, analysis], help="Regime and cyclicity.")
    classify_cmd.add_argument("--max-cycles", type=int, default=None)

    commands.add_parser("redundant", parents=[base, analysis], help="Per-clause redundancy report.")

    ies_cmd = commands.add_parser("ies", parents=[base, analysis], help="Full I.E.S. report.")
    ies_cmd.add_argument("--unique-only", action="store_true", help="Fail unless the I.E.S. is unique.")
    ies_cmd.add_argument("--no-search", action="store_true", help="Polynomial procedures only.")

    size_cmd = commands.add_parser("ies-size", parents=[base, analysis], help="Minimum I.E.S. size.")
    size_cmd.add_argument("--exact", action="store_true", help="Allow exact search.")

    member_cmd = commands.add_parser("in-ies", parents=[base, analysis], help="Clause membership question.")
    member_cmd.add_argument("--clause", type=int, required=True)
    which = member_cmd.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", dest="question", action="store_const", const="all")
    which.add_argument("--some", dest="question", action="store_const", const="some")

    commands.add_parser("prune", parents=[base, analysis], help="Emit one I.E.S. as DIMACS.")

    gen_cmd = commands.add_parser("gen", parents=[base], help="Generate a reduction instance.")
    gen_cmd.add_argument("reduction", choices=reduction_names())
    gen_cmd.add_argument("--seed", type=int, default=None)
    gen_cmd.add_argument("--nodes", type=int, default=None)
    gen_cmd.add_argument("--edge-probability", type=float, default=None)
    gen_cmd.add_argument("--sat-vars", type=int, default=None)
    gen_cmd.add_argument("--sat-clauses", type=int, default=None)
    gen_cmd.add_argument("--sidecar", type=Path, default=None, help="Write the sidecar JSON here.")

    oracle_cmd = commands.add_parser("oracle", parents=[base, analysis], help="Exact search questions.")
    oracle_cmd.add_argument("question", choices=("enumerate", "min-size", "in-some", "equivalent"))
    oracle_cmd.add_argument("--clause", type=int, default=None)
    oracle_cmd.add_argument("--other", type=Path, default=None, help="Second DIMACS file for 'equivalent'.")
    oracle_cmd.add_argument("--cross-check", action="store_true", help="Re-validate with truth tables.")
    return parser


def _config_source(args: argparse.Namespace) -> ConfigSource:
    if args.config is not None:
        return ConfigSource(args.config, "cli")
    return resolve_config_source(PROJECT_ROOT)


def _settings(source: ConfigSource) -> AnalysisSettings:
    try:
        return load_settings(source.path)
    except ValueError as exc:
        raise UsageError(f"invalid config {source.path}: {exc}") from exc


def _budget(args: argparse.Namespace, settings: AnalysisSettings) -> SearchBudget:
    budget = settings.search.budget()
    max_clauses = args.max_clauses if args.max_clauses is not None else budget.max_clauses
    return SearchBudget(
        max_clauses=UNLIMITED_CLAUSES if args.exact_force else max_clauses,
        max_nodes=args.max_nodes if args.max_nodes is not None else budget.max_nodes,
        time_cap=args.time_cap if args.time_cap is not None else budget.time_cap,
    )


def _configure_logging(args: argparse.Namespace, settings: AnalysisSettings, stderr: TextIO) -> None:
    if args.verbose >= 2:
        level = logging.DEBUG
    elif args.verbose == 1:
        level = logging.INFO
    else:
        level = library_logger_level(settings.logging.level)
    configure_cli_logging(level, stderr)
    if settings.logging.debug_dir is not None:
        setup_debug_logging(settings.logging.debug_dir).info("cli.command", extra={"command": args.command})


def _read_input(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load(args: argparse.Namespace, stdin: TextIO, stderr: TextIO) -> Formula:
    parsed = read_dimacs(_read_input(args.input, stdin))
    for warning in parsed.warnings:
        stderr.write(f"warning: {warning}\n")
    if args.map:
        if args.format == "json":
            mapping = ClauseMapOut(lines={str(line): cid for line, cid in sorted(parsed.line_map.items())})
            stderr.write(_dump(mapping))
        else:
            for line, cid in sorted(parsed.line_map.items()):
                stderr.write(f"line {line} -> clause {cid}\n")
    formula = parsed.formula
    if args.horn and not formula.kind.is_horn:
        raise UsageError("--horn needs a Horn formula")
    return formula


def _dump(model: BaseModel) -> str:
    return json.dumps(model.model_dump(), sort_keys=True, indent=2) + "\n"


def _yes_no(flag: Optional[bool]) -> str:
    if flag is None:
        return "unknown"
    return "yes" if flag else "no"


def _uses_horn(formula: Formula, prefer_horn: bool) -> bool:
    return not formula.kind.is_binary or (prefer_horn and formula.kind.is_horn)


def _cmd_classify(args: argparse.Namespace, formula: Formula, out: TextIO) -> int:
    if _uses_horn(formula, args.horn):
        if args.format == "dot":
            raise UsageError("dot output needs a 2CNF formula")
        consistent = horn_is_consistent(formula)
        atoms = sorted(formula.names[var - 1] for var in horn_implied_atoms(formula)) if consistent else []
        if not consistent:
            regime = Regime.INCONSISTENT
        else:
            regime = Regime.CONSISTENT_IMPLYING if atoms else Regime.CONSISTENT_NO_IMPLIED
        if args.format == "json":
            out.write(
                _dump(
                    ClassificationOut(
                        regime=regime.value,
                        cyclic="not_applicable",
                        implied=atoms,
                        variables=formula.n,
                        clauses=formula.m,
                    )
                )
            )
        else:
            out.write(f"horn, {'consistent' if consistent else 'inconsistent'}\n")
            if atoms:
                out.write("implied: " + " ".join(str(atom) for atom in atoms) + "\n")
        return EXIT_OK

    if args.format == "dot":
        out.write(to_dot(build_for(formula)))
        return EXIT_OK
    cls = classify(formula, max_cycles=args.max_cycles)
    data = cls.to_dict(formula)
    if args.format == "json":
        out.write(_dump(ClassificationOut(variables=formula.n, clauses=formula.m, **data)))
        return EXIT_OK
    out.write(cls.describe() + "\n")
    if data["implied"]:
        out.write("implied: " + " ".join(str(name) for name in data["implied"]) + "\n")
    if data["clash_var"] is not None:
        out.write(f"clash variable: {data['clash_var']}\n")
    return EXIT_OK


def _cmd_redundant(args: argparse.Namespace, formula: Formula, out: TextIO) -> int:
    result = check(formula, prefer_horn=args.horn)
    if args.format == "json":
        out.write(_dump(RedundancyReportOut(**result.to_dict())))
        return EXIT_OK
    if result.redundant:
        out.write(f"redundant (clause {result.witness})\n")
    else:
        out.write("irredundant\n")
    for cid in sorted(result.per_clause):
        out.write(f"  {cid}: {result.per_clause[cid].value} [{result.sources.get(cid, '')}]\n")
    return EXIT_OK


def _write_report(args: argparse.Namespace, data: Dict[str, object], out: TextIO) -> None:
    if args.format == "json":
        out.write(_dump(IesReportOut(**data)))
        return
    out.write(f"regime: {data['regime']}\n")
    out.write(f"cyclic: {data['cyclic']}\n")
    out.write(f"unique: {_yes_no(data['unique'])}\n")
    out.write(f"min size: {data['min_size'] or 'needs_search'}\n")
    ies = data["ies"]
    out.write("ies: " + (" ".join(str(cid) for cid in ies) if ies is not None else "unknown") + "\n")
    out.write("membership:\n")
    for cid, status in data["membership"].items():
        out.write(f"  {cid}: {status}\n")
    if data["exact_used"]:
        out.write("exact search: used\n")


def _cmd_ies(args: argparse.Namespace, formula: Formula, budget: SearchBudget, out: TextIO, err: TextIO) -> int:
    if args.unique_only and not has_unique_ies(formula, prefer_horn=args.horn):
        err.write("the formula has more than one I.E.S.\n")
        return EXIT_FALSE
    searched = not args.no_search
    result = report(formula, budget, search=searched, prefer_horn=args.horn)
    _write_report(args, result.to_dict(), out)
    return EXIT_EXHAUSTED if searched and result.needs_search else EXIT_OK


def _cmd_ies_size(args: argparse.Namespace, formula: Formula, budget: SearchBudget, out: TextIO) -> int:
    result = report(formula, budget, search=args.exact, prefer_horn=args.horn)
    if args.format == "json":
        out.write(_dump(IesReportOut(**result.to_dict())))
    elif result.min_size_half_units is None:
        out.write("needs_search\n")
    else:
        out.write(format_half_units(result.min_size_half_units) + "\n")
    return EXIT_OK if result.min_size_half_units is not None else EXIT_EXHAUSTED


def _cmd_in_ies(args: argparse.Namespace, formula: Formula, budget: SearchBudget, out: TextIO) -> int:
    formula.clause(args.clause)
    answer: Optional[bool]
    if in_all_ies(formula, args.clause, prefer_horn=args.horn):
        answer, membership = True, Membership.IN_ALL
    elif args.question == "all":
        answer = False
        membership = report(formula, budget, search=False, prefer_horn=args.horn).membership[args.clause]
    else:
        membership = report(formula, budget, search=True, prefer_horn=args.horn).membership[args.clause]
        answer = None if membership is Membership.NEEDS_SEARCH else membership is not Membership.IN_NONE

    if args.format == "json":
        out.write(
            _dump(MembershipOut(clause=args.clause, question=args.question, answer=answer, membership=membership.value))
        )
    else:
        out.write(("needs_search" if answer is None else _yes_no(answer)) + "\n")
    if answer is None:
        return EXIT_EXHAUSTED
    return EXIT_OK if answer else EXIT_FALSE


def _cmd_prune(args: argparse.Namespace, formula: Formula, budget: SearchBudget, out: TextIO) -> int:
    result = report(formula, budget, search=False, prefer_horn=args.horn)
    assert result.ies is not None
    if args.format == "json":
        _write_report(args, result.to_dict(), out)
    else:
        out.write(emit_dimacs(formula.subset(result.ies)))
    return EXIT_OK


def _cmd_oracle(
    args: argparse.Namespace, formula: Formula, budget: SearchBudget, stdin: TextIO, out: TextIO
) -> int:
    question = args.question
    result = OracleOut(question=question)
    if question == "enumerate":
        found = enumerate_ies(formula, budget, prefer_horn=args.horn, cross_check=args.cross_check)
        result.ies = [sorted(ids) for ids in found]
    elif question == "min-size":
        size = min_ies_size_exact(formula, budget, prefer_horn=args.horn, cross_check=args.cross_check)
        result.min_size = format_half_units(size.half_units)
        result.ies = [sorted(size.ids)]
    elif question == "in-some":
        if args.clause is None:
            raise UsageError("in-some needs --clause")
        result.answer = in_some_ies_exact(formula, args.clause, budget, prefer_horn=args.horn)
    else:
        if args.other is None:
            raise UsageError("equivalent needs --other")
        other = read_dimacs(_read_input(str(args.other), stdin)).formula
        result.answer = equivalent(formula, other, prefer_horn=args.horn)

    if args.format == "json":
        out.write(_dump(result))
    else:
        if result.min_size is not None:
            out.write(f"min size: {result.min_size}\n")
        if result.ies is not None:
            for ids in result.ies:
                out.write("ies: " + " ".join(str(cid) for cid in ids) + "\n")
        if result.answer is not None:
            out.write(_yes_no(result.answer) + "\n")
    if result.answer is False:
        return EXIT_FALSE
    return EXIT_OK


def _cmd_gen(args: argparse.Namespace, settings: AnalysisSettings, out: TextIO) -> int:
    config = settings.generator
    for name in ("seed", "nodes", "edge_probability", "sat_vars", "sat_clauses"):
        value = getattr(args, name)
        if value is not None:
            setattr(config, name, value)
    instance = generate(args.reduction, config)
    sidecar = SidecarOut(**instance.sidecar())
    if args.format == "json":
        out.write(_dump(sidecar))
        return EXIT_OK
    if args.sidecar is not None:
        args.sidecar.write_text(_dump(sidecar), encoding="utf-8")
    else:
        out.write("c sidecar " + json.dumps(sidecar.model_dump(), sort_keys=True) + "\n")
    out.write(emit_dimacs(instance.formula))
    return EXIT_OK


def _dispatch(args: argparse.Namespace, stdin: TextIO, out: TextIO, err: TextIO) -> int:
    source = _config_source(args)
    settings = _settings(source)
    _configure_logging(args, settings, err)
    logger.debug(
        "cli.config", extra={"path": str(source.path), "origin": source.origin, "found": source.exists}
    )
    if args.command == "gen":
        return _cmd_gen(args, settings, out)

    formula = _load(args, stdin, err)
    budget = _budget(args, settings)
    logger.info("cli.run", extra={"command": args.command, "clauses": formula.m, "variables": formula.n})
    if args.format == "dot" and args.command != "classify":
        raise UsageError("dot output is only available for classify")
    if args.format == "dimacs" and args.command != "prune":
        raise UsageError("dimacs output is only available for prune and gen")
    if args.command == "classify":
        return _cmd_classify(args, formula, out)
    if args.command == "redundant":
        return _cmd_redundant(args, formula, out)
    if args.command == "ies":
        return _cmd_ies(args, formula, budget, out, err)
    if args.command == "ies-size":
        return _cmd_ies_size(args, formula, budget, out)
    if args.command == "in-ies":
        return _cmd_in_ies(args, formula, budget, out)
    if args.command == "prune":
        return _cmd_prune(args, formula, budget, out)
    return _cmd_oracle(args, formula, budget, stdin, out)


def run(
    argv: Optional[Sequence[str]] = None,
    stdin: Optional[TextIO] = None,
    stdout: Optional[TextIO] = None,
    stderr: Optional[TextIO] = None,
) -> int:
    stdin = stdin or sys.stdin
    out = stdout or sys.stdout
    err = stderr or sys.stderr
    parser = _build_parser()
    try:
        args = parser.parse_args(list(argv) if argv is not None else None)
    except UsageError as exc:
        err.write(f"{exc}\n")
        return EXIT_USAGE
    except SystemExit as exc:
        # --help
        return int(exc.code or 0)

    try:
        return _dispatch(args, stdin, out, err)
    except UsageError as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except DimacsParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_DATA
    except SearchExhausted as exc:
        err.write(f"search exhausted ({exc.reason}): {exc}\n")
        return EXIT_EXHAUSTED
    except (UnknownClauseError, GeneratorError, PreconditionError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_USAGE
    except ClauseTrimError as exc:
        logger.exception("cli.failed")
        err.write(f"error: {exc}\n")
        return EXIT_INTERNAL


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
