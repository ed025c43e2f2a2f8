"""Command-line interface: ``nicholsbench <command> ...``.

Exit codes: 0 when every check passes, 1 when a check fails, 2 on input or
parse errors (the message goes to stderr).
"""
import argparse
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional, Tuple

from nicholsbench.catalog.entry import CatalogEntry
from nicholsbench.catalog.exceptional import available_tags, entry as catalog_entry
from nicholsbench.catalog.fileformat import dump_entry, load_entry, parse_pbw_spec, parse_series
from nicholsbench.core.braiding import (
    check_classification_remark,
    check_necessary_conditions,
    recognize_with_relabeling,
    total_degree,
)
from nicholsbench.core.config import WorkbenchConfig, load_config
from nicholsbench.core.errors import NicholsBenchError, PresentationFileError
from nicholsbench.core.quotient import Presentation
from nicholsbench.core.relexpr import parse_rel_expr
from nicholsbench.core.runner import VerificationRunner
from nicholsbench.core.verifier import (
    CheckReport,
    Verifier,
    check_composition,
    check_eminent_gap,
    check_hilbert,
    check_pbw,
)
from nicholsbench.core.weyl import positive_roots
from nicholsbench.utils.export import hilbert_table_json, save_json, to_json
from nicholsbench.utils.logging import setup_logger

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1
EXIT_INPUT_ERROR = 2


def _add_parameters(parser: argparse.ArgumentParser):
    parser.add_argument("--M", type=int, help="root-of-unity order for D21a-4.1 and D21a-4.3")
    parser.add_argument("--L", type=int, help="root-of-unity order for D21a-4.2")


def _add_input(parser: argparse.ArgumentParser):
    parser.add_argument("input", help="catalog tag or presentation file")
    parser.add_argument(
        "--nichols",
        action="store_true",
        help="use the Nichols presentation instead of the eminent one",
    )
    _add_parameters(parser)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nicholsbench",
        description="Exact computations with Nichols and pre-Nichols algebras of diagonal type.",
    )
    parser.add_argument("--config", type=Path, help="YAML configuration file")
    parser.add_argument("--log-level", choices=["DEBUG", "INFO", "WARNING", "ERROR"])
    parser.add_argument("--transcendental", help="name of the transcendental (default t)")
    parser.add_argument("--output", type=Path, help="also write the JSON result to this file")
    commands = parser.add_subparsers(dest="command", required=True)

    diagram = commands.add_parser("diagram", help="Dynkin diagram and necessary conditions")
    _add_input(diagram)

    roots = commands.add_parser("roots", help="enumerate positive roots")
    _add_input(roots)
    roots.add_argument("--cap", type=int)

    hilbert = commands.add_parser("hilbert", help="Hilbert table up to a total degree")
    _add_input(hilbert)
    hilbert.add_argument("--degree", type=int)
    hilbert.add_argument("--series", type=Path, help="closed form to compare against")

    pbw = commands.add_parser("pbw", help="check a PBW basis")
    _add_input(pbw)
    pbw.add_argument("--spec", type=Path, help="PBW generators (default: the entry's)")
    pbw.add_argument("--degree", type=int)

    for name, help_text in (
        ("primitive", "is an element primitive in the quotient"),
        ("central", "is an element q-central in the quotient"),
    ):
        command = commands.add_parser(name, help=help_text)
        _add_input(command)
        command.add_argument("--expr", required=True)
        command.add_argument("--degree", type=int)

    eminent = commands.add_parser("eminent", help="eminent-gap report for a catalog entry")
    eminent.add_argument("tag")
    _add_parameters(eminent)
    eminent.add_argument("--degree", type=int)

    compose_parser = commands.add_parser("compose", help="compose blocks and check the table")
    compose_parser.add_argument("tags", nargs="+")
    _add_parameters(compose_parser)
    compose_parser.add_argument("--degree", type=int)

    parse = commands.add_parser("parse", help="dump the syntax tree of a relation")
    parse.add_argument("--expr", required=True)

    dump = commands.add_parser("dump", help="print a catalog entry as a presentation file")
    dump.add_argument("tag")
    _add_parameters(dump)

    commands.add_parser("catalog", help="list catalog tags")

    verify = commands.add_parser("verify", help="run the verification suite")
    verify.add_argument("tags", nargs="+")
    _add_parameters(verify)
    verify.add_argument("--degree", type=int)
    verify.add_argument("--checks", nargs="+", help="checks to run (default: the full suite)")
    verify.add_argument("--workers", type=int)
    return parser


class _Context:
    """Configuration merged with command-line overrides."""

    def __init__(self, args: argparse.Namespace, config: WorkbenchConfig):
        self.args = args
        self.config = config
        self.transcendental = args.transcendental or config.field.transcendental
        M = getattr(args, "M", None)
        L = getattr(args, "L", None)
        self.M = config.catalog.M if M is None else M
        self.L = config.catalog.L if L is None else L

    @property
    def degree(self) -> int:
        degree = getattr(self.args, "degree", None)
        return self.config.engine.cutoff if degree is None else degree

    def catalog(self, tag: str) -> CatalogEntry:
        return catalog_entry(tag, M=self.M, L=self.L, transcendental=self.transcendental)

    def entry(self, source: str) -> CatalogEntry:
        if source in available_tags():
            return self.catalog(source)
        path = Path(source)
        if not path.exists():
            raise PresentationFileError(
                f"'{source}' is neither a catalog tag ({', '.join(available_tags())}) nor a file"
            )
        return load_entry(path)

    def presentation(self, source: str) -> Tuple[CatalogEntry, Presentation]:
        entry = self.entry(source)
        nichols = getattr(self.args, "nichols", False)
        return entry, entry.nichols() if nichols else entry.eminent()


def _report_exit(*reports: CheckReport) -> int:
    return EXIT_OK if all(report.passed for report in reports) else EXIT_CHECK_FAILED


def _cmd_diagram(context: _Context) -> Tuple[Any, int]:
    entry = context.entry(context.args.input)
    q = entry.braiding
    violations = check_necessary_conditions(q)
    tag, order = recognize_with_relabeling(q)
    result = {
        "diagram": q.diagram().to_dict(),
        "render": q.render(),
        "violations": [v.to_dict() for v in violations],
        "classification_remark": [v.to_dict() for v in check_classification_remark(q)],
        "recognized": tag,
        "relabeling": list(order) if order else None,
    }
    return result, EXIT_CHECK_FAILED if violations else EXIT_OK


def _cmd_roots(context: _Context) -> Tuple[Any, int]:
    entry = context.entry(context.args.input)
    cap = context.args.cap or context.config.engine.root_cap
    result = positive_roots(entry.braiding, cap, context.config.engine.constant_order_scan)
    return result.to_dict(), EXIT_OK if result.is_finite else EXIT_CHECK_FAILED


def _cmd_hilbert(context: _Context) -> Tuple[Any, int]:
    entry, presentation = context.presentation(context.args.input)
    D = context.degree
    quotient = presentation.quotient(D)
    result = {"name": presentation.name, "degree": D}
    result["table"] = hilbert_table_json(quotient.hilbert_table(D))
    series = entry.series if not context.args.nichols else None
    if context.args.series is not None:
        series = parse_series(_read(context.args.series), presentation.theta)
    if series is None:
        return result, EXIT_OK
    report = check_hilbert(presentation, series, D, quotient)
    result["comparison"] = report.to_dict()
    return result, _report_exit(report)


def _cmd_pbw(context: _Context) -> Tuple[Any, int]:
    entry, presentation = context.presentation(context.args.input)
    spec = entry.pbw if context.args.spec is None else parse_pbw_spec(_read(context.args.spec))
    report = check_pbw(presentation, spec, context.degree)
    return report.to_dict(), _report_exit(report)


def _element_command(context: _Context, check: str) -> Tuple[Any, int]:
    _, presentation = context.presentation(context.args.input)
    expr = parse_rel_expr(context.args.expr)
    u = presentation.evaluate(expr)
    needed = u.total_degree + (1 if check == "central" else 0)
    quotient = presentation.quotient(max(context.degree, needed))
    if check == "primitive":
        holds = quotient.is_primitive(u)
    else:
        holds = quotient.is_q_central(u)
    result = {
        "expr": expr.to_text(),
        "presentation": presentation.name,
        "degree": list(u.degree),
        "nonzero": not quotient.is_zero(u),
        check: holds,
    }
    return result, EXIT_OK if holds else EXIT_CHECK_FAILED


def _cmd_primitive(context: _Context) -> Tuple[Any, int]:
    return _element_command(context, "primitive")


def _cmd_central(context: _Context) -> Tuple[Any, int]:
    return _element_command(context, "central")


def _cmd_eminent(context: _Context) -> Tuple[Any, int]:
    entry = context.catalog(context.args.tag)
    degree = context.args.degree
    if degree is None:
        degree = max(context.degree, total_degree(entry.central_degree) + 1)
    report = check_eminent_gap(entry, degree)
    return report.to_dict(), _report_exit(report)


def _cmd_compose(context: _Context) -> Tuple[Any, int]:
    blocks = [context.entry(tag) for tag in context.args.tags]
    report = check_composition(blocks, context.degree)
    return report.to_dict(), _report_exit(report)


def _cmd_parse(context: _Context) -> Tuple[Any, int]:
    expr = parse_rel_expr(context.args.expr)
    return {"text": expr.to_text(), "ast": expr.to_dict()}, EXIT_OK


def _cmd_catalog(context: _Context) -> Tuple[Any, int]:
    return {"tags": available_tags()}, EXIT_OK


def _cmd_verify(context: _Context) -> Tuple[Any, int]:
    engine = context.config.engine
    verifier = Verifier(engine.cutoff, engine.root_cap, engine.constant_order_scan)
    runner = VerificationRunner(verifier, context.args.workers or engine.workers)
    entries = [context.entry(tag) for tag in context.args.tags]
    batch = runner.run_entries(entries, context.args.checks, context.degree)
    return batch.to_dict(), EXIT_OK if batch.all_passed else EXIT_CHECK_FAILED


COMMANDS = {
    "diagram": _cmd_diagram,
    "roots": _cmd_roots,
    "hilbert": _cmd_hilbert,
    "pbw": _cmd_pbw,
    "primitive": _cmd_primitive,
    "central": _cmd_central,
    "eminent": _cmd_eminent,
    "compose": _cmd_compose,
    "parse": _cmd_parse,
    "catalog": _cmd_catalog,
    "verify": _cmd_verify,
}


def _read(path: Path) -> str:
    try:
        return path.read_text(encoding="utf-8")
    except OSError as exc:
        raise PresentationFileError(f"cannot read {path}: {exc.strerror}") from None


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = load_config(args.config) if args.config else WorkbenchConfig()
        setup_logger(
            level=args.log_level or config.logging.level, log_file=config.logging.log_file
        )
        context = _Context(args, config)
        if args.command == "dump":
            text = dump_entry(context.catalog(args.tag))
            sys.stdout.write(text)
            if args.output is not None:
                args.output.parent.mkdir(parents=True, exist_ok=True)
                args.output.write_text(text, encoding="utf-8")
            return EXIT_OK
        result, code = COMMANDS[args.command](context)
    except NicholsBenchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    print(to_json(result))
    output = args.output
    if output is None and config.output.save_results:
        output = Path(config.output.output_dir) / f"{args.command}.json"
    if output is not None:
        save_json(result, output)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
