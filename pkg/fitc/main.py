"""Main entry point for the feature term compiler."""

import argparse
import logging
import sys
from pathlib import Path

from pydantic import ValidationError

from .config import get_settings, options_from_settings
from .errors import FitError
from .pipeline.workflow import CompileWorkflow
from .session import QuerySession
from .utils.kb_store import load_kb

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2


def _configure_logging(args) -> None:
    level = logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING
    logging.basicConfig(
        level=level,
        format='%(asctime)s [%(levelname)8s] %(message)s',
        datefmt='%H:%M:%S',
        stream=sys.stderr,
    )


def _common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--config", type=str, help="YAML file of setting overrides")
    parser.add_argument("--pretty", action="store_true", default=None,
                        help="Print one feature per line")
    parser.add_argument("--no-cyclic", dest="cyclic_print", action="store_false", default=None,
                        help="Unfold cyclic answers to a fixed depth instead of tagging them")
    parser.add_argument("-v", "--verbose", action="store_true", help="Log workflow steps")
    parser.add_argument("--debug", action="store_true", help="Log everything")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fitc",
        description="Compile and query logic programs over sorted feature terms",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    compile_cmd = commands.add_parser("compile", help="Compile source files to a knowledge base")
    compile_cmd.add_argument("files", nargs="+", help="Source files or directories")
    compile_cmd.add_argument("-o", "--output", type=str,
                             help="Base path for the .pl and .kb.json outputs")
    compile_cmd.add_argument("--no-sort-check", dest="sort_check", action="store_false",
                             default=None, help="Do not pre-fill finite domain slots")
    compile_cmd.add_argument("--no-feature-search", dest="feature_search", action="store_false",
                             default=None, help="Reject >>> searches")
    _common(compile_cmd)

    query_cmd = commands.add_parser("query", help="Run queries against a compiled knowledge base")
    query_cmd.add_argument("kb", help="A .kb.json file")
    query_cmd.add_argument("-e", "--goal", action="append",
                           help="Query to run in batch mode; may be repeated")
    query_cmd.add_argument("--max-solutions", type=int, help="Stop after this many answers")
    _common(query_cmd)

    listing_cmd = commands.add_parser("listing", help="Print stored clauses in feature notation")
    listing_cmd.add_argument("kb", help="A .kb.json file")
    listing_cmd.add_argument("predicate", nargs="?", help="Only clauses for name/arity")
    _common(listing_cmd)
    return parser


def _settings(args):
    overrides = {
        "pretty": args.pretty,
        "cyclic_print": args.cyclic_print,
        "sort_check": getattr(args, "sort_check", None),
        "feature_search": getattr(args, "feature_search", None),
        "max_solutions": getattr(args, "max_solutions", None),
    }
    return get_settings(args.config, **overrides)


def run_compile(args, settings) -> int:
    output = args.output or str(Path(args.files[0]).with_suffix(""))
    workflow = CompileWorkflow(options_from_settings(settings))
    result = workflow.run(args.files, output)

    for diagnostic in result.get("diagnostics", []):
        print(diagnostic.render(), file=sys.stderr)
    if result.get("error"):
        if not result.get("diagnostics"):
            print(f"error: {result['error']}", file=sys.stderr)
        return EXIT_ERROR

    validation = result.get("validation")
    if validation:
        for warning in validation.warnings:
            print(f"warning: {warning}", file=sys.stderr)
    for kind, path in result.get("outputs", {}).items():
        logger.info(f"✅ {kind}: {path}")
    return EXIT_OK


def _load_session(args, settings) -> QuerySession:
    kb = load_kb(args.kb)
    return QuerySession(kb, settings)


def run_query(args, settings) -> int:
    session = _load_session(args, settings)
    if args.goal:
        status = EXIT_OK
        for goal in args.goal:
            status = max(status, session.run_batch(goal, sys.stdout))
        return status
    session.run_interactive(sys.stdin, sys.stdout)
    return EXIT_OK


def run_listing(args, settings) -> int:
    session = _load_session(args, settings)
    text = session.listing(args.predicate)
    if text:
        print(text)
    return EXIT_OK


COMMANDS = {"compile": run_compile, "query": run_query, "listing": run_listing}


def main(argv=None) -> int:
    """Main entry point."""
    parser = build_parser()
    args = parser.parse_args(argv)
    _configure_logging(args)

    try:
        settings = _settings(args)
    except (OSError, ValueError, ValidationError) as e:
        print(f"error: failed to load settings: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        return COMMANDS[args.command](args, settings)
    except FitError as e:
        print(str(e), file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
