"""CLI for ordrev.

Decides reversibility of families described in the ordrev DSL, runs the
bounded witness oracle and the embedded golden corpus.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import yaml

from ordrev import __version__
from ordrev.config import Config
from ordrev.errors import InvariantViolation, OrdrevError, ParseError, SourceSpan

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_INVARIANT = 1
EXIT_INPUT = 2
EXIT_NOT_REVERSIBLE = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ordrev",
        description="Decide reversibility of disjoint unions of well orders",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "-v", "--verbose", action="store_true",
        help="Log decision steps to stderr"
    )
    parser.add_argument(
        "--config", type=Path,
        help="YAML config file (default: $ORDREV_CONFIG)"
    )

    subparsers = parser.add_subparsers(dest="command", required=True)

    # decide command
    d = subparsers.add_parser("decide", help="Decide whether a family is reversible")
    d.add_argument("file", type=Path, help="Family description (.ord)")
    d.add_argument("--json", action="store_true", help="Print the JSON report")
    d.add_argument(
        "--witness-depth", type=int,
        help="Slots per index class when verifying the witness (default: from config)"
    )
    d.add_argument(
        "--exit-verdict", action="store_true",
        help="Exit 3 when the family is not reversible"
    )

    # oracle command
    o = subparsers.add_parser("oracle", help="Bounded search for non-reversibility witnesses")
    o.add_argument("file", type=Path, help="Family description (.ord)")
    o.add_argument("--max-target", type=int, help="Largest merge target (default: from config)")
    o.add_argument("--max-coeff", type=int, help="Largest coefficient, k0 and stride (default: from config)")
    o.add_argument("--workers", type=int, help="Worker processes (default: from config)")
    o.add_argument("--json", action="store_true", help="Print JSON results")

    # format command
    f = subparsers.add_parser("format", help="Print the normalized family in canonical form")
    f.add_argument("file", type=Path, help="Family description (.ord)")

    # selftest command
    subparsers.add_parser("selftest", help="Run the embedded golden corpus")

    return parser


def main(argv: list[str] | None = None) -> int:
    """Main entry point for the CLI. Returns the process exit code."""
    args = build_parser().parse_args(argv)

    try:
        config = Config.load(args.config)
    except (OSError, ValueError, yaml.YAMLError) as e:
        print(f"Error: cannot load config: {e}", file=sys.stderr)
        return EXIT_INPUT

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else config.log_level,
        format="%(asctime)s [%(levelname)s] %(name)s: %(message)s",
        handlers=[logging.StreamHandler(sys.stderr)],
    )

    try:
        if args.command == "decide":
            return decide_command(args, config)
        if args.command == "oracle":
            return oracle_command(args, config)
        if args.command == "format":
            return format_command(args)
        return selftest_command(config)
    except InvariantViolation as e:
        print(f"Internal error: {e}", file=sys.stderr)
        return EXIT_INVARIANT
    except OrdrevError as e:
        print(f"{getattr(args, 'file', '')}: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_INPUT


def _load_family(path: Path):
    from ordrev.core.family import normalize
    from ordrev.dsl.parser import parse

    data = path.expanduser().read_bytes()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        raise ParseError(f"invalid UTF-8: {e.reason}", SourceSpan(e.start, e.end)) from e
    return normalize(parse(text))


def _resolve(flag: int | None, default: int) -> int:
    return default if flag is None else flag


def decide_command(args: argparse.Namespace, config: Config) -> int:
    """Execute the decide command."""
    from ordrev.core.decide import decide
    from ordrev.report import Report, Stopwatch, render_report
    from ordrev.witness.models import plan_from_dict
    from ordrev.witness.verifier import verify_witness

    depth = _resolve(args.witness_depth, config.witness_depth)
    if depth < 1:
        print("Error: --witness-depth must be positive", file=sys.stderr)
        return EXIT_INPUT
    try:
        family = _load_family(args.file)
    except OSError as e:
        print(f"Error: cannot read {args.file}: {e}", file=sys.stderr)
        return EXIT_INPUT

    watch = Stopwatch()
    verdict = decide(family, witness_depth=depth)
    report = Report(verdict, watch.elapsed_ms)

    if verdict.witness is not None:
        # the serialized witness must stand on its own
        reloaded = plan_from_dict(json.loads(json.dumps(verdict.witness.to_dict())))
        check = verify_witness(
            family, reloaded, depth=depth, samples=config.coloring_samples, seed=config.seed
        )
        if not check:
            logger.error(f"Reloaded witness rejected: {check.error_message}")
            raise InvariantViolation(f"reloaded witness did not verify: {check.error_type}")

    if args.json:
        print(report.to_json())
    else:
        render_report(report)

    if args.exit_verdict and not verdict.reversible:
        return EXIT_NOT_REVERSIBLE
    return EXIT_OK


def oracle_command(args: argparse.Namespace, config: Config) -> int:
    """Execute the oracle command on every infinite tail sequence of the family."""
    from dataclasses import replace

    from rich.console import Console
    from rich.table import Table

    from ordrev.core.family import Orientation, limit_parts, tail_multiset
    from ordrev.core.natrev import decide_nat_reversible
    from ordrev.witness.oracle import bounded_oracle_search

    max_target = _resolve(args.max_target, config.oracle_max_target)
    max_coeff = _resolve(args.max_coeff, config.oracle_max_coeff)
    workers = _resolve(args.workers, config.oracle_workers)
    if max_target < 1 or max_coeff < 1:
        print("Error: --max-target and --max-coeff must be positive", file=sys.stderr)
        return EXIT_INPUT

    try:
        family = _load_family(args.file)
    except OSError as e:
        print(f"Error: cannot read {args.file}: {e}", file=sys.stderr)
        return EXIT_INPUT

    results = []
    disagreements = 0
    for gamma in limit_parts(family):
        for orientation in Orientation:
            # finite chains are all canonically W
            if gamma.is_zero and orientation is Orientation.WSTAR:
                continue
            tails = tail_multiset(family, gamma, orientation)
            if not tails.is_infinite:
                continue
            plan = bounded_oracle_search(
                tails, max_target, max_coeff, workers=workers, depth=config.witness_depth
            )
            if plan is not None:
                plan = replace(plan, limit_part=gamma, orientation=orientation)
            reversible = decide_nat_reversible(tails, with_witness=False).reversible
            if plan is not None and reversible:
                logger.error(f"Oracle found {plan.kind} for reversible tails {tails}")
                disagreements += 1
            results.append(
                {
                    "limitPart": str(gamma),
                    "orientation": orientation.value,
                    "tails": str(tails),
                    "reversible": reversible,
                    "witness": None if plan is None else plan.to_dict(),
                }
            )

    if args.json:
        print(json.dumps(results, sort_keys=True, indent=2))
    else:
        table = Table(title=f"Bounded oracle (target <= {max_target}, coefficients <= {max_coeff})")
        table.add_column("gamma")
        table.add_column("Orientation")
        table.add_column("Tails", overflow="fold")
        table.add_column("Decision")
        table.add_column("Oracle")
        for row in results:
            found = row["witness"]["kind"] if row["witness"] else "none found"
            table.add_row(
                row["limitPart"],
                row["orientation"],
                row["tails"],
                "reversible" if row["reversible"] else "not reversible",
                found,
            )
        Console().print(table)
        if not results:
            print("No tail sequence occurs infinitely often; nothing to search.")

    return EXIT_INVARIANT if disagreements else EXIT_OK


def format_command(args: argparse.Namespace) -> int:
    """Execute the format command."""
    from ordrev.dsl.printer import format_family

    try:
        family = _load_family(args.file)
    except OSError as e:
        print(f"Error: cannot read {args.file}: {e}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(format_family(family))
    return EXIT_OK


def selftest_command(config: Config) -> int:
    """Execute the selftest command."""
    from ordrev.golden import print_summary, run_selftest

    result = run_selftest(witness_depth=min(config.witness_depth, 64))
    print_summary(result)
    return EXIT_OK if result.ok else EXIT_INVARIANT


if __name__ == "__main__":
    sys.exit(main())
