"""Command-line entry point: `locpress <command> --config PATH`."""

import argparse
import logging
import sys

from rich.markup import escape
from rich.table import Table

from .. import __version__
from ..config import settings
from ..database.db import Database
from ..errors import ConfigError, PreconditionError
from ..log import configure_logging, console
from .commands import COMMANDS, load_config, with_seed, write_csv, write_report
from .models import ReportEnvelope
from .selftest import cmd_selftest

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_PRECONDITION = 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locpress",
        description="Local pressure, Gibbs diagnostics and equilibrium states on subshifts of finite type.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="command", required=True)

    for name, help_text in [
        ("pressure", "topological pressure with the partition-function cross-check"),
        ("equilibrium", "equilibrium measure and variational check"),
        ("local-pressure", "local pressure over a sampled batch"),
        ("gibbs-check", "weak-Gibbs diagnostics and equilibrium verdict"),
    ]:
        sub = subparsers.add_parser(name, help=help_text)
        sub.add_argument("--config", required=True, help="experiment config (JSON)")
        sub.add_argument("--out", help="write the report here instead of stdout")
        sub.add_argument("--csv", help="also write per-point grid values as CSV")
        sub.add_argument("--threads", type=int, default=settings.threads, help="worker threads")
        sub.add_argument("--seed", type=int, help="override the estimator seed")
        sub.add_argument("--record", action="store_true", help="store the report in the run history")
        _add_common(sub)

    selftest = subparsers.add_parser("selftest", help="run the acceptance suite")
    _add_common(selftest)

    history = subparsers.add_parser("history", help="list recorded runs")
    history.add_argument("--filter", dest="command_filter", help="only runs of this command")
    history.add_argument("--limit", type=int, default=20)
    history.add_argument("--show", type=int, metavar="ID", help="print the report of one run")
    _add_common(history)
    return parser


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--verbose", "-v", action="store_true", help="debug logging")
    parser.add_argument("--quiet", "-q", action="store_true", help="no summary on stderr")


def print_summary(envelope: ReportEnvelope) -> None:
    """Short human-readable summary of a report on stderr."""
    results = envelope.results
    table = Table(title=f"{envelope.command}: {envelope.config.name}")
    table.add_column("Quantity")
    table.add_column("Value", justify="right")
    if results.kind == "pressure":
        table.add_row("P_top", f"{results.report.value:.12f}")
        table.add_row("h_top", f"{results.topological_entropy:.12f}")
        for row in results.oracle:
            table.add_row(f"oracle gap n={row.n}", f"{row.gap:.3e}")
        table.add_row("oracle gaps decreasing", str(results.oracle_gaps_decreasing))
        if results.oracle_skipped:
            table.add_row("oracle skipped (word budget)", ", ".join(map(str, results.oracle_skipped)))
    elif results.kind == "equilibrium":
        table.add_row("P_top", f"{results.pressure.value:.12f}")
        table.add_row("entropy + integral", f"{results.metric_pressure:.12f}")
        table.add_row("gap", f"{results.gap:.3e}")
        table.add_row("worst axiom defect", f"{results.axioms.worst:.3e}")
        table.add_row("best random Markov", f"{results.variational.max_random:.12f}")
    elif results.kind == "local_pressure":
        report = results.report
        table.add_row(f"mean at (n={report.n}, k={report.k})", f"{report.sample_mean:.8f}")
        table.add_row("std", f"{report.sample_std:.3e}")
        table.add_row("target", f"{report.target:.8f}")
        table.add_row("tolerance", f"{report.sample_tolerance:.3e}")
        table.add_row("within tolerance", str(report.within_tolerance))
        table.add_row("invariance defect", f"{report.invariance_defect:.3e}")
    else:
        diagnostics = results.diagnostics
        table.add_row("verdict", diagnostics.verdict.value)
        table.add_row("mean slope", f"{diagnostics.mean_slope:.5f}")
        table.add_row("rejecting fraction", f"{diagnostics.rejecting_fraction:.2%}")
        table.add_row("direct gap", f"{results.direct_gap:.3e}")
        if results.verdict is not None:
            table.add_row("equilibrium", str(results.verdict.is_equilibrium))
    table.add_row("wall time", f"{envelope.wall_time:.2f}s")
    console.print(table)


def _record(envelope: ReportEnvelope) -> None:
    run_id = Database(settings.database_url).save_run(envelope)
    logger.info("recorded run %d", run_id)


def _history(args: argparse.Namespace) -> int:
    db = Database(settings.database_url)
    if args.show is not None:
        envelope = db.get_run(args.show)
        if envelope is None:
            console.print(f"[red]No run with id {args.show}[/red]")
            return EXIT_CONFIG
        sys.stdout.write(envelope.model_dump_json(indent=2) + "\n")
        return EXIT_OK

    table = Table(title="Recorded runs")
    for column in ("ID", "Command", "Config", "Seed", "Wall time", "Created"):
        table.add_column(column)
    for run in db.list_runs(command=args.command_filter, limit=args.limit):
        table.add_row(
            str(run.id), run.command, run.config_name, str(run.seed),
            f"{run.wall_time:.2f}s", run.created_at.strftime("%Y-%m-%d %H:%M"),
        )
    console.print(table)
    return EXIT_OK


def run(args: argparse.Namespace) -> int:
    if args.command == "selftest":
        return cmd_selftest(quiet=args.quiet)
    if args.command == "history":
        return _history(args)

    config = with_seed(load_config(args.config), args.seed)
    envelope = COMMANDS[args.command](config, max(1, args.threads))
    if args.out:
        write_report(envelope, args.out)
    else:
        sys.stdout.write(envelope.model_dump_json(indent=2) + "\n")
    if args.csv:
        write_csv(envelope, args.csv)
    if args.record:
        _record(envelope)
    if not args.quiet:
        print_summary(envelope)
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    configure_logging("DEBUG" if args.verbose else None)
    try:
        return run(args)
    except ConfigError as e:
        console.print(f"[red]Error:[/red] {escape(str(e))}")
        return EXIT_CONFIG
    except PreconditionError as e:
        console.print(f"[red]Error:[/red] {escape(str(e))}")
        return EXIT_PRECONDITION


if __name__ == "__main__":
    sys.exit(main())
