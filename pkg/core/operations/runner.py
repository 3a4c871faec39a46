# runner.py

import argparse
import logging
import sys
from typing import Callable, Dict, Optional, Sequence

from rich.console import Console

from core.config import Config
from core.errors import (ArgumentError, ConfigError, DomainError, LaminateError, NumericalCheckError,
                         OrientationError)
from core.operations.admissible_op import cmd_admissible
from core.operations.mesh_op import cmd_mesh
from core.operations.probe_op import cmd_probe
from core.operations.scan_op import cmd_scan
from core.operations.two_phase_op import cmd_two_phase
from core.render.render_report import Report, render_report, write_report
from core.settings import AnalysisConfig, load_analysis_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INADMISSIBLE = 3
EXIT_CHECK_FAILED = 4

COMMANDS: Dict[str, Callable[[AnalysisConfig], Report]] = {
    "admissible": cmd_admissible,
    "two-phase": cmd_two_phase,
    "mesh": cmd_mesh,
    "scan": cmd_scan,
    "probe-convexity": cmd_probe,
}


def setup_logging(verbose: bool = False):
    """Setup logging configuration"""
    level = logging.DEBUG if verbose else logging.INFO
    logging.basicConfig(
        level=level,
        format='[%(asctime)s] %(levelname)s: %(message)s',
        datefmt='%H:%M:%S'
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="laminate",
        description="Two-phase deformations with a common Cauchy stress",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  # Admissible shear interval for the configured a
  python laminate.py admissible --config settings.toml

  # Roots, common stress and residuals
  python laminate.py two-phase --config settings.toml --out results

  # Two-phase field on an m^3 partition, with tetmesh export
  python laminate.py mesh --config settings.toml --out results

  # beta1(k) curve as CSV on stdout
  python laminate.py scan --config settings.toml --format csv
        """
    )
    parser.add_argument('-v', '--verbose', action='store_true', help='Verbose output')

    subparsers = parser.add_subparsers(dest='command', help='Available commands')
    helps = {
        "admissible": "Admissible shear interval for the configured a",
        "two-phase": "beta1 roots, common stress and stress-equality residuals",
        "mesh": "Piecewise-affine two-phase field with continuity and traction checks",
        "scan": "beta1 curve, admissibility boundary or energy along the laminate segment",
        "probe-convexity": "Search the laminate segment for a rank-one convexity witness",
    }
    for name, text in helps.items():
        sub = subparsers.add_parser(name, help=text)
        sub.add_argument('--config', '-c', default='settings.toml', help='Analysis config (TOML)')
        sub.add_argument('--out', '-o', help='Output directory (report is printed to stdout otherwise)')
        sub.add_argument('--format', '-f', choices=['json', 'csv'], help='Report format')
    return parser


def summarize(console: Console, report: Report) -> None:
    results = report.results
    if "verdict" in results:
        console.print(f"[cyan]{report.command}[/cyan]: {results['verdict']}")
    if "roots" in results:
        console.print(f"[cyan]{report.command}[/cyan]: roots " + ", ".join(f"{k:.12g}" for k in results["roots"]))
    for message in report.diagnostics:
        console.print(f"[yellow]![/yellow] {message}")
    for message in report.failures:
        console.print(f"[red]✗[/red] {message}")
    if not report.failures:
        console.print(f"[light_green]✓[/light_green] {report.command} done")


def run_command(command: str, config: AnalysisConfig) -> Report:
    Config.override(config.tolerances)
    return COMMANDS[command](config)


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help(sys.stderr)
        return EXIT_USAGE

    setup_logging(args.verbose)
    console = Console(stderr=True, soft_wrap=True)
    saved = Config.snapshot()
    try:
        try:
            Config.apply_environment()
        except ValueError as e:
            raise ConfigError(str(e))
        config = load_analysis_config(args.config)
        if args.out:
            config.out = args.out
        if args.format:
            config.format = args.format

        report = run_command(args.command, config)
        if config.out:
            write_report(report, config.format, config.out)
        else:
            sys.stdout.write(render_report(report, config.format))
        summarize(console, report)
        return EXIT_CHECK_FAILED if report.failures else EXIT_OK

    except (ConfigError, ArgumentError) as e:
        where = f" (key '{e.key}')" if getattr(e, "key", None) else ""
        where += f" (line {e.line})" if getattr(e, "line", None) else ""
        console.print(f"[red]usage error[/red]: {e}{where}")
        return EXIT_USAGE
    except (DomainError, OrientationError) as e:
        console.print(f"[red]inadmissible[/red]: {e}")
        return EXIT_INADMISSIBLE
    except NumericalCheckError as e:
        console.print(f"[red]check failed[/red]: {e}")
        return EXIT_CHECK_FAILED
    except LaminateError as e:
        console.print(f"[red]error[/red]: {e}")
        return EXIT_CHECK_FAILED
    finally:
        Config.restore(saved)
