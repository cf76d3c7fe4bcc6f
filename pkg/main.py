#!/usr/bin/env python3
"""
QFI Growth-Bound Toolkit - command line entry point

Runs a configured simulation against every QFI bound, regenerates the figure
data sets and runs the quick property suites.

Usage:
    python main.py run --config configs/dephasing_qubit.json
    python main.py fig1 --out output/fig1
    python main.py fig2 --out output/fig2
    python main.py selftest                     # all groups must pass
    python main.py selftest --rank-tol 1e-2     # continuity group fails
"""

import argparse
import logging
import sys
from pathlib import Path

import settings
from cli.figures import reproduce_fig1, reproduce_fig2
from cli.run_config import load_run_config
from cli.runner import run
from cli.selftest import selftest
from quantum_core.errors import BoundViolationError, ConfigError, ToolkitError

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_CONFIG = 2


def print_header(title: str):
    print("\n" + "=" * 80)
    print(title)
    print("=" * 80 + "\n")


def print_report(report) -> int:
    print("-" * 80)
    for check in report.checks:
        status = "✅" if check.passed else "❌"
        print(f"  {status} {check.name}: {check.detail}")
    print("-" * 80)
    if report.passed:
        print(f"\n✅ {report.title}: all {len(report.checks)} checks passed")
        return EXIT_OK
    names = ", ".join(c.name for c in report.failures)
    print(f"\n❌ {report.title}: failed checks: {names}")
    return EXIT_FAILED


def cmd_run(args) -> int:
    print_header("📊 QFI RUN")
    config = load_run_config(args.config)
    table = run(config)
    print(f"✅ {table.t.size} rows; dominance checks passed")
    for output in config.outputs:
        print(f"   • {output.csv_path}")
        if output.svg_path:
            print(f"   • {output.svg_path}")
    return EXIT_OK


def cmd_fig1(args) -> int:
    print_header("📊 FIGURE 1: QFI vs HLS bound curves")
    report = reproduce_fig1(Path(args.out))
    return print_report(report)


def cmd_fig2(args) -> int:
    print_header("📊 FIGURE 2: sensitivity vs detuning")
    report = reproduce_fig2(Path(args.out))
    return print_report(report)


def cmd_selftest(args) -> int:
    print_header("🔄 SELF TEST")
    report = selftest(rank_tol=args.rank_tol, seed=args.seed)
    return print_report(report)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        description="QFI growth-rate bounds for open quantum systems",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Examples:
  python main.py run --config configs/dephasing_qubit.json
  python main.py fig1 --out output/fig1
  python main.py fig2 --out output/fig2
  python main.py selftest --seed 7
        """,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="Simulate a configured scenario and write its bound table")
    p_run.add_argument("--config", required=True, help="Path to a JSON run config")
    p_run.set_defaults(handler=cmd_run)

    p_fig1 = sub.add_parser("fig1", help="Oscillator QFI and rate against the HLS curves")
    p_fig1.add_argument("--out", default=str(Path(settings.OUTPUT_DIR) / "fig1"), help="Output directory")
    p_fig1.set_defaults(handler=cmd_fig1)

    p_fig2 = sub.add_parser("fig2", help="Detuning sweeps and prepare-measure-reset sweeps")
    p_fig2.add_argument("--out", default=str(Path(settings.OUTPUT_DIR) / "fig2"), help="Output directory")
    p_fig2.set_defaults(handler=cmd_fig2)

    p_test = sub.add_parser("selftest", help="Quick property suites (exit 0 iff all pass)")
    p_test.add_argument("--rank-tol", type=float, default=settings.RANK_TOL, help="SLD rank tolerance")
    p_test.add_argument("--seed", type=int, default=settings.DEFAULT_SEED, help="Random seed")
    p_test.set_defaults(handler=cmd_selftest)
    return parser


def main(argv=None) -> int:
    logging.basicConfig(
        level=getattr(logging, settings.LOG_LEVEL.upper(), logging.INFO),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except ConfigError as e:
        print(f"❌ Config error: {e}")
        return EXIT_CONFIG
    except BoundViolationError as e:
        print(f"❌ Bound violation: {e}")
        return EXIT_FAILED
    except ToolkitError as e:
        print(f"❌ {type(e).__name__}: {e}")
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
