"""Command-line front end.

Exit codes: 0 success, 2 config problem, 3 exhausted budget, 4 failed
certification, 5 failed statistical check.
"""

from __future__ import annotations

import argparse
import sys

from .errors import (
    BudgetExceeded,
    CertificationFailure,
    ConfigError,
    CycleBreakError,
    StatisticalFailure,
    StepBudgetExceeded,
)
from .harness import OPERATIONS, load_config, run

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_CERTIFICATION = 4
EXIT_STATISTICAL = 5


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cyclebreak",
        description="Sampling, dynamics, and exact certification for wired "
                    "spanning forests.")
    sub = parser.add_subparsers(dest="operation", required=True)
    for op in OPERATIONS:
        p = sub.add_parser(op, help=f"run the {op} operation")
        p.add_argument("--config", required=True, help="JSON config file")
        p.add_argument("--seed", type=int, default=None,
                       help="override the config's master seed")
        p.add_argument("--workers", type=int, default=None,
                       help="replica farm size (default: CYCLEBREAK_WORKERS or cpu count)")
        p.add_argument("--out", default=None,
                       help="override the config's output directory")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = load_config(args.config, operation=args.operation,
                             seed_override=args.seed, out_override=args.out)
        result = run(config, workers=args.workers)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (StepBudgetExceeded, BudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except CertificationFailure as exc:
        print(f"certification failed: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION
    except StatisticalFailure as exc:
        print(f"statistical check failed: {exc}", file=sys.stderr)
        return EXIT_STATISTICAL
    except CycleBreakError as exc:
        print(f"invalid input: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    print(result.message)
    for path in result.files:
        print(f"  wrote {path}")
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
