#!/usr/bin/env python3
"""Certify the whole fixture corpus and the three-ends construction.

Writes certificates.json / summary.csv plus three_ends.json under --out and
prints one line per fixture.  Exits nonzero if any certificate fails.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from cyclebreak.harness import ExperimentConfig, run


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/certification")
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--samples", type=int, default=10**4,
                        help="sampled events per edge on large state spaces")
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args(argv)

    result = run(ExperimentConfig("certify", args.seed, args.out,
                                  {"samples": args.samples}),
                 workers=args.workers)
    print(result.message)
    with open(os.path.join(args.out, "certificates.json")) as fh:
        data = json.load(fh)
    for fixture in data["fixtures"]:
        worst = max((abs(float(r["n_events"])) for r in fixture["tolerance"]),
                    default=0)
        print(f"  {fixture['name']}: {fixture['n_states']} states, "
              f"{len(fixture['tolerance'])} edge orientations, "
              f"max events {worst:g}")

    result = run(ExperimentConfig("three-ends", args.seed, args.out, {}),
                 workers=args.workers)
    print(result.message)
    return 0


if __name__ == "__main__":
    sys.exit(main())
