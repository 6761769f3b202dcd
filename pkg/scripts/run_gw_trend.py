#!/usr/bin/env python3
"""Two-ray fraction of window forests over branching-tree depth.

Compares the conditioned binary law, a 1/4-3/4 law, and the recurrent
integer-line control (free boundary).  Writes trend.csv / trend.json under
--out and prints the fraction table.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from cyclebreak.harness import ExperimentConfig, run


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/gw_trend")
    parser.add_argument("--seed", type=int, default=802)
    parser.add_argument("--depths", type=int, nargs="+", default=[4, 6, 8, 10])
    parser.add_argument("--replicas", type=int, default=500)
    parser.add_argument("--workers", type=int, default=None)
    parser.add_argument("--enforce", action="store_true",
                        help="fail when a trend expectation is broken")
    args = parser.parse_args(argv)

    params = {
        "rows": [
            {"label": "binary",
             "source": {"kind": "gw", "offspring": {"2": 1}},
             "survive": "depth", "expect": "nonincreasing"},
            {"label": "gw-1434",
             "source": {"kind": "gw", "offspring": {"0": "1/4", "2": "3/4"}},
             "survive": "depth", "expect": "nonincreasing"},
            {"label": "z-control",
             "source": {"kind": "lattice", "d": 1},
             "mode": "free", "expect": "all-one"},
        ],
        "depths": args.depths,
        "replicas": args.replicas,
        "enforce": args.enforce,
    }
    result = run(ExperimentConfig("gw-ends-trend", args.seed, args.out, params),
                 workers=args.workers)
    print(result.message)

    with open(os.path.join(args.out, "trend.json")) as fh:
        data = json.load(fh)
    for row in data["rows"]:
        cells = "  ".join(f"D={d}: {row['fractions'][d]:.3f}"
                          for d in sorted(row["fractions"], key=int))
        print(f"  {row['label']:<10} [{row['expect']}] "
              f"{'ok' if row['ok'] else 'BROKEN'}  {cells}")
    return 0 if data["all_ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
