#!/usr/bin/env python3
"""Reproduce the reversibility counterexample diagnostics.

Classifies doubly rooted samples under the conductance root law and the
tree-only negative control, then checks that interior added-path edges stay
in sampled window forests.  Writes classes.csv / reversibility.json per law
under --out.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from cyclebreak.harness import (
    ExperimentConfig,
    example52_membership_check,
    run,
)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default="results/example52")
    parser.add_argument("--seed", type=int, default=701)
    parser.add_argument("--samples", type=int, default=10**5)
    parser.add_argument("--membership-samples", type=int, default=100)
    parser.add_argument("--depth", type=int, default=6,
                        help="tree radius of the membership window")
    args = parser.parse_args(argv)

    for law in ("conductance", "tree-only"):
        out = os.path.join(args.out, law.replace("-", "_"))
        result = run(ExperimentConfig("reversibility", args.seed, out, {
            "samples": args.samples, "root_law": law}), workers=1)
        print(result.message)
        with open(os.path.join(out, "reversibility.json")) as fh:
            data = json.load(fh)
        line = (f"  {law}: swap symmetric {data['swap_symmetric']}"
                f" (max pair z {data['max_pair_z']:.2f})")
        if law == "conductance":
            line += f", matches exact law {data['matches_exact']}"
        print(line)

    report = example52_membership_check(args.membership_samples, args.depth,
                                        seed=args.seed)
    print(f"window membership: {report.n_samples} samples, "
          f"{report.n_edges_checked} interior path edges, "
          f"{report.violations} violations")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
