#!/usr/bin/env python3
"""Integrate every bundled dynamics scenario and report its settled outcome.

Usage: python scripts/scenario_report.py [--tol 0.01]
"""

import argparse

from jurylearn import classify_outcome, integrate, list_scenarios, load_scenario


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--tol", type=float, default=0.01, help="settled/cluster tolerance")
    args = parser.parse_args()
    for name in list_scenarios():
        traj = integrate(load_scenario(name))
        outcome = classify_outcome(traj, args.tol)
        clusters = ", ".join(
            f"voters {','.join(map(str, c.members))} at {c.value:.3f}" for c in outcome.clusters
        )
        final_group = traj.group_curve[-1]
        print(f"{name:22s} {outcome.kind.value:15s} group P = {final_group:.4f}  [{clusters}]")


if __name__ == "__main__":
    main()
