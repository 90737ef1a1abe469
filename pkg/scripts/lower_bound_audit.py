"""Audit the perimeter-growth machinery on adversarial baseline runs.

Runs greedy and a spread of seeded-random players under the tight budgets
(2,1 alternating; 1,2; constant 1) and prints a one-line verdict per run.
"""

import sys

from gridfire.budget import constant, periodic
from gridfire.engine import FireState, run
from gridfire.grid import Topology
from gridfire.monitor import check_invariants
from gridfire.strategies import GreedyNearest, RandomStrategy


def main(seeds: int = 10, horizon: int = 200) -> int:
    initial = FireState(
        burnt=frozenset({(0, 0)}), protected=frozenset(), round=0,
        topology=Topology.CARTESIAN,
    )
    budgets = {
        "periodic:2,1": periodic([2, 1]),
        "periodic:1,2": periodic([1, 2]),
        "const:1": constant(1),
    }
    bad = 0
    for name, budget in budgets.items():
        players = [GreedyNearest()] + [RandomStrategy(s) for s in range(seeds)]
        for strat in players:
            trace = run(initial, budget, strat, horizon)
            report = check_invariants(trace, validate=False)
            ok = report.ok and trace.status != "controlled"
            final = report.metrics[-1]
            print(f"{name:14s} {strat.identifier:16s} "
                  f"perimeter(T)={final.perimeter:4d} "
                  f"{'ok' if ok else 'VIOLATION'}")
            bad += 0 if ok else 1
    return 1 if bad else 0


if __name__ == "__main__":
    seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 10
    sys.exit(main(seeds))
