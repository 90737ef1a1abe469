"""Search for the smallest containment with two firefighters per round.

Looks for a containment burning fewer than 19 cells within 8 rounds and, when
found, renders the final configuration.
"""

import sys

from gridfire.budget import constant
from gridfire.grid import Topology
from gridfire.render import render_text, state_at_round
from gridfire.search import SearchConfig, min_burnt_search


def main() -> int:
    cfg = SearchConfig(
        topology=Topology.CARTESIAN,
        source=frozenset({(0, 0)}),
        budget=constant(2),
        horizon=8,
        candidate_distance=2,
        node_cap=5_000_000,
        initial_bound=19,
    )
    res = min_burnt_search(cfg)
    print(f"outcome: {res.outcome} (nodes {res.nodes})")
    if res.witness is None:
        print("no witness found within the node cap")
        return 1
    print(f"burnt cells: {res.min_burnt}, controlled at round "
          f"{res.witness.control_round}")
    burnt, protected = state_at_round(res.witness, res.witness.final_round())
    xs = [p[0] for p in burnt | protected]
    ys = [p[1] for p in burnt | protected]
    window = (min(xs) - 1, max(xs) + 1, min(ys) - 1, max(ys) + 1)
    print(render_text(burnt, protected, window))
    return 0


if __name__ == "__main__":
    sys.exit(main())
