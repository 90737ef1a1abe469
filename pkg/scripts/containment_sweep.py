"""Sweep the containment strategy over (m, r) cells and print the table.

Each cell runs with the matched periodic budget (one 4, then m-1 threes) and
reports the control round and final fire dimensions against their bounds.
"""

import sys

from gridfire.cli import main

if __name__ == "__main__":
    jobs = sys.argv[1] if len(sys.argv) > 1 else "1"
    sys.exit(main(["sweep", "--m", "1,2,3", "--r", "1,2,3", "--jobs", jobs]))
