"""Text and graymap snapshots of simulation states."""

from __future__ import annotations

from .grid import Point
from .trace import RunTrace


def render_text(
    burnt: set[Point],
    protected: set[Point],
    window: tuple[int, int, int, int],
) -> str:
    """Character grid over window = (xmin, xmax, ymin, ymax); top row is ymax."""
    xmin, xmax, ymin, ymax = window
    rows = []
    for y in range(ymax, ymin - 1, -1):
        row = []
        for x in range(xmin, xmax + 1):
            if (x, y) in burnt:
                row.append("#")
            elif (x, y) in protected:
                row.append("F")
            else:
                row.append(".")
        rows.append("".join(row))
    return "\n".join(rows)


def render_pgm(
    burnt: set[Point],
    protected: set[Point],
    window: tuple[int, int, int, int],
) -> str:
    """Plain (P2) graymap, three levels: empty 255, protected 128, burnt 0."""
    xmin, xmax, ymin, ymax = window
    width = xmax - xmin + 1
    height = ymax - ymin + 1
    lines = [f"P2 {width} {height} 255"]
    for y in range(ymax, ymin - 1, -1):
        vals = []
        for x in range(xmin, xmax + 1):
            if (x, y) in burnt:
                vals.append("0")
            elif (x, y) in protected:
                vals.append("128")
            else:
                vals.append("255")
        lines.append(" ".join(vals))
    return "\n".join(lines) + "\n"


def state_at_round(trace: RunTrace, t: int) -> tuple[set[Point], set[Point]]:
    """(burnt, protected) at the end of round t of a trace; t=0 is the start."""
    if t < 0 or t > trace.final_round():
        raise ValueError(f"round {t} outside trace range 0..{trace.final_round()}")
    burnt = set(trace.initial)
    protected: set[Point] = set()
    for rec in trace.rounds[:t]:
        protected.update(rec.placed)
        burnt.update(rec.ignited)
    return burnt, protected
