"""Lattice geometry: points, the three grid topologies, metric balls, skew map."""

from __future__ import annotations

from enum import Enum

Point = tuple[int, int]

# Simulations are expected to stay far below this; anything beyond signals a
# runaway loop or corrupt input, so we fail loudly instead of wrapping.
COORD_LIMIT = 2**31


class Topology(Enum):
    CARTESIAN = "cartesian"  # 4-regular, adjacency at l1 distance 1
    STRONG = "strong"  # 8-regular, adjacency at linf distance 1
    TRIANGULAR = "triangular"  # 6-regular, between the other two


# Offsets sorted row-major by (dy, dx) so neighbor iteration is deterministic.
_OFFSETS: dict[Topology, tuple[Point, ...]] = {
    Topology.CARTESIAN: ((0, -1), (-1, 0), (1, 0), (0, 1)),
    Topology.STRONG: (
        (-1, -1), (0, -1), (1, -1),
        (-1, 0), (1, 0),
        (-1, 1), (0, 1), (1, 1),
    ),
    # Cartesian offsets plus one diagonal pair; this embedding keeps integer
    # coordinates and sits between the Cartesian and strong neighborhoods.
    Topology.TRIANGULAR: ((-1, -1), (0, -1), (-1, 0), (1, 0), (0, 1), (1, 1)),
}
_OFFSETS = {
    topo: tuple(sorted(offs, key=lambda d: (d[1], d[0])))
    for topo, offs in _OFFSETS.items()
}


def neighbors(p: Point, topo: Topology) -> tuple[Point, ...]:
    """Adjacent points of ``p`` under ``topo``, in row-major (y, x) order."""
    x, y = p
    if not (-COORD_LIMIT < x < COORD_LIMIT and -COORD_LIMIT < y < COORD_LIMIT):
        raise OverflowError(f"coordinate out of supported range: {p}")
    return tuple((x + dx, y + dy) for dx, dy in _OFFSETS[topo])


def ball(center: Point, radius: int, metric: str) -> frozenset[Point]:
    """All points within ``radius`` of ``center`` in the given metric ("l1" or "linf")."""
    if radius < 0:
        raise ValueError("radius must be nonnegative")
    cx, cy = center
    pts: set[Point] = set()
    if metric == "linf":
        for dy in range(-radius, radius + 1):
            for dx in range(-radius, radius + 1):
                pts.add((cx + dx, cy + dy))
    elif metric == "l1":
        for dy in range(-radius, radius + 1):
            span = radius - abs(dy)
            for dx in range(-span, span + 1):
                pts.add((cx + dx, cy + dy))
    else:
        raise ValueError(f"unknown metric: {metric!r}")
    return frozenset(pts)


def skew_map(p: Point) -> Point:
    """Map (x, y) to (x+y, x-y).

    Injective; turns l1 distance into linf distance, and its image is exactly
    the points with even coordinate sum.
    """
    x, y = p
    return (x + y, x - y)


def is_even_point(p: Point) -> bool:
    """True when the coordinate sum is even."""
    return (p[0] + p[1]) % 2 == 0
