"""Shared oracles and helpers for the test suite."""

from __future__ import annotations

from collections import deque

import pytest

from gridfire.engine import FireState
from gridfire.grid import Point, Topology, neighbors


def bfs_ball(center: Point, radius: int, topo: Topology) -> set[Point]:
    """Breadth-first expansion oracle, independent of the closed-form ball."""
    seen = {center}
    frontier = deque([(center, 0)])
    while frontier:
        p, d = frontier.popleft()
        if d == radius:
            continue
        for q in neighbors(p, topo):
            if q not in seen:
                seen.add(q)
                frontier.append((q, d + 1))
    return seen


def single_source(topo: Topology = Topology.CARTESIAN) -> FireState:
    return FireState(
        burnt=frozenset({(0, 0)}),
        protected=frozenset(),
        round=0,
        topology=topo,
    )


@pytest.fixture
def origin_cartesian() -> FireState:
    return single_source(Topology.CARTESIAN)


@pytest.fixture
def origin_strong() -> FireState:
    return single_source(Topology.STRONG)
