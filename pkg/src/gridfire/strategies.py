"""Strategy interface and the baseline players."""

from __future__ import annotations

import random
from typing import Protocol, Sequence

from .engine import SimView, StrategyError
from .grid import Point
from .trace import RunTrace


class Strategy(Protocol):
    identifier: str

    def next_placements(self, view: SimView, available: int) -> Sequence[Point]:
        """Placements for the upcoming squad; at most ``available``, all vacant."""
        ...


class NullStrategy:
    """Places nobody, ever."""

    identifier = "null"

    def next_placements(self, view: SimView, available: int) -> list[Point]:
        return []


class GreedyNearest:
    """Protects endangered points closest to the fire's centroid.

    Distance ties break row-major by (y, x).
    """

    identifier = "greedy"

    def next_placements(self, view: SimView, available: int) -> list[Point]:
        if available == 0:
            return []
        targets = view.endangered()
        if not targets:
            return []
        n = view.burnt_count
        sx, sy = view.burnt_sum

        def key(p: Point) -> tuple[int, int, int]:
            dx = n * p[0] - sx
            dy = n * p[1] - sy
            return (dx * dx + dy * dy, p[1], p[0])

        return sorted(targets, key=key)[:available]


class RandomStrategy:
    """Protects a uniform sample of the endangered points; fully seed-determined."""

    def __init__(self, seed: int):
        self.identifier = f"random:seed={seed}"
        self._rng = random.Random(seed)

    def next_placements(self, view: SimView, available: int) -> list[Point]:
        if available == 0:
            return []
        targets = sorted(view.endangered(), key=lambda p: (p[1], p[0]))
        if not targets:
            return []
        k = min(available, len(targets))
        return self._rng.sample(targets, k)


class ReplayStrategy:
    """Re-issues the placements recorded in a previous trace."""

    def __init__(self, trace: RunTrace):
        self.identifier = f"replay:{trace.strategy_id}"
        self._trace = trace

    def next_placements(self, view: SimView, available: int) -> list[Point]:
        t = view.round + 1
        if t > len(self._trace.rounds):
            return []
        rec = self._trace.rounds[t - 1]
        placed = list(rec.placed)
        for p in placed:
            if p in view.burnt or p in view.protected:
                raise StrategyError(
                    f"replayed placement {p} is illegal in the current state",
                    round_no=t,
                )
        return placed


def parse_strategy(spec: str, replay_loader=None):
    """Build a strategy from a CLI identifier like "contain:m=2,r=1" or "random:seed=7"."""
    from .wallplan import ContainmentStrategy, wall_plan  # local: avoids cycle

    kind, _, rest = spec.partition(":")
    if kind == "null":
        return NullStrategy()
    if kind == "greedy":
        return GreedyNearest()
    if kind == "random":
        params = _parse_params(rest)
        if "seed" not in params:
            raise ValueError("random strategy requires an explicit seed (random:seed=N)")
        return RandomStrategy(int(params["seed"]))
    if kind == "contain":
        params = _parse_params(rest)
        m = int(params.get("m", 1))
        r = int(params.get("r", 1))
        return ContainmentStrategy(wall_plan(m, r))
    if kind == "replay":
        params = _parse_params(rest)
        if "file" not in params:
            raise ValueError("replay strategy requires a file (replay:file=PATH)")
        if replay_loader is None:
            with open(params["file"], encoding="utf-8") as fp:
                trace = RunTrace.read(fp)
        else:
            trace = replay_loader(params["file"])
        return ReplayStrategy(trace)
    raise ValueError(f"unknown strategy spec: {spec!r}")


def _parse_params(rest: str) -> dict[str, str]:
    params: dict[str, str] = {}
    if rest:
        for item in rest.split(","):
            key, _, value = item.partition("=")
            if not value:
                raise ValueError(f"malformed strategy parameter: {item!r}")
            params[key.strip()] = value.strip()
    return params
