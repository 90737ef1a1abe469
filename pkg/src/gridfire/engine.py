"""The spreading process: states, the place-then-spread step, and the run loop.

A round does two things in fixed order: the next squad of firefighters is
placed, then the fire spreads to every unprotected, unburnt neighbor of a
burning point. Round 0 is the freshly ignited source; after k rounds the
free-burning fire from a single point occupies the metric ball of radius k.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .budget import Budget
from .grid import _OFFSETS, Point, Topology, neighbors
from .trace import MalformedTraceError, RoundRecord, RunTrace


class SimulationError(Exception):
    pass


class PlacementError(SimulationError):
    """An illegal placement; ``point`` identifies the offender when applicable."""

    def __init__(self, message: str, point: Point | None = None):
        self.point = point
        super().__init__(message if point is None else f"{message}: {point}")


class StrategyError(SimulationError):
    """A strategy cannot honor its own contract (e.g. a wall deadline passed)."""

    def __init__(self, message: str, round_no: int | None = None):
        self.round_no = round_no
        where = f" at round {round_no}" if round_no is not None else ""
        super().__init__(message + where)


@dataclass(frozen=True)
class FireState:
    burnt: frozenset[Point]
    protected: frozenset[Point]
    round: int
    topology: Topology

    def __post_init__(self) -> None:
        if self.burnt & self.protected:
            raise SimulationError("burnt and protected sets overlap")


def endangered(state: FireState) -> set[Point]:
    """Unburnt, unprotected points adjacent to a burning point."""
    out: set[Point] = set()
    for p in state.burnt:
        for q in neighbors(p, state.topology):
            if q not in state.burnt and q not in state.protected:
                out.add(q)
    return out


def is_controlled(state: FireState) -> bool:
    """True when the fire has nowhere left to spread."""
    return not endangered(state)


def _validate_placements(
    placements: Sequence[Point],
    burnt: Iterable[Point],
    protected: Iterable[Point],
    available: int,
) -> None:
    if len(placements) > available:
        raise PlacementError(
            f"{len(placements)} placements exceed the {available} available"
        )
    seen: set[Point] = set()
    burnt_set = burnt if isinstance(burnt, (set, frozenset)) else set(burnt)
    prot_set = protected if isinstance(protected, (set, frozenset)) else set(protected)
    for p in placements:
        if p in seen:
            raise PlacementError("duplicate placement", p)
        if p in burnt_set:
            raise PlacementError("placement on a burnt point", p)
        if p in prot_set:
            raise PlacementError("placement on a protected point", p)
        seen.add(p)


def step(state: FireState, placements: Sequence[Point], budget: Budget) -> FireState:
    """Advance one round: place the next squad, then spread the fire."""
    t_next = state.round + 1
    _validate_placements(placements, state.burnt, state.protected, budget.at(t_next))
    protected = state.protected | set(placements)
    ignited = {
        q
        for p in state.burnt
        for q in neighbors(p, state.topology)
        if q not in state.burnt and q not in protected
    }
    return FireState(
        burnt=state.burnt | ignited,
        protected=protected,
        round=t_next,
        topology=state.topology,
    )


class SimView:
    """Read-only window onto a running simulation, handed to strategies."""

    __slots__ = ("topology", "round", "burnt", "protected", "frontier",
                 "burnt_count", "burnt_sum")

    def __init__(self, topology: Topology, burnt: set[Point], protected: set[Point],
                 frontier: set[Point], round_no: int, burnt_sum: tuple[int, int]):
        self.topology = topology
        self.burnt = burnt
        self.protected = protected
        self.frontier = frontier
        self.round = round_no
        self.burnt_count = len(burnt)
        self.burnt_sum = burnt_sum

    def endangered(self) -> set[Point]:
        # Any unburnt cell adjacent to an old burnt cell either burned or was
        # protected already, so scanning the last wave suffices.
        offsets = _OFFSETS[self.topology]
        burnt = self.burnt
        protected = self.protected
        out: set[Point] = set()
        for x, y in self.frontier:
            for dx, dy in offsets:
                q = (x + dx, y + dy)
                if q not in burnt and q not in protected:
                    out.add(q)
        return out


def run(
    initial: FireState,
    budget: Budget,
    strategy,
    horizon: int,
    seed: int | None = None,
) -> RunTrace:
    """Drive the process for up to ``horizon`` rounds or until controlled.

    Strategy failures (illegal placements, missed wall deadlines) terminate
    the trace with status "strategy-error" rather than propagating.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    trace = RunTrace(
        topology=initial.topology,
        initial=tuple(sorted(initial.burnt, key=lambda p: (p[1], p[0]))),
        budget_desc=budget.describe(),
        strategy_id=getattr(strategy, "identifier", "unknown"),
        seed=seed,
    )
    burnt = set(initial.burnt)
    protected = set(initial.protected)
    frontier = set(initial.burnt)
    sx = sum(p[0] for p in burnt)
    sy = sum(p[1] for p in burnt)
    topo = initial.topology
    offsets = _OFFSETS[topo]

    reset = getattr(strategy, "reset", None)
    if reset is not None:
        try:
            reset(initial)
        except SimulationError as exc:
            trace.status = "strategy-error"
            trace.error = f"round {initial.round}: {exc}"
            return trace

    view = SimView(topo, burnt, protected, frontier, initial.round, (sx, sy))
    if not view.endangered():
        trace.status = "controlled"
        trace.control_round = initial.round
        return trace

    for t in range(initial.round + 1, initial.round + horizon + 1):
        f_t = budget.at(t)
        view = SimView(topo, burnt, protected, frontier, t - 1, (sx, sy))
        try:
            placements = list(strategy.next_placements(view, f_t))
            _validate_placements(placements, burnt, protected, f_t)
        except SimulationError as exc:
            trace.status = "strategy-error"
            trace.error = f"round {t}: {exc}"
            return trace
        protected.update(placements)
        ignited = set()
        for x, y in frontier:
            for dx, dy in offsets:
                q = (x + dx, y + dy)
                if q not in burnt and q not in protected:
                    ignited.add(q)
        burnt.update(ignited)
        for (x, y) in ignited:
            sx += x
            sy += y
        frontier = ignited
        trace.rounds.append(
            RoundRecord(
                t=t,
                f=f_t,
                placed=tuple(placements),
                ignited=tuple(sorted(ignited, key=lambda p: (p[1], p[0]))),
            )
        )
        still_endangered = False
        for x, y in frontier:
            for dx, dy in offsets:
                q = (x + dx, y + dy)
                if q not in burnt and q not in protected:
                    still_endangered = True
                    break
            if still_endangered:
                break
        if not still_endangered:
            trace.status = "controlled"
            trace.control_round = t
            return trace
    trace.status = "horizon"
    return trace


def replay_validate(trace: RunTrace) -> None:
    """Re-run a trace's placements and check every record is reproduced.

    Raises MalformedTraceError (with the offending line) when the recorded
    ignitions do not match the process dynamics, e.g. a teleporting fire.
    """
    burnt = set(trace.initial)
    protected: set[Point] = set()
    frontier = set(trace.initial)
    offsets = _OFFSETS[trace.topology]
    for i, rec in enumerate(trace.rounds):
        line = i + 2  # header is line 1
        try:
            _validate_placements(rec.placed, burnt, protected, rec.f)
        except PlacementError as exc:
            raise MalformedTraceError(str(exc), line=line) from exc
        protected.update(rec.placed)
        ignited = set()
        for x, y in frontier:
            for dx, dy in offsets:
                q = (x + dx, y + dy)
                if q not in burnt and q not in protected:
                    ignited.add(q)
        if ignited != set(rec.ignited):
            raise MalformedTraceError(
                f"round {rec.t}: recorded ignitions do not match the spread rule",
                line=line,
            )
        burnt.update(ignited)
        frontier = ignited
