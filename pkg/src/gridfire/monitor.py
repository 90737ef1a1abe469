"""Front geometry and potential accounting for Cartesian-grid traces.

For each diagonal direction (sx, sy) with sx, sy in {+1, -1}, the front line
at a given instant is x*sx + y*sy = c, where c is the smallest nonnegative
offset whose whole line carries no burning point. The perimeter is the sum of
the four offsets. Endangered points lying on front lines carry potential:
weight 1 on a single line, 1/2 per line where two lines meet. A front is
active between consecutive instants when its offset moved (it moves by at
most 1).

Metrics are computed on the clock where instant t has squads 1..t placed but
only spreads 1..t-1 applied; instant 0 is the empty grid with the source
declared but not yet alight, where by convention the total potential is 1
(a quarter per direction).

The checks, per instant:

  A  potential of a front never exceeds its length (t >= 1);
  B  a front is frozen exactly when its potential is zero;
  C  while the perimeter is at least 2*supply - 1, total potential stays
     within half a unit of half the perimeter: 2*phi >= perimeter - 1.
     (The strict form phi > perimeter/2 is achievable with equality by legal
     play --- the start-up instant costs the argument its spare unit --- so
     the check asserts the threshold that actually holds.)
  D  under the same premise, opposite fronts never have zero joint potential;
  E  while the supply has stayed within (3t+1)/2, the perimeter is at least
     3t (so the fire cannot have been controlled);
  F  (diagnostic only) per-front potential versus 1/4 + offset - attributed
     supply; reported as signed slack, never failed.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable

from .grid import Point, Topology, neighbors
from .trace import MalformedTraceError, RunTrace, analysis_states

Direction = tuple[int, int]

DIRECTIONS: tuple[Direction, ...] = ((1, 1), (1, -1), (-1, 1), (-1, -1))

_HALF = Fraction(1, 2)
_QUARTER = Fraction(1, 4)


def front_offsets(burnt: Iterable[Point]) -> dict[Direction, int]:
    """Smallest offset per direction whose full line has no burning point.

    Scans upward from zero, honoring holes: an empty line below the burning
    region wins over one just beyond it.
    """
    pts = list(burnt)
    out: dict[Direction, int] = {}
    for sx, sy in DIRECTIONS:
        values = {x * sx + y * sy for x, y in pts}
        c = 0
        while c in values:
            c += 1
        out[(sx, sy)] = c
    return out


def front_lengths(offsets: dict[Direction, int]) -> dict[Direction, Fraction]:
    """Length of each front: half the sum of the two neighboring offsets."""
    return {
        (sx, sy): _HALF * (offsets[(sx, -sy)] + offsets[(-sx, sy)])
        for sx, sy in DIRECTIONS
    }


def perimeter(offsets: dict[Direction, int]) -> int:
    return sum(offsets.values())


def endangered_cartesian(burnt: set[Point], protected: set[Point]) -> set[Point]:
    out: set[Point] = set()
    for p in burnt:
        for q in neighbors(p, Topology.CARTESIAN):
            if q not in burnt and q not in protected:
                out.add(q)
    return out


def potentials(
    burnt: set[Point],
    protected: set[Point],
    offsets: dict[Direction, int] | None = None,
    endangered: set[Point] | None = None,
    pending_source: bool = False,
) -> tuple[dict[Direction, Fraction], Fraction]:
    """Per-front and total potential of the current state.

    With ``pending_source`` and nothing burnt, the declared source is the one
    endangered point and each front gets a quarter.
    """
    if not burnt:
        if pending_source:
            return {d: _QUARTER for d in DIRECTIONS}, Fraction(1)
        return {d: Fraction(0) for d in DIRECTIONS}, Fraction(0)
    if offsets is None:
        offsets = front_offsets(burnt)
    if endangered is None:
        endangered = endangered_cartesian(burnt, protected)
    # Accumulate in quarter units to stay in integer arithmetic.
    quarters = dict.fromkeys(DIRECTIONS, 0)
    total = 0
    c_pp = offsets[(1, 1)]
    c_pm = offsets[(1, -1)]
    c_mp = offsets[(-1, 1)]
    c_mm = offsets[(-1, -1)]
    for x, y in endangered:
        on = []
        if x + y == c_pp:
            on.append((1, 1))
        if x - y == c_pm:
            on.append((1, -1))
        if -x + y == c_mp:
            on.append((-1, 1))
        if -x - y == c_mm:
            on.append((-1, -1))
        if not on:
            continue
        total += 1
        share = 4 // len(on)
        for d in on:
            quarters[d] += share
    phi = {d: Fraction(q, 4) for d, q in quarters.items()}
    return phi, Fraction(total)


def activity(
    offsets_now: dict[Direction, int], offsets_next: dict[Direction, int]
) -> tuple[dict[Direction, int], int]:
    """Per-front active indicators between consecutive instants, and their sum."""
    act: dict[Direction, int] = {}
    for d in DIRECTIONS:
        diff = offsets_next[d] - offsets_now[d]
        if diff not in (0, 1):
            raise MalformedTraceError(
                f"front offset for {d} moved by {diff}; traces advance fronts "
                "by at most one per round"
            )
        act[d] = diff
    return act, sum(act.values())


@dataclass
class FrontMetrics:
    t: int
    offsets: dict[Direction, int]
    lengths: dict[Direction, Fraction]
    perimeter: int
    phi: dict[Direction, Fraction]
    phi_total: Fraction
    supply: int
    attributed: dict[Direction, int]
    active: dict[Direction, int] | None = None  # None on the final instant


@dataclass
class CheckResult:
    name: str
    passed: bool
    violations: list[tuple[int, str]] = field(default_factory=list)
    note: str | None = None


@dataclass
class MonitorReport:
    metrics: list[FrontMetrics]
    checks: dict[str, CheckResult]
    min_front_slack: Fraction | None = None

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks.values())

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "rounds": [
                {
                    "t": m.t,
                    "offsets": {f"{sx},{sy}": c for (sx, sy), c in m.offsets.items()},
                    "perimeter": m.perimeter,
                    "phi_total": str(m.phi_total),
                    "supply": m.supply,
                    "active": None
                    if m.active is None
                    else {f"{sx},{sy}": a for (sx, sy), a in m.active.items()},
                }
                for m in self.metrics
            ],
            "checks": {
                name: {
                    "passed": c.passed,
                    "violations": [[t, detail] for t, detail in c.violations],
                    "note": c.note,
                }
                for name, c in self.checks.items()
            },
            "min_front_slack": None
            if self.min_front_slack is None
            else str(self.min_front_slack),
        }

    def to_table(self) -> str:
        lines = ["    t  perim   phi      supply  active"]
        for m in self.metrics:
            act = "-" if m.active is None else "".join(str(v) for v in m.active.values())
            lines.append(
                f"{m.t:5d}  {m.perimeter:5d}  {str(m.phi_total):>7}  "
                f"{m.supply:6d}  {act}"
            )
        for name, c in sorted(self.checks.items()):
            status = "pass" if c.passed else "FAIL"
            extra = f" ({c.note})" if c.note else ""
            if c.violations:
                t0, detail = c.violations[0]
                extra += f" first violation at t={t0}: {detail}"
            lines.append(f"check {name}: {status}{extra}")
        return "\n".join(lines)


class _FrontTracker:
    """Incremental offsets/endangered bookkeeping while walking a trace."""

    def __init__(self) -> None:
        self.values: dict[Direction, dict[int, int]] = {d: {} for d in DIRECTIONS}
        self.offsets: dict[Direction, int] = {d: 0 for d in DIRECTIONS}
        self.endangered: set[Point] = set()

    def add_burnt(self, cells: Iterable[Point]) -> None:
        for x, y in cells:
            for d in DIRECTIONS:
                v = x * d[0] + y * d[1]
                counts = self.values[d]
                counts[v] = counts.get(v, 0) + 1
        for d in DIRECTIONS:
            counts = self.values[d]
            c = self.offsets[d]
            while c in counts:
                c += 1
            self.offsets[d] = c

    def update_endangered(
        self, new_burnt: Iterable[Point], burnt: set[Point], protected: set[Point]
    ) -> None:
        add = self.endangered.add
        for x, y in new_burnt:
            for q in ((x, y - 1), (x - 1, y), (x + 1, y), (x, y + 1)):
                if q not in burnt and q not in protected:
                    add(q)
        self.endangered -= burnt
        self.endangered -= protected


def check_invariants(trace: RunTrace, validate: bool = True) -> MonitorReport:
    """Walk a Cartesian trace and evaluate checks A-F on every instant."""
    if trace.topology is not Topology.CARTESIAN:
        raise ValueError("front metrics are defined on the Cartesian grid only")
    if validate:
        from .engine import replay_validate

        replay_validate(trace)

    tracker = _FrontTracker()
    metrics: list[FrontMetrics] = []
    unattributed: list[Point] = []
    attributed_cum = {d: 0 for d in DIRECTIONS}

    for t, burnt, protected, supply in analysis_states(trace):
        if t == 0:
            phi = {d: _QUARTER for d in DIRECTIONS}
            phi_total = Fraction(1)
            offsets = dict(tracker.offsets)
        else:
            new_cells = trace.initial if t == 1 else trace.rounds[t - 2].ignited
            tracker.add_burnt(new_cells)
            tracker.update_endangered(new_cells, burnt, protected)
            tracker.endangered -= set(trace.rounds[t - 1].placed)
            offsets = dict(tracker.offsets)
            phi, phi_total = potentials(
                burnt, protected, offsets=offsets, endangered=tracker.endangered
            )
            unattributed.extend(trace.rounds[t - 1].placed)
            still: list[Point] = []
            for q in unattributed:
                for d in DIRECTIONS:
                    if q[0] * d[0] + q[1] * d[1] == offsets[d]:
                        attributed_cum[d] += 1
                        break
                else:
                    still.append(q)
            unattributed = still
        metrics.append(
            FrontMetrics(
                t=t,
                offsets=offsets,
                lengths=front_lengths(offsets),
                perimeter=sum(offsets.values()),
                phi=dict(phi),
                phi_total=phi_total,
                supply=supply,
                attributed=dict(attributed_cum),
            )
        )

    for i in range(len(metrics) - 1):
        act, _ = activity(metrics[i].offsets, metrics[i + 1].offsets)
        metrics[i].active = act

    checks = {
        "A": CheckResult("A", True),
        "B": CheckResult("B", True),
        "C": CheckResult("C", True),
        "D": CheckResult("D", True),
        "E": CheckResult("E", True),
    }
    cap_ok = True
    cap_void_from: int | None = None
    min_slack: Fraction | None = None

    for m in metrics:
        t = m.t
        if t >= 1:
            for d in DIRECTIONS:
                if m.phi[d] > m.lengths[d]:
                    checks["A"].violations.append(
                        (t, f"phi{d}={m.phi[d]} > length {m.lengths[d]}")
                    )
            if m.active is not None:
                for d in DIRECTIONS:
                    if (m.active[d] == 0) != (m.phi[d] == 0):
                        checks["B"].violations.append(
                            (t, f"front {d} active={m.active[d]} but phi={m.phi[d]}")
                        )
        if m.perimeter >= 2 * m.supply - 1:
            if not (2 * m.phi_total >= m.perimeter - 1):
                checks["C"].violations.append(
                    (t, f"phi={m.phi_total} < (perimeter-1)/2 = ({m.perimeter}-1)/2")
                )
            for sx, sy in ((1, 1), (1, -1)):
                joint = m.phi[(sx, sy)] + m.phi[(-sx, -sy)]
                if not joint > 0:
                    checks["D"].violations.append(
                        (t, f"opposing fronts ({sx},{sy})/({-sx},{-sy}) both at zero")
                    )
        if cap_ok and 2 * m.supply > 3 * t + 1:
            cap_ok = False
            cap_void_from = t
        if cap_ok and m.perimeter < 3 * t:
            checks["E"].violations.append(
                (t, f"perimeter {m.perimeter} < {3 * t}")
            )
        if t >= 1:
            for d in DIRECTIONS:
                slack = m.phi[d] - (_QUARTER + m.offsets[d] - m.attributed[d])
                if min_slack is None or slack < min_slack:
                    min_slack = slack

    for c in checks.values():
        c.passed = not c.violations
    if cap_void_from is not None:
        checks["E"].note = f"precondition void from t={cap_void_from}"
    return MonitorReport(metrics=metrics, checks=checks, min_front_slack=min_slack)
