"""Command-line interface: run, monitor, reduce, search, sweep, render.

Exit codes: 0 success, 1 invariant or containment failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .budget import Budget, containment_budget, parse_budget
from .engine import FireState, run
from .grid import Topology, ball
from .monitor import check_invariants
from .reduction import run_reduction
from .render import render_pgm, render_text, state_at_round
from .search import SearchConfig, exhaustive_search, min_burnt_search
from .strategies import parse_strategy
from .trace import MalformedTraceError, RunTrace
from .wallplan import ContainmentStrategy, wall_plan


@dataclasses.dataclass
class ExperimentConfig:
    topology: str = "cartesian"
    center: tuple[int, int] = (0, 0)
    radius: int = 0
    source_metric: str | None = None  # default: the topology's own metric
    budget: str = "const:0"
    strategy: str = "null"
    horizon: int = 10
    seed: int | None = None
    out: str | None = None

    def to_json(self) -> str:
        d = dataclasses.asdict(self)
        d["center"] = list(self.center)
        return json.dumps(d, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ExperimentConfig":
        d = json.loads(text)
        d["center"] = tuple(d["center"])
        return cls(**d)

    def initial_state(self) -> FireState:
        topo = Topology(self.topology)
        metric = self.source_metric
        if metric is None:
            metric = "linf" if topo is not Topology.CARTESIAN else "l1"
        return FireState(
            burnt=ball(self.center, self.radius, metric),
            protected=frozenset(),
            round=0,
            topology=topo,
        )


def _budget_or_die(spec: str) -> Budget:
    try:
        return parse_budget(spec)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        raise SystemExit(2)


def cmd_run(args: argparse.Namespace) -> int:
    if args.config:
        cfg = ExperimentConfig.from_json(Path(args.config).read_text())
    else:
        cfg = ExperimentConfig(
            topology=args.topology,
            center=tuple(int(v) for v in args.center.split(",")),
            radius=args.radius,
            source_metric=args.source_metric,
            budget=args.budget,
            strategy=args.strategy,
            horizon=args.horizon,
            seed=args.seed,
            out=args.out,
        )
    budget = _budget_or_die(cfg.budget)
    try:
        strategy = parse_strategy(cfg.strategy)
    except (ValueError, OSError, MalformedTraceError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    trace = run(cfg.initial_state(), budget, strategy, cfg.horizon, seed=cfg.seed)
    if cfg.out:
        with open(cfg.out, "w", encoding="utf-8") as fp:
            trace.write(fp)
    burnt = trace.burnt_through(trace.final_round())
    xs = [p[0] for p in burnt]
    ys = [p[1] for p in burnt]
    bbox = (min(xs), max(xs), min(ys), max(ys))
    if trace.status == "controlled":
        print(f"controlled at round {trace.control_round}")
    elif trace.status == "horizon":
        print(f"horizon reached at round {trace.final_round()}")
    else:
        print(f"strategy error: {trace.error}")
    print(f"burnt cells: {len(burnt)}")
    print(f"bounding box: x in [{bbox[0]}, {bbox[1]}], y in [{bbox[2]}, {bbox[3]}]")
    return 1 if trace.status == "strategy-error" else 0


def cmd_monitor(args: argparse.Namespace) -> int:
    try:
        with open(args.trace, encoding="utf-8") as fp:
            trace = RunTrace.read(fp)
        report = check_invariants(trace)
    except MalformedTraceError as exc:
        print(f"malformed trace: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(report.to_json(), indent=2))
    print(report.to_table())
    return 0 if report.ok else 1


def cmd_reduce(args: argparse.Namespace) -> int:
    budget = _budget_or_die(args.budget)
    try:
        strategy = parse_strategy(args.strategy)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if not isinstance(strategy, ContainmentStrategy):
        print("error: reduce expects a strong-grid containment strategy",
              file=sys.stderr)
        return 2
    r = strategy.plan.r
    m = strategy.plan.m
    horizon = args.horizon or (12 * r * m * m + 30 * r * m + 5)
    report = run_reduction(strategy, budget, r, horizon)
    ok = True
    t_strong = report.strong_control_round
    print(f"strong grid: status={report.strong_trace.status} "
          f"control_round={t_strong}")
    for o in report.outcomes:
        print(
            f"cartesian source radius {o.source_radius}: "
            f"controlled={o.controlled} control_round={o.control_round} "
            f"placements_even={o.placements_all_even} "
            f"ignition_parity={o.ignition_parity_ok}"
        )
    if not report.strong_controlled:
        print("strong-grid strategy failed; reduction inherits the failure")
        return 1
    primary = report.outcomes[0]  # doubled source radius: the faithful game
    if primary.controlled and t_strong is not None:
        # On the analysis clock (round + 1) the slowdown is exactly twofold.
        lhs = primary.control_round + 1
        rhs = 2 * (t_strong + 1)
        print(f"analysis-clock rounds: cartesian {lhs} vs 2x strong {rhs}")
        ok = lhs <= rhs and primary.placements_all_even and primary.ignition_parity_ok
    else:
        ok = False
    return 0 if ok else 1


def cmd_search(args: argparse.Namespace) -> int:
    budget = _budget_or_die(args.budget)
    topo = Topology(args.topology)
    metric = "l1" if topo is Topology.CARTESIAN else "linf"
    cfg = SearchConfig(
        topology=topo,
        source=ball((0, 0), args.radius, metric),
        budget=budget,
        horizon=args.horizon,
        candidate_distance=None if args.unrestricted else args.distance,
        symmetry=not args.no_symmetry,
        node_cap=args.node_cap,
        initial_bound=args.bound,
    )
    if args.objective == "min-burnt":
        res = min_burnt_search(cfg)
    else:
        res = exhaustive_search(cfg)
    out = {
        "outcome": res.outcome,
        "nodes": res.nodes,
        "min_final_perimeter": res.min_final_perimeter,
        "min_burnt": res.min_burnt,
        "note": res.note,
    }
    print(json.dumps(out))
    if res.witness and args.witness_out:
        with open(args.witness_out, "w", encoding="utf-8") as fp:
            res.witness.write(fp)
    return 0


def _sweep_cell(cell: tuple[int, int]) -> dict:
    m, r = cell
    budget = containment_budget(m)
    plan = wall_plan(m, r)
    initial = FireState(
        burnt=ball((0, 0), r, "linf"),
        protected=frozenset(),
        round=0,
        topology=Topology.STRONG,
    )
    bound_round = 12 * r * m * m + 30 * r * m
    trace = run(initial, budget, ContainmentStrategy(plan), bound_round + 5)
    burnt = trace.burnt_through(trace.final_round())
    xs = [p[0] for p in burnt]
    ys = [p[1] for p in burnt]
    width = max(xs) - min(xs) + 1
    height = max(ys) - min(ys) + 1
    controlled = trace.status == "controlled"
    return {
        "m": m,
        "r": r,
        "status": trace.status,
        "control_round": trace.control_round,
        "round_bound": bound_round,
        "width": width,
        "width_bound": 6 * r * m * m + 16 * r * m + 2 * r,
        "height": height,
        "height_bound": bound_round + 3 * r - 1,
        "round_ok": controlled and trace.control_round <= bound_round,
        "width_ok": width <= 6 * r * m * m + 16 * r * m + 2 * r,
        "height_ok": height <= bound_round + 3 * r - 1,
    }


def cmd_sweep(args: argparse.Namespace) -> int:
    ms = [int(v) for v in args.m.split(",")] if args.m else []
    rs = [int(v) for v in args.r.split(",")] if args.r else []
    cells = [(m, r) for m in ms for r in rs]
    if not cells:
        print("empty sweep")
        return 0
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            rows = list(pool.map(_sweep_cell, cells))
    else:
        rows = [_sweep_cell(c) for c in cells]
    print("  m  r  status      T   T<=   width/bound  height/bound")
    for row in rows:
        print(
            f"{row['m']:3d} {row['r']:2d}  {row['status']:<10} "
            f"{str(row['control_round']):>4} {row['round_bound']:5d}  "
            f"{row['width']:5d}/{row['width_bound']:<5d}  "
            f"{row['height']:5d}/{row['height_bound']:<5d}"
        )
    if args.json_out:
        Path(args.json_out).write_text(json.dumps(rows, indent=2))
    return 0


def cmd_render(args: argparse.Namespace) -> int:
    try:
        with open(args.trace, encoding="utf-8") as fp:
            trace = RunTrace.read(fp)
    except MalformedTraceError as exc:
        print(f"malformed trace: {exc}", file=sys.stderr)
        return 2
    try:
        burnt, protected = state_at_round(trace, args.round)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    window = tuple(int(v) for v in args.window.split(","))
    if len(window) != 4:
        print("error: window must be xmin,xmax,ymin,ymax", file=sys.stderr)
        return 2
    if args.pgm:
        Path(args.pgm).write_text(render_pgm(burnt, protected, window))
    else:
        print(render_text(burnt, protected, window))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gridfire",
        description="Firefighter-problem simulation and verification on planar grids",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="simulate one scenario and write a trace")
    p.add_argument("--config", help="JSON experiment config (overrides flags)")
    p.add_argument("--topology", default="cartesian",
                   choices=[t.value for t in Topology])
    p.add_argument("--center", default="0,0")
    p.add_argument("--radius", type=int, default=0)
    p.add_argument("--source-metric", choices=["l1", "linf"], default=None)
    p.add_argument("--budget", default="const:0")
    p.add_argument("--strategy", default="null")
    p.add_argument("--horizon", type=int, default=10)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--out", default=None, help="trace output path (JSON lines)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("monitor", help="check front invariants on a trace")
    p.add_argument("--trace", required=True)
    p.add_argument("--json-out", default=None)
    p.set_defaults(func=cmd_monitor)

    p = sub.add_parser("reduce", help="map a strong-grid strategy onto the Cartesian grid")
    p.add_argument("--strategy", required=True, help="e.g. contain:m=1,r=1")
    p.add_argument("--budget", required=True)
    p.add_argument("--horizon", type=int, default=None)
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("search", help="game-tree search over placements")
    p.add_argument("--topology", default="cartesian",
                   choices=[t.value for t in Topology])
    p.add_argument("--radius", type=int, default=0)
    p.add_argument("--budget", required=True)
    p.add_argument("--horizon", type=int, required=True)
    p.add_argument("--distance", type=int, default=2)
    p.add_argument("--unrestricted", action="store_true")
    p.add_argument("--no-symmetry", action="store_true")
    p.add_argument("--node-cap", type=int, default=100_000_000)
    p.add_argument("--bound", type=int, default=None,
                   help="only look for containments burning fewer cells than this")
    p.add_argument("--objective", choices=["exhaust", "min-burnt"],
                   default="exhaust")
    p.add_argument("--witness-out", default=None)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("sweep", help="containment parameter sweep")
    p.add_argument("--m", default="1,2,3")
    p.add_argument("--r", default="1,2,3")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--json-out", default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("render", help="snapshot a trace round as text or PGM")
    p.add_argument("--trace", required=True)
    p.add_argument("--round", type=int, required=True)
    p.add_argument("--window", required=True, help="xmin,xmax,ymin,ymax")
    p.add_argument("--pgm", default=None)
    p.set_defaults(func=cmd_render)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # argparse exits 2 on usage errors
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
