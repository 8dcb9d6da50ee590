"""Command-line front end.

    stackprice solve --algo {single-price,stackvc,stackvc2,exact} [--epsilon Q] FILE
    stackprice analyze [--follower N] FILE
    stackprice gen {harmonic,single-minded,unit-demand,random} [params] [-o FILE]
    stackprice bench DIR [--epsilon Q] [--limit N] [--out FILE]

Exit codes: 0 ok, 1 usage error, 2 instance/validation error, 3 oracle limit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from .analysis import full_profile, parametric_profile, profile_table, revenue_upper_bound
from .core.exact import INF, format_both, format_number, parse_number
from .core.io import instance_digest, load_instance, serialize_instance
from .core.model import VERTEX_COVER, VERTEX_GAME, Instance, InstanceError, UnsupportedError
from .core.validate import validate
from .instances import RandomParams, gen_from_single_minded, gen_from_unit_demand, gen_harmonic, gen_random
from .oracle import DEFAULT_TUPLE_LIMIT, OracleLimitError, exact_optimum
from .report import SolveReport, _jsonable
from .singleprice import delta_upper_bound, guarantee_factor, run_single_price
from .stackvc import bipartition, solve_one_sided, solve_two_sided

EXIT_OK, EXIT_USAGE, EXIT_INSTANCE, EXIT_LIMIT = 0, 1, 2, 3
DEFAULT_EPSILON = Fraction(1, 4)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


@dataclass
class RunRecord:
    digest: Optional[str]
    command: str
    parameters: dict[str, Any]
    revenues: dict[str, Any] = field(default_factory=dict)
    bounds: dict[str, Any] = field(default_factory=dict)
    wall_time: float = 0.0
    solvers: list[str] = field(default_factory=list)
    details: Any = None

    def to_json(self) -> str:
        return json.dumps(_jsonable(asdict(self)), indent=2, sort_keys=True)


def _rational(text: str) -> Fraction:
    try:
        x = parse_number(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if x is INF:
        raise argparse.ArgumentTypeError("expected a finite number")
    return x


def _positive(text: str) -> Fraction:
    x = _rational(text)
    if x <= 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="stackprice", description="Stackelberg network pricing toolkit")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("solve", help="compute prices for an instance")
    s.add_argument("file")
    s.add_argument("--algo", choices=["single-price", "stackvc", "stackvc2", "exact"], default="single-price")
    s.add_argument("--epsilon", type=_positive, default=DEFAULT_EPSILON)
    s.add_argument("--limit", type=int, default=DEFAULT_TUPLE_LIMIT, help="oracle tuple limit")
    s.add_argument("--json", action="store_true", help="print the JSON report instead of the table")
    s.add_argument("--out", help="also write the JSON report here")

    a = sub.add_parser("analyze", help="threshold / hull table of one follower")
    a.add_argument("file")
    a.add_argument("--follower", type=int, default=0)
    a.add_argument("--json", action="store_true")
    a.add_argument("--out")

    g = sub.add_parser("gen", help="generate an instance")
    g.add_argument("family", choices=["harmonic", "single-minded", "unit-demand", "random"])
    g.add_argument("-m", "--m", type=int, default=3, help="harmonic: number of priceable edges")
    g.add_argument("--customer", action="append", default=[],
                   help="single-minded: 'p1,p2:BUDGET'; unit-demand: 'p1,p2:BUDGET[:DEMAND]'")
    g.add_argument("--seed", type=int, default=1)
    g.add_argument("--kind", choices=["edge", "bipartite"], default="edge")
    g.add_argument("--vertices", type=int, default=6)
    g.add_argument("--max-edges", type=int, default=12)
    g.add_argument("--edge-prob", type=_rational, default=Fraction(1, 2))
    g.add_argument("--priceable-prob", type=_rational, default=Fraction(1, 2))
    g.add_argument("--cost-min", type=int, default=1)
    g.add_argument("--cost-max", type=int, default=10)
    g.add_argument("--denominator", type=int, default=1)
    g.add_argument("--followers", default="shortest_path", help="comma list of shortest_path/spanning_tree")
    g.add_argument("--directed-prob", type=_rational, default=Fraction(0))
    g.add_argument("--demand-min", type=_rational)
    g.add_argument("--demand-max", type=_rational)
    g.add_argument("--two-sided", action="store_true")
    g.add_argument("--no-priceable", action="store_true")
    g.add_argument("-o", "--output")

    b = sub.add_parser("bench", help="compare algorithms with the exact oracle on a corpus")
    b.add_argument("dir")
    b.add_argument("--epsilon", type=_positive, default=DEFAULT_EPSILON)
    b.add_argument("--limit", type=int, default=DEFAULT_TUPLE_LIMIT)
    b.add_argument("--jobs", type=int, default=1)
    b.add_argument("--out")
    return p


def main(argv: Optional[list[str]] = None) -> int:
    return run_cli(sys.argv[1:] if argv is None else argv)


def run_cli(argv: list[str]) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "analyze":
            return _cmd_analyze(args)
        if args.command == "gen":
            return _cmd_gen(args)
        return _cmd_bench(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OracleLimitError as exc:
        print(f"solver limit exceeded: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (InstanceError, UnsupportedError, OSError) as exc:
        print(f"instance error: {exc}", file=sys.stderr)
        return EXIT_INSTANCE


def _load_valid(path: str) -> Instance:
    inst = load_instance(path)
    report = validate(inst)
    if not report.ok:
        raise InstanceError(f"validation failed for follower {report.failed_follower}: {report.message}")
    return inst


def _emit(record: RunRecord, human: str, args) -> None:
    text = record.to_json()
    print(text if getattr(args, "json", False) else human)
    if getattr(args, "out", None):
        Path(args.out).write_text(text + "\n", encoding="utf-8")


def _solve(inst: Instance, algo: str, epsilon: Fraction, limit: int) -> SolveReport:
    if algo == "single-price":
        return run_single_price(inst, epsilon)
    if algo == "stackvc":
        return solve_one_sided(inst)
    if algo == "stackvc2":
        return solve_two_sided(inst)
    return exact_optimum(inst, limit)


def _cmd_solve(args) -> int:
    inst = _load_valid(args.file)
    t0 = time.perf_counter()
    rep = _solve(inst, args.algo, args.epsilon, args.limit)
    elapsed = time.perf_counter() - t0
    lines = [f"algorithm: {rep.algorithm}", f"instance: m={inst.m} k={inst.k}"]
    for pid, price in sorted(rep.prices.items()):
        lines.append(f"price {pid} = {format_both(price)}")
    lines.append(f"revenue: {format_both(rep.revenue)}")
    for j, r in enumerate(rep.per_follower):
        lines.append(f"follower {j}: buys {sorted(r.chosen)} weight {format_both(r.weight)} "
                     f"revenue {format_both(r.revenue)}")
    diag = rep.diagnostics
    if rep.algorithm == "single-price":
        lines.append(f"best price: {format_both(diag['best_price']) if diag['best_price'] is not None else '-'}")
        lines.append(f"candidates: {diag['candidate_count']}")
        lines.append(f"guarantee factor {diag['guarantee']}: {format_both(diag['guarantee_factor'])}")
        lines.append(f"upper bound (Delta): {format_both(diag['upper_bound'])}")
    elif rep.algorithm in ("stackvc", "stackvc2"):
        c0, cn = diag["c_0"], diag["c_n"]
        lines.append(f"revenue = c_0 - c_n = {format_number(c0)} - {format_number(cn)}")
        if "run_revenues" in diag:
            runs = ", ".join(f"{k}: {format_number(v)}" for k, v in diag["run_revenues"].items())
            lines.append(f"one-sided runs: {runs}; active side {diag['active_side']}")
    elif rep.algorithm == "exact":
        lines.append(f"targets: {diag['targets']}")
        lines.append(f"tuples evaluated: {diag['tuples_evaluated']}")
    record = RunRecord(
        instance_digest(inst), "solve",
        {"algo": args.algo, "epsilon": args.epsilon, "limit": args.limit, "file": args.file},
        revenues={rep.algorithm: rep.revenue},
        bounds={k: v for k, v in diag.items() if k in ("upper_bound", "guarantee_factor", "c_0", "c_n")},
        wall_time=elapsed, solvers=[rep.algorithm], details=rep.to_dict(),
    )
    _emit(record, "\n".join(lines), args)
    return EXIT_OK


def _cmd_analyze(args) -> int:
    inst = _load_valid(args.file)
    if not 0 <= args.follower < inst.k:
        raise UsageError(f"follower index must lie in [0, {inst.k - 1}]")
    t0 = time.perf_counter()
    try:
        profile = full_profile(inst, args.follower)
        source = "all c_j"
    except (OracleLimitError, UnsupportedError):
        profile = parametric_profile(inst, args.follower)
        source = "hull points only"
    elapsed = time.perf_counter() - t0
    bound = revenue_upper_bound(profile)
    lines = [f"follower {args.follower} ({source})", profile_table(profile)]
    for j, theta in zip(profile.hull[1:], profile.thetas):
        lines.append(f"theta_{j} = {format_both(theta)}")
    lines.append(f"hull: {list(profile.hull)}")
    lines.append(f"revenue upper bound Delta_{profile.hull[-1]} = {format_both(bound)}")
    record = RunRecord(
        instance_digest(inst), "analyze", {"follower": args.follower, "file": args.file},
        bounds={"upper_bound": bound},
        wall_time=elapsed, solvers=["analysis"],
        details={"points": [list(p) for p in profile.points], "hull": list(profile.hull),
                 "thetas": list(profile.thetas)},
    )
    _emit(record, "\n".join(lines), args)
    return EXIT_OK


def _parse_customer(text: str, with_demand: bool):
    parts = text.split(":")
    if len(parts) < 2 or len(parts) > (3 if with_demand else 2):
        raise UsageError(f"bad customer spec {text!r}")
    products = [p for p in parts[0].split(",") if p]
    try:
        budget = _rational(parts[1])
        demand = _rational(parts[2]) if len(parts) == 3 else Fraction(1)
    except argparse.ArgumentTypeError as exc:
        raise UsageError(str(exc)) from None
    return (products, budget, demand) if with_demand else (products, budget)


def _cmd_gen(args) -> int:
    if args.family == "harmonic":
        if args.m < 1:
            raise UsageError("-m must be >= 1")
        inst = gen_harmonic(args.m)
    elif args.family == "single-minded":
        if not args.customer:
            raise UsageError("need at least one --customer")
        inst = gen_from_single_minded([_parse_customer(c, False) for c in args.customer])
    elif args.family == "unit-demand":
        if not args.customer:
            raise UsageError("need at least one --customer")
        inst = gen_from_unit_demand([_parse_customer(c, True) for c in args.customer])
    else:
        demand = None
        if args.demand_min is not None or args.demand_max is not None:
            demand = (args.demand_min or Fraction(1), args.demand_max or Fraction(1))
        try:
            params = RandomParams(
                seed=args.seed, kind=args.kind, n_vertices=args.vertices, max_edges=args.max_edges,
                edge_prob=args.edge_prob, priceable_prob=args.priceable_prob,
                cost_range=(args.cost_min, args.cost_max), denominator=args.denominator,
                followers=tuple(f.strip() for f in args.followers.split(",") if f.strip()),
                directed_prob=args.directed_prob, demand_range=demand,
                two_sided=args.two_sided, no_priceable=args.no_priceable,
            )
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        inst = gen_random(params)
    text = serialize_instance(inst)
    if args.output:
        Path(args.output).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return EXIT_OK


def applicable_algorithms(inst: Instance) -> list[str]:
    algos = ["single-price"]
    if inst.game == VERTEX_GAME and inst.k == 1 and inst.followers[0].goal == VERTEX_COVER:
        try:
            side_a, side_b = bipartition(inst)
        except UnsupportedError:
            return algos
        if any(inst.item_by_id[b].priceable for b in side_b):
            algos.append("stackvc2")
        else:
            algos.append("stackvc")
    return algos


def algorithm_factor(inst: Instance, algo: str, epsilon: Fraction) -> Fraction:
    if algo == "single-price":
        return guarantee_factor(inst, epsilon)[1]
    return Fraction(1) if algo == "stackvc" else Fraction(2)


def bench_entry(path: str, epsilon: Fraction, limit: int) -> dict:
    """Benchmark one corpus file; errors are reported in the row."""
    name = Path(path).name
    try:
        inst = _load_valid(path)
    except (InstanceError, OSError, UnsupportedError) as exc:
        return {"instance": name, "error": str(exc)}
    t0 = time.perf_counter()
    row: dict[str, Any] = {"instance": name, "digest": instance_digest(inst), "m": inst.m, "k": inst.k}
    try:
        r_star = exact_optimum(inst, limit).revenue
    except OracleLimitError:
        r_star = None
    row["r_star"] = r_star
    row["upper_bound"] = delta_upper_bound(inst)
    results = []
    for algo in applicable_algorithms(inst):
        rep = _solve(inst, algo, epsilon, limit)
        factor = algorithm_factor(inst, algo, epsilon)
        res = {"algorithm": algo, "revenue": rep.revenue, "factor": factor}
        if r_star is None:
            res["ratio"] = None
            res["verdict"] = "NO-ORACLE"
        else:
            if rep.revenue > 0:
                res["ratio"] = r_star / rep.revenue
            else:
                res["ratio"] = Fraction(1) if r_star == 0 else INF
            res["verdict"] = "PASS" if r_star <= factor * rep.revenue and rep.revenue <= r_star else "FAIL"
        results.append(res)
    row["results"] = results
    row["wall_time"] = time.perf_counter() - t0
    return row


def run_bench(corpus_dir, epsilon: Fraction = DEFAULT_EPSILON, limit: int = DEFAULT_TUPLE_LIMIT,
              jobs: int = 1) -> list[dict]:
    """Rows in corpus (file name) order, whatever the degree of parallelism."""
    paths = [str(p) for p in sorted(Path(corpus_dir).glob("*.json"))]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(bench_entry, paths, [epsilon] * len(paths), [limit] * len(paths)))
    return [bench_entry(p, epsilon, limit) for p in paths]


def bench_table(rows: list[dict]) -> str:
    head = ["instance", "m", "k", "r*", "algorithm", "revenue", "ratio", "factor", "verdict"]
    out = ["\t".join(head)]
    worst: dict[str, Any] = {}
    for row in rows:
        if "error" in row:
            out.append(f"{row['instance']}\tERROR: {row['error']}")
            continue
        if row["r_star"] is None:
            rstar = f"<= {format_number(row['upper_bound'])} (bound)"
        else:
            rstar = format_number(row["r_star"])
        for res in row["results"]:
            ratio = "-" if res["ratio"] is None else format_both(res["ratio"])
            out.append("\t".join([row["instance"], str(row["m"]), str(row["k"]), rstar, res["algorithm"],
                                  format_both(res["revenue"]), ratio, format_both(res["factor"]), res["verdict"]]))
            if res["ratio"] is not None:
                prev = worst.get(res["algorithm"])
                if prev is None or res["ratio"] > prev:
                    worst[res["algorithm"]] = res["ratio"]
    for algo, ratio in sorted(worst.items()):
        out.append(f"WORST\t\t\t\t{algo}\t\t{format_both(ratio)}\t\t")
    return "\n".join(out)


def bench_summary(rows: list[dict]) -> dict:
    worst: dict[str, Any] = {}
    verdicts = {"PASS": 0, "FAIL": 0, "NO-ORACLE": 0}
    for row in rows:
        for res in row.get("results", []):
            verdicts[res["verdict"]] += 1
            if res["ratio"] is not None and (res["algorithm"] not in worst or res["ratio"] > worst[res["algorithm"]]):
                worst[res["algorithm"]] = res["ratio"]
    return {"worst_ratio": worst, "verdicts": verdicts,
            "errors": [r["instance"] for r in rows if "error" in r]}


def _cmd_bench(args) -> int:
    if not Path(args.dir).is_dir():
        raise UsageError(f"{args.dir} is not a directory")
    t0 = time.perf_counter()
    rows = run_bench(args.dir, args.epsilon, args.limit, args.jobs)
    elapsed = time.perf_counter() - t0
    for row in rows:
        if "error" in row:
            print(f"skipping {row['instance']}: {row['error']}", file=sys.stderr)
    summary = bench_summary(rows)
    record = RunRecord(
        None, "bench", {"dir": args.dir, "epsilon": args.epsilon, "limit": args.limit},
        revenues={r["instance"]: {x["algorithm"]: x["revenue"] for x in r["results"]}
                  for r in rows if "results" in r},
        bounds={r["instance"]: {"r_star": r["r_star"], "upper_bound": r["upper_bound"]}
                for r in rows if "results" in r},
        wall_time=elapsed, solvers=sorted({x["algorithm"] for r in rows for x in r.get("results", [])}),
        details={"rows": [{k: v for k, v in r.items() if k != "wall_time"} for r in rows], "summary": summary},
    )
    _emit(record, bench_table(rows), args)
    return EXIT_OK


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
