"""Command-line front end: solve, oracle, gen, bench, metrics.

Exit codes: 0 success, 2 parse/usage error, 3 validation error, 4 resource
guard (instance too large to enumerate).
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from .divisible import solve_divisible
from .errors import ResourceLimitError, ScenarioParseError, ValidationError
from .generate import random_jobs, random_machines, random_scenario
from .model import validate_fleet
from .nondivisible import solve_nondivisible
from .ordering import index_fleet
from .report import metrics_report, oracle_report, render, render_machine, solve_report
from .scenario import format_scenario, load_scenario

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_VALIDATION = 3
EXIT_RESOURCE = 4


def _add_common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--format", choices=("text", "machine"), default="text", help="report format"
    )
    parser.add_argument(
        "--jobs", type=int, default=1, metavar="N", help="worker processes for oracle enumeration"
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emsched",
        description="Energy-minimal scheduling of independent jobs on heterogeneous machines.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve a scenario file")
    solve.add_argument("scenario", help="path to a scenario file")
    solve.add_argument("--oracle", action="store_true", help="also run the exhaustive oracle")
    solve.add_argument(
        "--search",
        choices=("linear", "binary"),
        default="linear",
        help="working-set search strategy for identical speeds",
    )
    _add_common_flags(solve)

    oracle = sub.add_parser("oracle", help="run only the exhaustive oracle on a scenario file")
    oracle.add_argument("scenario", help="path to a scenario file")
    _add_common_flags(oracle)

    gen = sub.add_parser("gen", help="emit a random scenario")
    gen.add_argument("--seed", type=int, required=True, help="RNG seed; output is deterministic")
    gen.add_argument("-m", "--machines", type=int, required=True, help="machine count")
    gen.add_argument("-n", "--jobs-count", type=int, default=0, help="job count (0 = total work only)")
    gen.add_argument("--mode", choices=("divisible", "nondivisible"), default="divisible")
    gen.add_argument("--speeds", choices=("identical", "different"), default="identical")
    gen.add_argument("--power-max", type=float, default=100.0)
    gen.add_argument("--speed-max", type=float, default=4.0)
    gen.add_argument("--weight-max", type=float, default=100.0)
    gen.add_argument(
        "--allow-gamma-above-mu",
        action="store_true",
        help="let idle power exceed working power",
    )

    bench = sub.add_parser("bench", help="time the solvers on large instances")
    bench.add_argument(
        "--suite",
        choices=("all", "divisible", "lpt"),
        default="all",
        help="which benchmark families to run",
    )
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--repeats", type=int, default=3, help="timing runs per point (best kept)")
    bench.add_argument(
        "--format", choices=("text", "machine"), default="text", help="report format"
    )

    metrics = sub.add_parser(
        "metrics", help="evaluate energy-per-work against the working-energy ratio"
    )
    metrics.add_argument("scenario", help="path to a scenario file")
    metrics.add_argument(
        "--format", choices=("text", "machine"), default="text", help="report format"
    )
    return parser


def cmd_solve(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    report = solve_report(
        scenario, search=args.search, with_oracle=args.oracle, workers=args.jobs
    )
    sys.stdout.write(render(report, args.format))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    report = oracle_report(scenario, workers=args.jobs)
    sys.stdout.write(render(report, args.format))
    return EXIT_OK


def cmd_gen(args: argparse.Namespace) -> int:
    try:
        scenario = random_scenario(
            args.seed,
            args.machines,
            args.jobs_count,
            mode=args.mode,
            speeds=args.speeds,
            power_max=args.power_max,
            speed_max=args.speed_max,
            weight_max=args.weight_max,
            allow_gamma_above_mu=args.allow_gamma_above_mu,
        )
    except ValueError as exc:
        print(f"bad flags: {exc}", file=sys.stderr)
        return EXIT_PARSE
    sys.stdout.write(format_scenario(scenario))
    return EXIT_OK


def cmd_metrics(args: argparse.Namespace) -> int:
    scenario = load_scenario(args.scenario)
    report = metrics_report(scenario)
    sys.stdout.write(render(report, args.format))
    return EXIT_OK


def _best_of(repeats: int, run) -> float:
    return min(_timed(run) for _ in range(repeats))


def _timed(run) -> float:
    started = time.perf_counter()
    run()
    return time.perf_counter() - started


def _time_divisible(seed: int, size: int, speeds: str, repeats: int) -> float:
    rng = random.Random(seed)
    machines = random_machines(rng, size, speeds=speeds)
    indexed = index_fleet(validate_fleet(machines))
    return _best_of(repeats, lambda: solve_divisible(indexed, 1000.0))


def _time_lpt(seed: int, job_count: int, speeds: str, repeats: int, machine_count: int = 1000) -> float:
    rng = random.Random(seed)
    machines = random_machines(rng, min(machine_count, job_count), speeds=speeds)
    jobs = random_jobs(rng, job_count)
    indexed = index_fleet(validate_fleet(machines))
    return _best_of(repeats, lambda: solve_nondivisible(indexed, jobs))


def cmd_bench(args: argparse.Namespace) -> int:
    rows = []
    if args.suite in ("all", "divisible"):
        for speeds in ("identical", "different"):
            for size in (10**3, 10**4, 10**5):
                seconds = _time_divisible(args.seed, size, speeds, args.repeats)
                rows.append({"family": f"divisible-{speeds}", "size": size, "seconds": seconds})
    if args.suite in ("all", "lpt"):
        for speeds in ("identical", "different"):
            for size in (10**3, 10**4, 10**5):
                seconds = _time_lpt(args.seed, size, speeds, args.repeats)
                rows.append({"family": f"lpt-{speeds}", "size": size, "seconds": seconds})
    scaling = []
    for family in sorted({row["family"] for row in rows}):
        family_rows = [r for r in rows if r["family"] == family]
        for prev, cur in zip(family_rows, family_rows[1:]):
            observed = cur["seconds"] / max(prev["seconds"], 1e-3)
            entry = {
                "family": family,
                "sizes": f"{prev['size']}->{cur['size']}",
                "observed_ratio": observed,
                "size_ratio": cur["size"] / prev["size"],
            }
            if family.startswith("divisible"):
                # linear-time solvers; generous allowance for cache effects
                entry["near_linear"] = observed < 5.0 * (cur["size"] / prev["size"])
            scaling.append(entry)
    report = {"runs": rows, "scaling": scaling}
    if args.format == "machine":
        sys.stdout.write(render_machine(report))
    else:
        for row in rows:
            sys.stdout.write(f"{row['family']:22s} size={row['size']:>7d}  {row['seconds']:.4f}s\n")
        for entry in scaling:
            line = (
                f"{entry['family']:22s} {entry['sizes']:16s} observed x{entry['observed_ratio']:.1f}"
                f" (size x{entry['size_ratio']:.0f})"
            )
            if "near_linear" in entry:
                line += f"  near_linear={entry['near_linear']}"
            sys.stdout.write(line + "\n")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    handlers = {
        "solve": cmd_solve,
        "oracle": cmd_oracle,
        "gen": cmd_gen,
        "bench": cmd_bench,
        "metrics": cmd_metrics,
    }
    try:
        return handlers[args.command](args)
    except ScenarioParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ResourceLimitError as exc:
        print(f"resource guard: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except FileNotFoundError as exc:
        print(f"parse error: cannot read scenario: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except ValueError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
