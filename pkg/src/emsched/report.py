"""Report assembly and rendering for the command-line front end.

Reports are plain dicts so the machine format is just JSON; the text format
walks the same dict.  Everything except the ``timing`` block is reproducible
from the scenario and flags alone.
"""

from __future__ import annotations

import json
import time
from typing import Any

from .divisible import incompatibility_report, solve_divisible, working_energy_ratio
from .model import REL_TOL, values_close
from .nondivisible import solve_nondivisible
from .oracle import (
    assignment_loads,
    assignment_makespan,
    is_prefix_mask,
    mask_to_positions,
    oracle_divisible,
    oracle_nondivisible,
)
from .ordering import IndexedFleet, index_fleet
from .scenario import Scenario


def _indexed_for(scenario: Scenario) -> IndexedFleet:
    fleet = scenario.fleet()
    return index_fleet(fleet, scenario.regime)


def _instance_block(scenario: Scenario, indexed: IndexedFleet) -> dict[str, Any]:
    block: dict[str, Any] = {
        "mode": scenario.mode,
        "regime": indexed.regime.value,
        "machines": len(indexed),
        "total_work": scenario.work(),
    }
    if scenario.jobs is not None:
        block["jobs"] = len(scenario.jobs)
    return block


def _energy_block(breakdown) -> dict[str, Any]:
    return {
        "total": breakdown.total,
        "working": breakdown.working,
        "idle": breakdown.idle,
    }


def _per_machine_rows(indexed: IndexedFleet, schedule, breakdown) -> list[dict[str, Any]]:
    rows = []
    for machine in indexed.fleet.machines:
        assignment = schedule.assignments.get(machine.id)
        row: dict[str, Any] = {
            "id": machine.id,
            "work": assignment.work if assignment else 0.0,
            "working_time": schedule.working_times.get(machine.id, 0.0),
            "energy_working": breakdown.per_machine[machine.id].working,
            "energy_idle": breakdown.per_machine[machine.id].idle,
        }
        if assignment and assignment.job_ids:
            row["jobs"] = list(assignment.job_ids)
        rows.append(row)
    return rows


def solve_report(
    scenario: Scenario,
    *,
    search: str = "linear",
    with_oracle: bool = False,
    workers: int = 1,
) -> dict[str, Any]:
    """Solve a scenario and bundle everything a consumer needs to verify it."""
    scenario.validate()
    indexed = _indexed_for(scenario)
    total_work = scenario.work()
    report: dict[str, Any] = {"instance": _instance_block(scenario, indexed)}
    started = time.perf_counter()
    if scenario.mode == "divisible":
        solution = solve_divisible(indexed, total_work, search=search)
        solve_seconds = time.perf_counter() - started
        schedule = solution.to_schedule(indexed)
        report["solver"] = {
            "algorithm": f"divisible-{'identical' if indexed.regime.value == 'identical_speed' else 'different'}",
            "r": solution.r,
            "working_set": list(solution.working_set),
            "makespan": solution.makespan,
            "energy": _energy_block(solution.energy),
            "per_machine": _per_machine_rows(indexed, schedule, solution.energy),
        }
        solver_energy = solution.energy.total
        ratio_r = solution.r
    else:
        solution = solve_nondivisible(indexed, list(scenario.jobs or ()))
        solve_seconds = time.perf_counter() - started
        certificate = solution.certificate
        report["solver"] = {
            "algorithm": f"lpt-{'identical' if indexed.regime.value == 'identical_speed' else 'different'}",
            "r_o": solution.target.r_o,
            "t_o": solution.target.t_o,
            "makespan": solution.makespan,
            "energy": _energy_block(solution.energy),
            "per_machine": _per_machine_rows(indexed, solution.schedule, solution.energy),
        }
        report["bound"] = {
            "kind": certificate.kind,
            "ratio_limit": certificate.ratio_limit,
        }
        if certificate.lpt_asymptotic_limit is not None:
            report["bound"]["lpt_asymptotic_limit"] = certificate.lpt_asymptotic_limit
        solver_energy = solution.energy.total
        ratio_r = solution.target.r_o
    report["metrics"] = {
        "energy_per_work": solver_energy / total_work if total_work > 0 else 0.0,
        "working_energy_ratio": working_energy_ratio(indexed, ratio_r),
    }
    report["timing"] = {"solve_seconds": solve_seconds}
    if with_oracle:
        report["oracle"] = _oracle_block(scenario, indexed, workers)
        oracle_energy = report["oracle"]["best_energy"]
        if oracle_energy > 0:
            achieved = solver_energy / oracle_energy
            report["oracle"]["achieved_ratio"] = achieved
            if "bound" in report:
                report["bound"]["achieved_ratio"] = achieved
        if scenario.mode == "divisible":
            # exact solvers should match the oracle; a mismatch signals a
            # non-prefix optimal subset (possible for different speeds)
            report["oracle"]["agrees_with_solver"] = values_close(
                solver_energy, oracle_energy, rel=REL_TOL
            )
        report["timing"]["oracle_seconds"] = report["oracle"].pop("_seconds")
    return report


def _oracle_block(scenario: Scenario, indexed: IndexedFleet, workers: int) -> dict[str, Any]:
    fleet = indexed.fleet
    started = time.perf_counter()
    if scenario.mode == "divisible":
        result = oracle_divisible(fleet, scenario.work(), workers=workers)
        positions = mask_to_positions(int(result.best_config))
        block: dict[str, Any] = {
            "best_energy": result.best_energy,
            "explored": result.explored,
            "best_working_set": [fleet.machines[p].id for p in positions],
            "working_set_is_prefix": is_prefix_mask(int(result.best_config)),
        }
    else:
        jobs = list(scenario.jobs or ())
        result = oracle_nondivisible(fleet, jobs, workers=workers)
        assignment = list(result.best_config)
        block = {
            "best_energy": result.best_energy,
            "explored": result.explored,
            "best_assignment": {
                job.id: fleet.machines[machine].id for job, machine in zip(jobs, assignment)
            },
            "makespan": assignment_makespan(fleet, jobs, assignment),
            "per_machine_work": {
                machine.id: float(load)
                for machine, load in zip(fleet.machines, assignment_loads(fleet, jobs, assignment))
            },
        }
    block["_seconds"] = time.perf_counter() - started
    return block


def oracle_report(scenario: Scenario, *, workers: int = 1) -> dict[str, Any]:
    """Run only the exhaustive oracle on a scenario."""
    scenario.validate()
    indexed = _indexed_for(scenario)
    report = {"instance": _instance_block(scenario, indexed)}
    block = _oracle_block(scenario, indexed, workers)
    report["timing"] = {"oracle_seconds": block.pop("_seconds")}
    report["oracle"] = block
    return report


def metrics_report(scenario: Scenario) -> dict[str, Any]:
    """Evaluate both efficiency measures across all working-set sizes."""
    scenario.validate()
    indexed = _indexed_for(scenario)
    result = incompatibility_report(indexed, scenario.work())
    return {
        "instance": _instance_block(scenario, indexed),
        "measures": {
            "energy_optimal_r": result.energy_optimal_r,
            "ratio_optimal_r": result.ratio_optimal_r,
            "conflict": result.conflict,
            "by_r": [
                {"r": r + 1, "energy": result.energies[r], "working_energy_ratio": result.ratios[r]}
                for r in range(len(result.energies))
            ],
        },
    }


def _format_value(value: Any) -> str:
    if isinstance(value, float):
        return f"{value:.6g}"
    return str(value)


def _render_section(name: str, payload: dict[str, Any], lines: list[str]) -> None:
    lines.append(f"[{name}]")
    table = None
    for key, value in payload.items():
        if key in ("per_machine", "by_r"):
            table = value
            continue
        if isinstance(value, dict):
            inner = ", ".join(f"{k}={_format_value(v)}" for k, v in value.items())
            lines.append(f"  {key}: {inner}")
        elif isinstance(value, list):
            lines.append(f"  {key}: {' '.join(str(v) for v in value)}")
        else:
            lines.append(f"  {key}: {_format_value(value)}")
    if table:
        columns = list(table[0].keys())
        widths = {
            c: max(len(c), *(len(_format_value(row.get(c, ""))) for row in table)) for c in columns
        }
        lines.append("  " + "  ".join(c.ljust(widths[c]) for c in columns))
        for row in table:
            lines.append(
                "  " + "  ".join(_format_value(row.get(c, "")).ljust(widths[c]) for c in columns)
            )


def render_text(report: dict[str, Any]) -> str:
    lines: list[str] = []
    for section, payload in report.items():
        _render_section(section, payload, lines)
    return "\n".join(lines) + "\n"


def render_machine(report: dict[str, Any]) -> str:
    return json.dumps(report, indent=2, sort_keys=True) + "\n"


def render(report: dict[str, Any], fmt: str) -> str:
    return render_machine(report) if fmt == "machine" else render_text(report)
