"""Line-oriented scenario files: parsing, validation, and serialization.

Grammar (one directive per line, ``#`` starts a comment, blanks ignored)::

    mode        divisible | nondivisible
    regime      identical_speed | different_speed      # optional override
    machine     <id> mu=<number> gamma=<number> [upsilon=<number>]
    job         <id> psi=<number>
    total_work  <number>

Numbers are decimals with optional scientific notation.  A scenario carries
either jobs or a ``total_work`` amount, never both; indivisible runs need
jobs.  Machine data is validated by the core model after parsing.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ScenarioParseError, ValidationError
from .model import Fleet, Job, Machine, Regime, validate_fleet, validate_jobs

MODES = ("divisible", "nondivisible")


@dataclass(frozen=True)
class Scenario:
    """One solvable problem instance as read from a scenario file."""

    mode: str
    machines: tuple[Machine, ...]
    jobs: tuple[Job, ...] | None = None
    total_work: float | None = None
    regime: Regime | None = None

    def fleet(self) -> Fleet:
        return validate_fleet(self.machines)

    def work(self) -> float:
        if self.total_work is not None:
            return self.total_work
        return float(sum(j.psi for j in self.jobs or ()))

    def validate(self) -> "Scenario":
        """Check cross-field rules; machine/job fields are checked separately."""
        if (self.jobs is None) == (self.total_work is None):
            raise ValidationError("exactly one of jobs or total_work must be present")
        if self.mode == "nondivisible" and self.jobs is None:
            raise ValidationError("nondivisible mode requires jobs")
        if self.total_work is not None and self.total_work < 0:
            raise ValidationError(f"total_work must be non-negative, got {self.total_work}")
        if self.jobs is not None:
            validate_jobs(self.jobs)
        return self


def _parse_number(token: str, line_no: int, field: str) -> float:
    try:
        return float(token)
    except ValueError:
        raise ScenarioParseError(line_no, f"invalid number for {field}: {token!r}") from None


def _parse_fields(tokens: list[str], line_no: int, allowed: dict[str, float | None]) -> dict[str, float]:
    values = dict(allowed)
    seen = set()
    for token in tokens:
        name, sep, raw = token.partition("=")
        if not sep or name not in allowed:
            raise ScenarioParseError(line_no, f"expected <name>=<number> with name in {sorted(allowed)}, got {token!r}")
        if name in seen:
            raise ScenarioParseError(line_no, f"duplicate field {name!r}")
        seen.add(name)
        values[name] = _parse_number(raw, line_no, name)
    missing = [name for name, value in values.items() if value is None]
    if missing:
        raise ScenarioParseError(line_no, f"missing required field(s): {', '.join(missing)}")
    return values  # type: ignore[return-value]


def parse_scenario(text: str) -> Scenario:
    """Parse scenario text; raises :class:`ScenarioParseError` with a line number."""
    mode: str | None = None
    regime: Regime | None = None
    machines: list[Machine] = []
    jobs: list[Job] = []
    total_work: float | None = None
    for line_no, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, *tokens = line.split()
        if keyword == "mode":
            if mode is not None:
                raise ScenarioParseError(line_no, "duplicate mode directive")
            if len(tokens) != 1 or tokens[0] not in MODES:
                raise ScenarioParseError(line_no, f"mode must be one of {MODES}")
            mode = tokens[0]
        elif keyword == "regime":
            if regime is not None:
                raise ScenarioParseError(line_no, "duplicate regime directive")
            try:
                regime = Regime(tokens[0]) if len(tokens) == 1 else None
            except ValueError:
                regime = None
            if regime is None:
                raise ScenarioParseError(
                    line_no, f"regime must be one of {[r.value for r in Regime]}"
                )
        elif keyword == "machine":
            if not tokens:
                raise ScenarioParseError(line_no, "machine needs an id")
            fields = _parse_fields(
                tokens[1:], line_no, {"mu": None, "gamma": None, "upsilon": 1.0}
            )
            machines.append(Machine(id=tokens[0], **fields))
        elif keyword == "job":
            if not tokens:
                raise ScenarioParseError(line_no, "job needs an id")
            fields = _parse_fields(tokens[1:], line_no, {"psi": None})
            jobs.append(Job(id=tokens[0], psi=fields["psi"]))
        elif keyword == "total_work":
            if total_work is not None:
                raise ScenarioParseError(line_no, "duplicate total_work directive")
            if len(tokens) != 1:
                raise ScenarioParseError(line_no, "total_work takes exactly one number")
            total_work = _parse_number(tokens[0], line_no, "total_work")
        else:
            raise ScenarioParseError(line_no, f"unknown directive {keyword!r}")
    if mode is None:
        raise ScenarioParseError(None, "missing mode directive")
    return Scenario(
        mode=mode,
        machines=tuple(machines),
        jobs=tuple(jobs) if jobs else None,
        total_work=total_work,
        regime=regime,
    )


def load_scenario(path: str) -> Scenario:
    with open(path, encoding="utf-8") as handle:
        return parse_scenario(handle.read())


def format_scenario(scenario: Scenario) -> str:
    """Serialize a scenario; parsing the result reproduces it exactly."""
    lines = [f"mode {scenario.mode}"]
    if scenario.regime is not None:
        lines.append(f"regime {scenario.regime.value}")
    for m in scenario.machines:
        lines.append(f"machine {m.id} mu={m.mu!r} gamma={m.gamma!r} upsilon={m.upsilon!r}")
    if scenario.jobs is not None:
        for j in scenario.jobs:
            lines.append(f"job {j.id} psi={j.psi!r}")
    if scenario.total_work is not None:
        lines.append(f"total_work {scenario.total_work!r}")
    return "\n".join(lines) + "\n"
