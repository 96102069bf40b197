"""Experiment reports: typed records, CSV emission, and lossless JSON round-trip.

The CSV schema is fixed: ``n,utility,delta,tau,bound_lhs,bound_rhs,slack,pass``
with one row per step (trajectory level, prediction truncation level, or
formula index) and empty cells where a column does not apply. The
structured format mirrors the full :class:`Report` losslessly, including
every inequality record and every logic witness.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .errors import ConfigurationError
from .prediction import BoundRecord

CSV_COLUMNS = ("n", "utility", "delta", "tau", "bound_lhs", "bound_rhs", "slack", "pass")

FORMATS = ("csv", "structured")


@dataclass(frozen=True)
class StepRecord:
    """One CSV row; unset fields render as empty cells."""

    n: int
    utility: float | None = None
    delta: float | None = None
    tau: float | None = None
    bound_lhs: float | None = None
    bound_rhs: float | None = None
    slack: float | None = None
    passed: bool | None = None


@dataclass(frozen=True)
class CountermodelRecord:
    """Serialized refuting model: worlds, relation pairs, true atoms per world."""

    worlds: tuple[int, ...]
    relation: tuple[tuple[int, int], ...]
    valuation: tuple[tuple[int, tuple[int, ...]], ...]
    refuting_world: int


@dataclass(frozen=True)
class VerdictRecord:
    """Decision outcome for one formula, with its re-checked witness."""

    index: int
    formula: str
    verdict: str
    witness_ok: bool
    countermodel: CountermodelRecord | None = None
    search_levels: tuple[tuple[int, int, int], ...] | None = None


@dataclass(frozen=True)
class Report:
    scenario: str
    kind: str
    passed: bool
    steps: tuple[StepRecord, ...] = ()
    bounds: tuple[BoundRecord, ...] = ()
    verdicts: tuple[VerdictRecord, ...] = ()
    notes: tuple[str, ...] = ()


def _csv_cell(value) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def _report_to_dict(report: Report) -> dict:
    return {
        "scenario": report.scenario,
        "kind": report.kind,
        "passed": report.passed,
        "steps": [
            {
                "n": s.n,
                "utility": s.utility,
                "delta": s.delta,
                "tau": s.tau,
                "bound_lhs": s.bound_lhs,
                "bound_rhs": s.bound_rhs,
                "slack": s.slack,
                "passed": s.passed,
            }
            for s in report.steps
        ],
        "bounds": [
            {
                "name": b.name,
                "level": b.level,
                "lhs": b.lhs,
                "rhs": b.rhs,
                "slack": b.slack,
                "passed": b.passed,
            }
            for b in report.bounds
        ],
        "verdicts": [
            {
                "index": v.index,
                "formula": v.formula,
                "verdict": v.verdict,
                "witness_ok": v.witness_ok,
                "countermodel": None
                if v.countermodel is None
                else {
                    "worlds": list(v.countermodel.worlds),
                    "relation": [list(pair) for pair in v.countermodel.relation],
                    "valuation": [[w, list(atoms)] for w, atoms in v.countermodel.valuation],
                    "refuting_world": v.countermodel.refuting_world,
                },
                "search_levels": None
                if v.search_levels is None
                else [list(level) for level in v.search_levels],
            }
            for v in report.verdicts
        ],
        "notes": list(report.notes),
    }


def emit_report(report: Report, format: str) -> bytes:
    """Serialize ``report`` as UTF-8 bytes in the requested format."""
    if format == "csv":
        lines = [",".join(CSV_COLUMNS)]
        for s in report.steps:
            lines.append(
                ",".join(
                    _csv_cell(v)
                    for v in (
                        s.n,
                        s.utility,
                        s.delta,
                        s.tau,
                        s.bound_lhs,
                        s.bound_rhs,
                        s.slack,
                        s.passed,
                    )
                )
            )
        return ("\n".join(lines) + "\n").encode("utf-8")
    if format == "structured":
        text = json.dumps(_report_to_dict(report), sort_keys=True, indent=2, ensure_ascii=False)
        return (text + "\n").encode("utf-8")
    raise ConfigurationError(f"unknown report format {format!r}; expected one of {FORMATS}")


def report_from_json(data: bytes | str) -> Report:
    """Rebuild a :class:`Report` from its structured emission (lossless)."""
    if isinstance(data, bytes):
        data = data.decode("utf-8")
    raw = json.loads(data)
    steps = tuple(
        StepRecord(
            n=s["n"],
            utility=s["utility"],
            delta=s["delta"],
            tau=s["tau"],
            bound_lhs=s["bound_lhs"],
            bound_rhs=s["bound_rhs"],
            slack=s["slack"],
            passed=s["passed"],
        )
        for s in raw["steps"]
    )
    bounds = tuple(
        BoundRecord(
            name=b["name"],
            level=b["level"],
            lhs=b["lhs"],
            rhs=b["rhs"],
            slack=b["slack"],
            passed=b["passed"],
        )
        for b in raw["bounds"]
    )
    verdicts = []
    for v in raw["verdicts"]:
        countermodel = None
        if v["countermodel"] is not None:
            cm = v["countermodel"]
            countermodel = CountermodelRecord(
                worlds=tuple(cm["worlds"]),
                relation=tuple(tuple(pair) for pair in cm["relation"]),
                valuation=tuple((w, tuple(atoms)) for w, atoms in cm["valuation"]),
                refuting_world=cm["refuting_world"],
            )
        search_levels = (
            None
            if v["search_levels"] is None
            else tuple(tuple(level) for level in v["search_levels"])
        )
        verdicts.append(
            VerdictRecord(
                index=v["index"],
                formula=v["formula"],
                verdict=v["verdict"],
                witness_ok=v["witness_ok"],
                countermodel=countermodel,
                search_levels=search_levels,
            )
        )
    return Report(
        scenario=raw["scenario"],
        kind=raw["kind"],
        passed=raw["passed"],
        steps=steps,
        bounds=bounds,
        verdicts=tuple(verdicts),
        notes=tuple(raw["notes"]),
    )
