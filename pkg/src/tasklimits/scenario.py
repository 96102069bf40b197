"""Scenario files: JSON ingestion and validation for the experiment runner.

One scenario per file. The common envelope is::

    {"name": str, "kind": "trajectory" | "prediction" | "logic",
     "seed": int, "n_max": int, "epsilon": float, "payload": {...}}

``n_max`` is required for trajectory and prediction scenarios, ``epsilon``
for trajectory scenarios; both may be overridden from the command line.
Payload schemas are documented in the README. All construction-time
invariants (weight sums, Kraft inequality, nestedness, row sums) are
enforced here by building the real domain objects, so a scenario that
parses is a scenario that runs.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Union

from .errors import FormulaSyntaxError, ScenarioError, TaskLimitsError
from .modal import ModalFormula, parse_formula
from .prediction import ConditionalKernel, ContextDistribution, LossTable
from .prior import HypothesisClass, HypothesisDescriptor
from .taskspace import TaskMeasure, TaskSet
from .trajectory import DifficultyThreshold, ExplicitSets, RandomCoverage, SolverRule

KINDS = ("trajectory", "prediction", "logic")


@dataclass(frozen=True)
class TrajectoryPayload:
    mu: TaskMeasure
    rule: SolverRule


@dataclass(frozen=True)
class PredictionPayload:
    hypotheses: HypothesisClass
    kernels: dict[str, ConditionalKernel]
    loss: LossTable
    contexts: ContextDistribution


@dataclass(frozen=True)
class LogicPayload:
    texts: tuple[str, ...]
    formulas: tuple[ModalFormula, ...]


Payload = Union[TrajectoryPayload, PredictionPayload, LogicPayload]


@dataclass(frozen=True)
class Scenario:
    name: str
    kind: str
    seed: int
    payload: Payload
    n_max: int | None = None
    epsilon: float | None = None


def _require(data: dict, field: str, source: str) -> Any:
    if field not in data:
        raise ScenarioError(f"{source}: missing required field {field!r}")
    return data[field]


def _require_int(data: dict, field: str, source: str, minimum: int | None = None) -> int:
    value = _require(data, field, source)
    if not isinstance(value, int) or isinstance(value, bool):
        raise ScenarioError(f"{source}: field {field!r} must be an integer")
    if minimum is not None and value < minimum:
        raise ScenarioError(f"{source}: field {field!r} must be an integer >= {minimum}")
    return value


def _build_rule(rule_data: Any, seed: int, source: str) -> SolverRule:
    if not isinstance(rule_data, dict):
        raise ScenarioError(f"{source}: 'rule' must be an object")
    kind = _require(rule_data, "kind", source)
    if kind == "difficulty_threshold":
        difficulties = _require(rule_data, "difficulties", source)
        return DifficultyThreshold(tuple(difficulties))
    if kind == "random_coverage":
        probability = _require(rule_data, "step_probability", source)
        return RandomCoverage(step_probability=float(probability), seed=seed)
    if kind == "explicit_sets":
        sets = _require(rule_data, "sets", source)
        return ExplicitSets(tuple(TaskSet.of(s) for s in sets))
    raise ScenarioError(f"{source}: unknown rule kind {kind!r}")


def _build_trajectory_payload(payload: dict, seed: int, source: str) -> TrajectoryPayload:
    weights = _require(payload, "task_weights", source)
    mu = TaskMeasure(tuple(weights))
    rule = _build_rule(_require(payload, "rule", source), seed, source)
    return TrajectoryPayload(mu=mu, rule=rule)


def _build_prediction_payload(payload: dict, source: str) -> PredictionPayload:
    hyp_data = _require(payload, "hypotheses", source)
    descriptors = []
    for entry in hyp_data:
        descriptors.append(
            HypothesisDescriptor(
                id=_require(entry, "id", source),
                code_length=_require(entry, "code_length", source),
                kernel_ref=str(_require(entry, "kernel", source)),
            )
        )
    hclass = HypothesisClass(tuple(descriptors))
    kernel_data = _require(payload, "kernels", source)
    if not isinstance(kernel_data, dict):
        raise ScenarioError(f"{source}: 'kernels' must map names to matrices")
    kernels = {name: ConditionalKernel(table) for name, table in kernel_data.items()}
    loss = LossTable(_require(payload, "loss", source))
    contexts = ContextDistribution(_require(payload, "context_weights", source))
    return PredictionPayload(hypotheses=hclass, kernels=kernels, loss=loss, contexts=contexts)


def _build_logic_payload(payload: dict, source: str) -> LogicPayload:
    texts = _require(payload, "formulas", source)
    if not isinstance(texts, list) or not texts or not all(isinstance(t, str) for t in texts):
        raise ScenarioError(f"{source}: 'formulas' must be a non-empty list of strings")
    formulas = tuple(parse_formula(t) for t in texts)
    return LogicPayload(texts=tuple(texts), formulas=formulas)


def scenario_from_dict(
    data: Any,
    source: str = "<memory>",
    *,
    seed: int | None = None,
    n_max: int | None = None,
    epsilon: float | None = None,
) -> Scenario:
    """Validate scenario data and build all domain objects; overrides win over the file."""
    if not isinstance(data, dict):
        raise ScenarioError(f"{source}: scenario must be a JSON object")
    name = _require(data, "name", source)
    if not isinstance(name, str) or not name:
        raise ScenarioError(f"{source}: field 'name' must be a non-empty string")
    kind = _require(data, "kind", source)
    if kind not in KINDS:
        raise ScenarioError(f"{source}: kind must be one of {KINDS}, got {kind!r}")
    if seed is None:
        seed = _require_int(data, "seed", source)
    if n_max is None and "n_max" in data:
        n_max = _require_int(data, "n_max", source, minimum=0)
    if epsilon is None and "epsilon" in data:
        epsilon = float(data["epsilon"])
    payload_data = _require(data, "payload", source)
    if not isinstance(payload_data, dict):
        raise ScenarioError(f"{source}: 'payload' must be an object")

    try:
        if kind == "trajectory":
            if n_max is None or n_max < 1:
                raise ScenarioError(f"{source}: trajectory scenarios need n_max >= 1")
            if epsilon is None or epsilon <= 0:
                raise ScenarioError(f"{source}: trajectory scenarios need epsilon > 0")
            payload: Payload = _build_trajectory_payload(payload_data, seed, source)
        elif kind == "prediction":
            if n_max is None or n_max < 0:
                raise ScenarioError(f"{source}: prediction scenarios need n_max >= 0")
            payload = _build_prediction_payload(payload_data, source)
        else:
            payload = _build_logic_payload(payload_data, source)
    except ScenarioError:
        raise
    except FormulaSyntaxError as exc:
        raise ScenarioError(f"{source}: bad formula: {exc}") from exc
    except (TaskLimitsError, TypeError, ValueError) as exc:
        raise ScenarioError(f"{source}: {exc}") from exc

    return Scenario(name=name, kind=kind, seed=seed, payload=payload, n_max=n_max, epsilon=epsilon)


def parse_scenario(
    path: str | Path,
    *,
    seed: int | None = None,
    n_max: int | None = None,
    epsilon: float | None = None,
) -> Scenario:
    """Load and validate one scenario file (UTF-8 JSON)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioError(f"{path}: cannot read scenario file: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ScenarioError(
            f"{path}: invalid JSON at line {exc.lineno}, column {exc.colno}: {exc.msg}"
        ) from exc
    return scenario_from_dict(data, source=str(path), seed=seed, n_max=n_max, epsilon=epsilon)
