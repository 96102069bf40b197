"""Experiment orchestration: scenario in, report out, deterministically.

Each scenario kind runs the relevant pipeline and folds every check into
inequality records:

* trajectory: utilities and gains per level, the telescoping-identity
  residual, the counting bound on gains of size >= epsilon, and limit
  diagnostics;
* prediction: tail masses, predictive utilities, the mixture decomposition
  residual per level, and the three tail-mass perturbation bounds;
* logic: a validity verdict per formula with a re-checked witness.
"""

from __future__ import annotations

import math

from .modal import gl_decide, model_check
from .prediction import BoundRecord, decomposition_residual, verify_prediction_bounds
from .report import CountermodelRecord, Report, StepRecord, VerdictRecord
from .scenario import LogicPayload, PredictionPayload, Scenario, TrajectoryPayload
from .trajectory import (
    build_trajectory,
    limit_diagnostics,
    marginal_gains,
    telescoping_residual,
    utility_sequence,
)

#: Algebraic identities must hold to this tolerance.
IDENTITY_TOLERANCE = 1e-12

#: Inequality checks get this much additive slack.
DEFAULT_SLACK = 1e-9


def _run_trajectory(scenario: Scenario, payload: TrajectoryPayload) -> Report:
    traj = build_trajectory(payload.rule, scenario.n_max, payload.mu)
    utilities = utility_sequence(traj)
    gains = marginal_gains(traj) if len(traj) >= 2 else []

    steps = tuple(
        StepRecord(
            n=i + 1,
            utility=utilities[i],
            delta=gains[i] if i < len(gains) else None,
        )
        for i in range(len(traj))
    )

    bounds: list[BoundRecord] = []
    if len(traj) >= 2:
        residual = telescoping_residual(traj)
        bounds.append(
            BoundRecord(
                name="telescoping_residual",
                level=len(traj),
                lhs=residual,
                rhs=IDENTITY_TOLERANCE,
                slack=IDENTITY_TOLERANCE - residual,
                passed=residual <= IDENTITY_TOLERANCE,
            )
        )
        epsilon = scenario.epsilon
        count = float(sum(1 for g in gains if g >= epsilon))
        cap = float(math.ceil(1.0 / epsilon))
        bounds.append(
            BoundRecord(
                name="gains_at_or_above_epsilon",
                level=len(traj),
                lhs=count,
                rhs=cap,
                slack=cap - count,
                passed=count <= cap,
            )
        )

    diag = limit_diagnostics(traj, scenario.epsilon)
    notes = (
        f"epsilon={scenario.epsilon!r}",
        f"u_last={diag.u_last!r}",
        f"first_n_with_gain_below_epsilon={diag.first_n_with_gain_below_epsilon}",
        f"max_tail_gain={diag.max_tail_gain!r}",
    )

    return Report(
        scenario=scenario.name,
        kind=scenario.kind,
        passed=all(b.passed for b in bounds),
        steps=steps,
        bounds=tuple(bounds),
        notes=notes,
    )


def _run_prediction(scenario: Scenario, payload: PredictionPayload, slack: float) -> Report:
    result = verify_prediction_bounds(
        payload.hypotheses,
        payload.kernels,
        payload.loss,
        payload.contexts,
        scenario.n_max,
        slack_tolerance=slack,
    )

    bounds = list(result.records)
    notes = [f"level {n}: skipped ({reason})" for n, reason in result.skipped]
    for n in range(scenario.n_max + 1):
        check = decomposition_residual(payload.hypotheses, n, payload.kernels)
        if check.residual is None:
            notes.append(f"level {n}: decomposition skipped ({check.skipped_reason})")
            continue
        bounds.append(
            BoundRecord(
                name="decomposition_residual",
                level=n,
                lhs=check.residual,
                rhs=IDENTITY_TOLERANCE,
                slack=IDENTITY_TOLERANCE - check.residual,
                passed=check.residual <= IDENTITY_TOLERANCE,
            )
        )

    by_level: dict[int, list[BoundRecord]] = {}
    for record in bounds:
        by_level.setdefault(record.level, []).append(record)

    utilities = {summary.level: summary.utility for summary in result.levels}
    taus = {summary.level: summary.tau_n for summary in result.levels}
    steps = []
    for summary in result.levels:
        n = summary.level
        level_records = by_level.get(n, [])
        worst = min(level_records, key=lambda r: r.slack) if level_records else None
        steps.append(
            StepRecord(
                n=n,
                utility=summary.utility,
                delta=(utilities[n + 1] - utilities[n]) if n + 1 in utilities else None,
                tau=taus[n],
                bound_lhs=worst.lhs if worst else None,
                bound_rhs=worst.rhs if worst else None,
                slack=worst.slack if worst else None,
                passed=all(r.passed for r in level_records) if level_records else None,
            )
        )

    return Report(
        scenario=scenario.name,
        kind=scenario.kind,
        passed=all(b.passed for b in bounds),
        steps=tuple(steps),
        bounds=tuple(bounds),
        notes=tuple(notes),
    )


def _run_logic(scenario: Scenario, payload: LogicPayload) -> Report:
    verdicts = []
    steps = []
    for i, (text, phi) in enumerate(zip(payload.texts, payload.formulas)):
        result = gl_decide(phi)
        if result.is_valid:
            witness_ok = True
            countermodel = None
            search_levels = tuple(
                (lvl.world_count, lvl.frames_checked, lvl.valuations_per_frame)
                for lvl in result.trace.levels
            )
        else:
            cm = result.countermodel
            # The witness is good iff the formula really is false at the named world.
            witness_ok = model_check(phi, cm.model, cm.world) is False
            search_levels = None
            countermodel = CountermodelRecord(
                worlds=tuple(sorted(cm.model.worlds)),
                relation=tuple(sorted(cm.model.relation)),
                valuation=tuple(
                    (w, tuple(sorted(atoms))) for w, atoms in cm.model.valuation
                ),
                refuting_world=cm.world,
            )
        verdicts.append(
            VerdictRecord(
                index=i + 1,
                formula=text,
                verdict=result.verdict,
                witness_ok=witness_ok,
                countermodel=countermodel,
                search_levels=search_levels,
            )
        )
        steps.append(StepRecord(n=i + 1, passed=witness_ok))

    return Report(
        scenario=scenario.name,
        kind=scenario.kind,
        passed=all(v.witness_ok for v in verdicts),
        steps=tuple(steps),
        verdicts=tuple(verdicts),
    )


def run_experiment(scenario: Scenario, slack_tolerance: float = DEFAULT_SLACK) -> Report:
    """Run one scenario to a report; deterministic given the scenario contents."""
    payload = scenario.payload
    if isinstance(payload, TrajectoryPayload):
        return _run_trajectory(scenario, payload)
    if isinstance(payload, PredictionPayload):
        return _run_prediction(scenario, payload, slack_tolerance)
    return _run_logic(scenario, payload)
