"""Expanding solved-task trajectories and their utility dynamics.

A trajectory is a nested chain of solved-task sets indexed by capacity
n = 1..N. Utilities are the measure masses of the sets; marginal gains are
the masses of the novelty sets between consecutive levels. Nestedness is
enforced everywhere: rule-built chains accumulate by construction, and
explicitly supplied chains are rejected if any level drops a task.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Union

from .errors import ConfigurationError, NestednessError, ValidationError
from .taskspace import TaskMeasure, TaskSet, measure_of, novelty


@dataclass(frozen=True)
class DifficultyThreshold:
    """Solve every task whose difficulty is at most the capacity level.

    ``difficulties[t]`` is the difficulty of task ``t`` (a positive integer);
    level n solves exactly the tasks with difficulty <= n.
    """

    difficulties: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "difficulties", tuple(int(d) for d in self.difficulties))
        for t, d in enumerate(self.difficulties):
            if d < 1:
                raise ConfigurationError(f"difficulty of task {t} must be >= 1, got {d}")


@dataclass(frozen=True)
class RandomCoverage:
    """Each level independently adds every unsolved task with a fixed probability.

    The chain starts from the empty set; level 1 is the first coverage round.
    Accumulation makes nestedness hold by construction.
    """

    step_probability: float
    seed: int

    def __post_init__(self) -> None:
        p = float(self.step_probability)
        if not 0.0 <= p <= 1.0:
            raise ConfigurationError(f"step probability must lie in [0, 1], got {p}")
        object.__setattr__(self, "step_probability", p)
        object.__setattr__(self, "seed", int(self.seed))


@dataclass(frozen=True)
class ExplicitSets:
    """A hand-supplied chain of solved-task sets, validated for nestedness."""

    sets: tuple[TaskSet, ...]

    def __post_init__(self) -> None:
        sets = tuple(self.sets)
        if not sets:
            raise ConfigurationError("explicit chain needs at least one set")
        for i in range(len(sets) - 1):
            if not sets[i].issubset(sets[i + 1]):
                dropped = sorted(sets[i].members - sets[i + 1].members)
                raise NestednessError(
                    f"solved set at level {i + 2} drops previously solved tasks {dropped}"
                )
        object.__setattr__(self, "sets", sets)


SolverRule = Union[DifficultyThreshold, RandomCoverage, ExplicitSets]


@dataclass(frozen=True)
class SystemTrajectory:
    """Nested chain of solved-task sets over a fixed task measure."""

    solved_sets: tuple[TaskSet, ...]
    mu: TaskMeasure

    def __post_init__(self) -> None:
        sets = tuple(self.solved_sets)
        if not sets:
            raise ValidationError("trajectory needs at least one level")
        for s in sets:
            for t in s.members:
                if t >= self.mu.size:
                    raise ValidationError(
                        f"task {t} outside the measure's space of size {self.mu.size}"
                    )
        for i in range(len(sets) - 1):
            if not sets[i].issubset(sets[i + 1]):
                raise NestednessError(f"solved sets not nested between levels {i + 1} and {i + 2}")
        object.__setattr__(self, "solved_sets", sets)

    def __len__(self) -> int:
        return len(self.solved_sets)


@dataclass(frozen=True)
class LimitDiagnostics:
    """Finite proxies for the limiting behaviour of a trajectory.

    ``first_n_with_gain_below_epsilon`` is the first level n (1-based, over
    gains n = 1..N-1) at which the gain drops below epsilon, or ``None`` if
    that never happens within the run. ``max_tail_gain`` is the largest gain
    over the final quartile of gain indices.
    """

    u_last: float
    first_n_with_gain_below_epsilon: int | None
    max_tail_gain: float


def build_trajectory(rule: SolverRule, n_max: int, mu: TaskMeasure) -> SystemTrajectory:
    """Build the nested solved-set chain of length ``n_max`` under ``rule``."""
    if n_max < 1:
        raise ConfigurationError(f"n_max must be >= 1, got {n_max}")

    if isinstance(rule, DifficultyThreshold):
        missing = [t for t in sorted(mu.support) if t >= len(rule.difficulties)]
        if missing:
            raise ConfigurationError(f"no difficulty declared for tasks {missing} in the support")
        sets = tuple(
            TaskSet.of(
                t for t, d in enumerate(rule.difficulties) if d <= n and t < mu.size
            )
            for n in range(1, n_max + 1)
        )
    elif isinstance(rule, RandomCoverage):
        rng = random.Random(rule.seed)
        solved: set[int] = set()
        chain: list[TaskSet] = []
        for _ in range(n_max):
            for t in range(mu.size):
                if t not in solved and rng.random() < rule.step_probability:
                    solved.add(t)
            chain.append(TaskSet.of(solved))
        sets = tuple(chain)
    elif isinstance(rule, ExplicitSets):
        if len(rule.sets) < n_max:
            raise ConfigurationError(
                f"explicit chain supplies {len(rule.sets)} sets but n_max is {n_max}"
            )
        sets = rule.sets[:n_max]
    else:
        raise ConfigurationError(f"unknown solver rule {type(rule).__name__}")

    return SystemTrajectory(solved_sets=sets, mu=mu)


def utility_sequence(traj: SystemTrajectory) -> list[float]:
    """U(n) for n = 1..N: the measure mass of each solved set."""
    return [measure_of(s, traj.mu) for s in traj.solved_sets]


def marginal_gains(traj: SystemTrajectory) -> list[float]:
    """Gains as novelty-set masses, one per consecutive pair of levels.

    Returned as the mass of the newly solved tasks, which is exactly
    non-negative; equality with the utility differences is a tested
    invariant rather than the computation route.
    """
    if len(traj) < 2:
        raise ConfigurationError("marginal gains need a trajectory of length >= 2")
    return [
        measure_of(novelty(traj.solved_sets[i + 1], traj.solved_sets[i]), traj.mu)
        for i in range(len(traj) - 1)
    ]


def telescoping_residual(traj: SystemTrajectory) -> float:
    """|U(N) - U(1) - sum of gains|; contractually <= 1e-12."""
    if len(traj) < 2:
        raise ConfigurationError("telescoping needs a trajectory of length >= 2")
    utilities = utility_sequence(traj)
    gains = marginal_gains(traj)
    return abs(utilities[-1] - utilities[0] - math.fsum(gains))


def limit_diagnostics(traj: SystemTrajectory, epsilon: float) -> LimitDiagnostics:
    """Report the last utility, the first sub-epsilon gain, and the tail gain peak."""
    if epsilon <= 0:
        raise ConfigurationError(f"epsilon must be positive, got {epsilon}")
    utilities = utility_sequence(traj)
    if len(traj) < 2:
        return LimitDiagnostics(
            u_last=utilities[-1], first_n_with_gain_below_epsilon=None, max_tail_gain=0.0
        )
    gains = marginal_gains(traj)
    first_n = next((i + 1 for i, g in enumerate(gains) if g < epsilon), None)
    tail = gains[-max(1, math.ceil(len(gains) / 4)):]
    return LimitDiagnostics(
        u_last=utilities[-1],
        first_n_with_gain_below_epsilon=first_n,
        max_tail_gain=max(tail),
    )
