"""Shared fixtures-in-code for the test suite: randomized scenario and
formula generators plus independent brute-force oracles.

Everything here is seeded and deterministic. The oracles deliberately avoid
the implementation paths they check: the frame-validity oracle evaluates
with numpy boolean arrays over the full labeled frame enumeration, while
the decision procedure uses bigint masks over canonical representatives;
the Bayes-risk oracle is a plain double loop.
"""

from __future__ import annotations

import random
from pathlib import Path

import numpy as np

from tasklimits.modal import (
    And,
    Atom,
    Box,
    Implies,
    ModalFormula,
    Not,
    Or,
    atom_indices,
    box_subformulas,
    count_nodes,
    enumerate_frames,
)
from tasklimits.prediction import ConditionalKernel, ContextDistribution, LossTable
from tasklimits.prior import HypothesisClass, HypothesisDescriptor

SCENARIO_DIR = Path(__file__).resolve().parent.parent / "scenarios"

MAX_RANDOM_CODE_LENGTH = 12


def random_stochastic_rows(rng: random.Random, rows: int, cols: int) -> list[list[float]]:
    table = []
    for _ in range(rows):
        raw = [rng.random() + 1e-9 for _ in range(cols)]
        total = sum(raw)
        table.append([x / total for x in raw])
    return table


def random_kraft_lengths(rng: random.Random, count: int) -> list[int]:
    """Code lengths <= 12 bits whose Kraft sum is <= 1 by construction."""
    budget = 1 << MAX_RANDOM_CODE_LENGTH
    lengths = []
    for i in range(count):
        remaining_after = count - i - 1
        max_cost = budget - remaining_after
        shortest = MAX_RANDOM_CODE_LENGTH - (max_cost.bit_length() - 1)
        length = rng.randint(max(0, shortest), MAX_RANDOM_CODE_LENGTH)
        lengths.append(length)
        budget -= 1 << (MAX_RANDOM_CODE_LENGTH - length)
    return lengths


def random_prediction_scenario(seed: int):
    """(hypothesis class, kernels, loss, contexts) within the randomized-suite limits."""
    rng = random.Random(seed)
    n_outcomes = rng.randint(2, 5)
    n_contexts = rng.randint(1, 10)
    n_hypotheses = rng.randint(1, 64)
    n_actions = rng.randint(1, 8)

    lengths = random_kraft_lengths(rng, n_hypotheses)
    descriptors = tuple(
        HypothesisDescriptor(id=i, code_length=lengths[i], kernel_ref=f"k{i}")
        for i in range(n_hypotheses)
    )
    hclass = HypothesisClass(descriptors)
    kernels = {
        f"k{i}": ConditionalKernel(random_stochastic_rows(rng, n_contexts, n_outcomes))
        for i in range(n_hypotheses)
    }
    loss = LossTable([[rng.random() for _ in range(n_outcomes)] for _ in range(n_actions)])
    contexts = ContextDistribution(random_stochastic_rows(rng, 1, n_contexts)[0])
    return hclass, kernels, loss, contexts


def brute_force_bayes_risk(rho_row, loss_table) -> tuple[float, int]:
    """Minimum expected loss by explicit double loop; ties to the lowest action."""
    best_value = None
    best_action = -1
    for u, action_row in enumerate(loss_table):
        expected = sum(l * p for l, p in zip(action_row, rho_row))
        if best_value is None or expected < best_value:
            best_value = expected
            best_action = u
    return best_value, best_action


def random_formula(
    rng: random.Random,
    max_nodes: int = 15,
    n_atoms: int = 2,
    max_box_depth: int = 3,
    max_distinct_boxes: int = 3,
) -> ModalFormula:
    """Random formula within the corpus limits (retries until all hold)."""

    def gen(budget: int, box_depth: int) -> ModalFormula:
        if budget <= 1:
            return Atom(rng.randrange(n_atoms))
        roll = rng.random()
        if roll < 0.25:
            return Atom(rng.randrange(n_atoms))
        if roll < 0.40:
            return Not(gen(budget - 1, box_depth))
        if roll < 0.62 and box_depth > 0:
            return Box(gen(budget - 1, box_depth - 1))
        left_budget = rng.randint(1, budget - 2) if budget > 2 else 1
        left = gen(left_budget, box_depth)
        right = gen(budget - 1 - left_budget, box_depth)
        kind = rng.randrange(3)
        if kind == 0:
            return And(left, right)
        if kind == 1:
            return Or(left, right)
        return Implies(left, right)

    while True:
        phi = gen(max_nodes, max_box_depth)
        if count_nodes(phi) <= max_nodes and len(box_subformulas(phi)) <= max_distinct_boxes:
            return phi


def frame_validity_oracle(phi: ModalFormula, world_bound: int) -> bool:
    """True iff ``phi`` holds at every world of every labeled frame up to the bound,
    under every valuation. Batched over valuations with numpy booleans."""
    atoms = atom_indices(phi)
    position = {atom: i for i, atom in enumerate(atoms)}
    for world_count in range(1, world_bound + 1):
        n_valuations = 2 ** (len(atoms) * world_count)
        index = np.arange(n_valuations, dtype=np.int64)
        atom_truth = {
            atom: np.stack(
                [
                    (index >> (position[atom] * world_count + w)) & 1
                    for w in range(world_count)
                ],
                axis=1,
            ).astype(bool)
            for atom in atoms
        }
        for relation in enumerate_frames(world_count):
            successors = [
                [v for (u, v) in relation if u == w] for w in range(world_count)
            ]
            cache: dict[ModalFormula, np.ndarray] = {}

            def evaluate(node: ModalFormula) -> np.ndarray:
                if node in cache:
                    return cache[node]
                if isinstance(node, Atom):
                    value = atom_truth[node.index]
                elif isinstance(node, Not):
                    value = ~evaluate(node.operand)
                elif isinstance(node, And):
                    value = evaluate(node.left) & evaluate(node.right)
                elif isinstance(node, Or):
                    value = evaluate(node.left) | evaluate(node.right)
                elif isinstance(node, Implies):
                    value = ~evaluate(node.left) | evaluate(node.right)
                else:
                    child = evaluate(node.operand)
                    columns = []
                    for w in range(world_count):
                        if successors[w]:
                            columns.append(child[:, successors[w]].all(axis=1))
                        else:
                            columns.append(np.ones(n_valuations, dtype=bool))
                    value = np.stack(columns, axis=1)
                cache[node] = value
                return value

            if not evaluate(phi).all():
                return False
    return True
