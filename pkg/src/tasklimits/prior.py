"""Complexity-weighted hypothesis priors with Kraft validation and truncation.

Hypotheses carry declared prefix-free code lengths (in bits). The prior
weight of a hypothesis is ``2**-length`` normalized over the class, which is
well defined whenever the Kraft sum ``sum(2**-length)`` is at most 1.
Truncating the class at level n splits the prior mass into a head ``z_n``
and a tail ``tau_n`` with ``z_n + tau_n = 1``.

Code lengths are capped at 52 bits so every ``2**-length`` and every partial
sum of them is exact in float64; no rational arithmetic is needed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .errors import ConfigurationError, KraftError, ValidationError

KRAFT_TOLERANCE = 1e-12
MAX_CODE_LENGTH = 52


@dataclass(frozen=True)
class HypothesisDescriptor:
    """One hypothesis: an id, a prefix-free code length, and a kernel reference."""

    id: int
    code_length: int
    kernel_ref: str

    def __post_init__(self) -> None:
        if self.id < 0:
            raise ValidationError(f"hypothesis id must be non-negative, got {self.id}")
        if not 0 <= self.code_length <= MAX_CODE_LENGTH:
            raise ValidationError(
                f"code length must lie in [0, {MAX_CODE_LENGTH}], got {self.code_length}"
            )

    @property
    def raw_weight(self) -> float:
        """Unnormalized prior mass ``2**-code_length`` (exact in float64)."""
        return 2.0 ** -self.code_length


@dataclass(frozen=True)
class HypothesisClass:
    """Finite hypothesis list whose code lengths satisfy the Kraft inequality."""

    hypotheses: tuple[HypothesisDescriptor, ...]

    def __post_init__(self) -> None:
        hyps = tuple(self.hypotheses)
        if not hyps:
            raise ValidationError("hypothesis class must be non-empty")
        ids = [h.id for h in hyps]
        if len(set(ids)) != len(ids):
            raise ValidationError("hypothesis ids must be unique")
        kraft = math.fsum(h.raw_weight for h in hyps)
        if kraft > 1.0 + KRAFT_TOLERANCE:
            raise KraftError(f"Kraft sum {kraft!r} exceeds 1 for the declared code lengths")
        object.__setattr__(self, "hypotheses", hyps)

    @property
    def kraft_sum(self) -> float:
        return math.fsum(h.raw_weight for h in self.hypotheses)

    @property
    def max_code_length(self) -> int:
        return max(h.code_length for h in self.hypotheses)


@dataclass(frozen=True)
class TruncatedPrior:
    """Prior mass split at a complexity level.

    ``z_n`` is the normalized mass of hypotheses with code length <= level,
    ``tau_n`` the mass of the rest, and ``weights`` the within-head
    renormalization (empty when the head is empty).
    """

    level: int
    z_n: float
    tau_n: float
    weights: Mapping[int, float]


def normalize_prior(hclass: HypothesisClass) -> dict[int, float]:
    """Normalized prior weight per hypothesis id."""
    z = hclass.kraft_sum
    return {h.id: h.raw_weight / z for h in hclass.hypotheses}


def truncate(hclass: HypothesisClass, n: int) -> TruncatedPrior:
    """Split the prior at complexity level ``n`` (head: code length <= n)."""
    if n < 0:
        raise ConfigurationError(f"truncation level must be >= 0, got {n}")
    z = hclass.kraft_sum
    head = [h for h in hclass.hypotheses if h.code_length <= n]
    head_raw = math.fsum(h.raw_weight for h in head)
    tail_raw = math.fsum(h.raw_weight for h in hclass.hypotheses if h.code_length > n)
    weights = {h.id: h.raw_weight / head_raw for h in head} if head_raw > 0.0 else {}
    return TruncatedPrior(level=n, z_n=head_raw / z, tau_n=tail_raw / z, weights=weights)


def tail_mass_sequence(hclass: HypothesisClass, n_max: int) -> list[float]:
    """Tail masses ``[tau_0, ..., tau_n_max]``; non-increasing, 0 past the max length."""
    if n_max < 0:
        raise ConfigurationError(f"n_max must be >= 0, got {n_max}")
    return [truncate(hclass, n).tau_n for n in range(n_max + 1)]
