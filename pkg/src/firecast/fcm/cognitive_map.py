"""Fuzzy cognitive map construction and validation.

A map is a digraph G = {E, W}: concepts E and a cognitive matrix W whose
entry ``W[i][j]`` in [-1, 1] is the causal influence of concept ``i`` (row,
cause) on concept ``j`` (column, effect). The main diagonal must be zero
unless self-loops are explicitly enabled.
"""

from __future__ import annotations

import logging
import math
from collections.abc import Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike

from firecast.common.errors import MapValidationError
from firecast.config.schema import FcmConfig
from firecast.fcm.scale import DEFAULT_SCALE, LinguisticScale

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Concept:
    """A vertex of the map."""

    id: int
    name: str

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name.strip():
            raise MapValidationError(f"concept {self.id} needs a non-empty name")


@dataclass(frozen=True, eq=False)
class CognitiveMap:
    """Validated, immutable fuzzy cognitive map. Build it with :func:`fcm_build`."""

    concepts: tuple[Concept, ...]
    weights: np.ndarray
    config: FcmConfig = field(default_factory=FcmConfig)
    scale: LinguisticScale = DEFAULT_SCALE

    @property
    def n(self) -> int:
        return len(self.concepts)

    @property
    def names(self) -> list[str]:
        return [concept.name for concept in self.concepts]

    def index_of(self, key: int | str) -> int:
        """Concept index from an index or a concept name."""
        if isinstance(key, str) and not key.lstrip("-").isdigit():
            for concept in self.concepts:
                if concept.name == key:
                    return concept.id
            raise MapValidationError(f"Unknown concept '{key}'. Available concepts: {', '.join(self.names)}")
        index = int(key)
        if not 0 <= index < self.n:
            raise MapValidationError(f"concept index {index} out of range 0..{self.n - 1}")
        return index

    def weight(self, cause: int, effect: int) -> float:
        return float(self.weights[cause, effect])

    def permuted(self, order: Sequence[int]) -> CognitiveMap:
        """Relabelled copy where new concept ``k`` is old concept ``order[k]``."""
        order = list(order)
        concepts = [Concept(id=k, name=self.concepts[old].name) for k, old in enumerate(order)]
        weights = self.weights[np.ix_(order, order)]
        return fcm_build(concepts, weights, self.config, self.scale)


def validate_weights(weights: np.ndarray, allow_self_loops: bool) -> None:
    """Raise ``MapValidationError`` for the first entry breaking the weight rules."""
    for (i, j), value in np.ndenumerate(weights):
        value = float(value)
        if not (math.isfinite(value) and -1.0 <= value <= 1.0):
            raise MapValidationError(
                f"weight ({i}, {j}) = {value} is outside [-1, 1]", row=int(i), col=int(j), value=value
            )
    if not allow_self_loops:
        for i in range(weights.shape[0]):
            if weights[i, i] != 0.0:
                raise MapValidationError(
                    f"diagonal weight ({i}, {i}) = {float(weights[i, i])} is nonzero but self-loops are disabled",
                    row=i,
                    col=i,
                    value=float(weights[i, i]),
                )


def fcm_build(
    concepts: Sequence[Concept],
    weights: ArrayLike,
    config: FcmConfig | None = None,
    scale: LinguisticScale | None = None,
) -> CognitiveMap:
    """Validate concepts and weights into an immutable map.

    Args:
        concepts: Concepts with unique ids 0..n-1 (any order).
        weights: n x n cognitive matrix, row = cause, column = effect.
        config: Dynamics settings; ``allow_self_loops`` governs the diagonal.
        scale: Linguistic scale kept with the map for term lookups.

    Raises:
        MapValidationError: On non-square or mismatched matrices, bad ids,
            weights outside [-1, 1] or a nonzero diagonal without self-loops.
    """
    config = config or FcmConfig()
    ordered = sorted(concepts, key=lambda c: c.id)
    ids = [c.id for c in ordered]
    if ids != list(range(len(ordered))):
        raise MapValidationError(f"concept ids must be unique and contiguous from 0, got {ids}")
    if not ordered:
        raise MapValidationError("a cognitive map needs at least one concept")

    try:
        matrix = np.array(weights, dtype=np.float64)
    except (TypeError, ValueError) as e:
        raise MapValidationError(f"weights are not a numeric matrix: {e}")
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        raise MapValidationError(f"weights must be a square matrix, got shape {matrix.shape}")
    if matrix.shape[0] != len(ordered):
        raise MapValidationError(f"weights are {matrix.shape[0]}x{matrix.shape[1]} but there are {len(ordered)} concepts")

    validate_weights(matrix, config.allow_self_loops)
    matrix.setflags(write=False)
    logger.debug(f"Built cognitive map with {len(ordered)} concepts, {int(np.count_nonzero(matrix))} edges")
    return CognitiveMap(concepts=tuple(ordered), weights=matrix, config=config, scale=scale or DEFAULT_SCALE)
