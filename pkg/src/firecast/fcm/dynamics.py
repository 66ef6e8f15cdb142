"""Iterative activation dynamics for fuzzy cognitive maps."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from enum import Enum
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from firecast.common.errors import DimensionError, DomainError, InputError
from firecast.fcm.cognitive_map import CognitiveMap
from firecast.nn.activations import sigmoid

logger = logging.getLogger(__name__)


class Verdict(Enum):
    """How a run ended."""

    FIXED_POINT = "fixed_point"
    LIMIT_CYCLE = "limit_cycle"
    EXHAUSTED = "exhausted"


@dataclass(frozen=True, eq=False)
class Trajectory:
    """States C(0), C(1), ... of one run plus its verdict.

    ``period`` is set only for ``Verdict.LIMIT_CYCLE``.
    """

    states: tuple[np.ndarray, ...]
    verdict: Verdict
    period: int | None = None

    @property
    def final(self) -> np.ndarray:
        return self.states[-1]

    @property
    def iterations(self) -> int:
        return len(self.states) - 1

    @property
    def converged(self) -> bool:
        return self.verdict is Verdict.FIXED_POINT

    def to_dict(self) -> dict[str, Any]:
        return {
            "states": [[float(v) for v in state] for state in self.states],
            "verdict": self.verdict.value,
            "period": self.period,
            "iterations": self.iterations,
        }


@dataclass(frozen=True, eq=False)
class ScenarioComparison:
    """Baseline and perturbed runs with per-concept final-state deltas."""

    baseline: Trajectory
    scenario: Trajectory
    deltas: np.ndarray

    @property
    def comparable(self) -> bool:
        """Deltas are only meaningful when both runs reached a fixed point."""
        return self.baseline.converged and self.scenario.converged

    def to_dict(self) -> dict[str, Any]:
        return {
            "baseline": [float(v) for v in self.baseline.final],
            "scenario": [float(v) for v in self.scenario.final],
            "deltas": [float(v) for v in self.deltas],
            "verdicts": {"baseline": self.baseline.verdict.value, "scenario": self.scenario.verdict.value},
            "comparable": self.comparable,
        }


def as_activation(values: ArrayLike, n: int, name: str = "activation") -> np.ndarray:
    """Validate an activation vector of length ``n`` with values in [0, 1].

    Raises:
        DimensionError: If the length is not ``n``.
        DomainError: If any value is outside [0, 1] or not finite.
    """
    array = np.array(values, dtype=np.float64).reshape(-1)
    if array.shape[0] != n:
        raise DimensionError(f"{name} has length {array.shape[0]}, expected {n}", axes=("concept",), expected=(n,), actual=array.shape)
    for i, value in enumerate(array):
        if not 0.0 <= value <= 1.0:
            raise DomainError(f"{name}[{i}]", float(value), "[0, 1]")
    array.setflags(write=False)
    return array


def _clamp_indices(fcm: CognitiveMap, clamped: Iterable[int]) -> list[int]:
    indices = sorted(set(int(i) for i in clamped))
    for i in indices:
        if not 0 <= i < fcm.n:
            raise InputError(f"clamped concept index {i} out of range 0..{fcm.n - 1}")
    return indices


def _advance(fcm: CognitiveMap, state: np.ndarray) -> np.ndarray:
    net = state @ fcm.weights
    if fcm.config.update_rule == "modified_kosko":
        net = net + state
    return sigmoid(fcm.config.lambda_ * net)


def fcm_step(fcm: CognitiveMap, state: ArrayLike) -> np.ndarray:
    """One synchronous update ``C_j(t+1) = sigmoid(lambda * sum_i W[i][j] * C_i(t))``.

    With ``update_rule="modified_kosko"`` the concept's own activity
    ``C_j(t)`` is added to the weighted sum. Results lie strictly inside (0, 1).
    """
    current = as_activation(state, fcm.n, "state")
    nxt = _advance(fcm, current)
    nxt.setflags(write=False)
    return nxt


def _classify(states: list[np.ndarray], eps: float) -> tuple[Verdict, int | None] | None:
    latest = states[-1]
    if np.max(np.abs(latest - states[-2])) < eps:
        return Verdict.FIXED_POINT, None
    for period in range(2, len(states)):
        if np.max(np.abs(latest - states[-1 - period])) < eps:
            return Verdict.LIMIT_CYCLE, period
    return None


def fcm_run(fcm: CognitiveMap, initial: ArrayLike, clamped: Sequence[int] = ()) -> Trajectory:
    """Iterate :func:`fcm_step` from ``initial`` for at most ``max_iters`` steps.

    Stops with ``fixed_point`` once no component changes by ``eps`` or more,
    with ``limit_cycle`` once the state comes back within ``eps`` of an
    earlier one, and with ``exhausted`` when the budget runs out.

    Args:
        fcm: The map to run.
        initial: C(0), included as the first state.
        clamped: Concept indices held at their initial value on every step.
    """
    start = as_activation(initial, fcm.n, "initial")
    held = _clamp_indices(fcm, clamped)
    states = [start]
    outcome = None
    for _ in range(fcm.config.max_iters):
        nxt = _advance(fcm, states[-1])
        if held:
            nxt[held] = start[held]
        nxt.setflags(write=False)
        states.append(nxt)
        outcome = _classify(states, fcm.config.eps)
        if outcome is not None:
            break

    verdict, period = outcome if outcome is not None else (Verdict.EXHAUSTED, None)
    if verdict is Verdict.FIXED_POINT:
        logger.debug(f"FCM run reached a fixed point after {len(states) - 1} iterations")
    elif verdict is Verdict.LIMIT_CYCLE:
        logger.warning(f"FCM run entered a limit cycle of period {period} after {len(states) - 1} iterations")
    elif fcm.config.max_iters > 0:
        logger.warning(f"FCM run did not converge within {fcm.config.max_iters} iterations")
    return Trajectory(states=tuple(states), verdict=verdict, period=period)


def scenario_compare(
    fcm: CognitiveMap,
    baseline: ArrayLike,
    perturbed: ArrayLike,
    clamped: Sequence[int] = (),
) -> ScenarioComparison:
    """Run the map from both vectors and report ``scenario - baseline`` per concept."""
    base_run = fcm_run(fcm, baseline, clamped)
    scenario_run = fcm_run(fcm, perturbed, clamped)
    deltas = scenario_run.final - base_run.final
    deltas.setflags(write=False)
    comparison = ScenarioComparison(baseline=base_run, scenario=scenario_run, deltas=deltas)
    if not comparison.comparable:
        logger.warning("Scenario deltas compare non-converged runs; treat them as indicative only")
    return comparison
