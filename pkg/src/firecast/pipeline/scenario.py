"""Turn fire detections into a wildfire-frequency scenario on a cognitive map."""

from __future__ import annotations

import logging
from collections.abc import Iterable, Sequence
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import ArrayLike

from firecast.common.errors import DomainError, InputError
from firecast.common.results import Detection
from firecast.fcm.cognitive_map import CognitiveMap
from firecast.fcm.dynamics import ScenarioComparison, Verdict, as_activation, scenario_compare

logger = logging.getLogger(__name__)

NEUTRAL_ACTIVITY = 0.5


@dataclass(frozen=True)
class DetectionLog:
    """Timestamped detections, ordered by nondecreasing epoch seconds."""

    entries: tuple[tuple[int, Detection], ...] = field(default_factory=tuple)

    def __post_init__(self):
        entries = tuple((int(ts), det) for ts, det in self.entries)
        for (prev, _), (curr, _) in zip(entries, entries[1:]):
            if curr < prev:
                raise InputError(f"detection timestamps must be nondecreasing, got {curr} after {prev}")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def from_unordered(cls, entries: Iterable[tuple[int, Detection]]) -> DetectionLog:
        """Build a log after sorting entries by timestamp (stable)."""
        return cls(tuple(sorted(entries, key=lambda entry: entry[0])))

    def __len__(self) -> int:
        return len(self.entries)

    def in_window(self, start: int, end: int) -> list[tuple[int, Detection]]:
        return [(ts, det) for ts, det in self.entries if start <= ts <= end]


def _check_window(window: tuple[int, int]) -> tuple[int, int]:
    start, end = (int(v) for v in window)
    if start > end:
        raise InputError(f"window start {start} is after window end {end}")
    return start, end


def fire_count(log: DetectionLog, window: tuple[int, int]) -> int:
    """Number of fire-labelled detections with timestamp in ``[start, end]``."""
    start, end = _check_window(window)
    return sum(1 for _, det in log.in_window(start, end) if det.is_fire)


def frequency_activation(log: DetectionLog, window: tuple[int, int], cap: int) -> float:
    """``min(1, fire_count / cap)`` over the inclusive window.

    Raises:
        InputError: If the window is inverted or ``cap`` < 1.
    """
    if cap < 1:
        raise InputError(f"cap must be at least 1, got {cap}")
    return min(1.0, fire_count(log, window) / cap)


def neutral_baseline(n: int) -> np.ndarray:
    return np.full(n, NEUTRAL_ACTIVITY)


@dataclass(frozen=True, eq=False)
class ScenarioReport:
    """Outcome of one wildfire-frequency scenario.

    ``deltas`` are ``scenario_fixed_point - baseline_fixed_point`` per concept.
    """

    window: tuple[int, int]
    fire_count: int
    activation_e5: float
    comparison: ScenarioComparison
    concepts: tuple[str, ...]
    e5_index: int
    total_area_px: int = 0

    @property
    def baseline_fixed_point(self) -> np.ndarray:
        return self.comparison.baseline.final

    @property
    def scenario_fixed_point(self) -> np.ndarray:
        return self.comparison.scenario.final

    @property
    def deltas(self) -> np.ndarray:
        return self.comparison.deltas

    @property
    def verdicts(self) -> dict[str, Verdict]:
        return {"baseline": self.comparison.baseline.verdict, "scenario": self.comparison.scenario.verdict}

    @property
    def non_converged(self) -> bool:
        return not self.comparison.comparable

    def to_dict(self) -> dict[str, Any]:
        return {
            "window": {"start": self.window[0], "end": self.window[1]},
            "fire_count": self.fire_count,
            "activation_e5": self.activation_e5,
            "baseline": [float(v) for v in self.baseline_fixed_point],
            "scenario": [float(v) for v in self.scenario_fixed_point],
            "deltas": [float(v) for v in self.deltas],
            "verdicts": {name: verdict.value for name, verdict in self.verdicts.items()},
            "concepts": list(self.concepts),
            "total_area_px": self.total_area_px,
            "non_converged": self.non_converged,
        }


def run_fire_scenario(
    fcm: CognitiveMap,
    baseline: ArrayLike | None,
    e5_activation: float,
    e5_index: int,
    clamp: bool = False,
    window: tuple[int, int] = (0, 0),
    fire_count: int = 0,
    total_area_px: int = 0,
) -> ScenarioReport:
    """Compare ``baseline`` with a copy whose wildfire concept is set to ``e5_activation``.

    Args:
        fcm: Map to run.
        baseline: Initial activations; ``None`` means all 0.5.
        e5_activation: Wildfire-frequency activity in [0, 1].
        e5_index: Index of the wildfire-frequency concept.
        clamp: Hold the wildfire concept at its initial value in both runs.
        window, fire_count, total_area_px: Detection summary carried into the report.

    Raises:
        InputError: If ``e5_index`` is not a concept index.
        DomainError: If ``e5_activation`` is outside [0, 1].
    """
    if not 0 <= e5_index < fcm.n:
        raise InputError(f"concept index {e5_index} out of range 0..{fcm.n - 1}")
    if not 0.0 <= e5_activation <= 1.0:
        raise DomainError("e5_activation", e5_activation, "[0, 1]")
    base = as_activation(neutral_baseline(fcm.n) if baseline is None else baseline, fcm.n, "baseline")
    perturbed = base.copy()
    perturbed[e5_index] = e5_activation

    clamped: Sequence[int] = (e5_index,) if clamp else ()
    comparison = scenario_compare(fcm, base, perturbed, clamped)
    logger.info(
        f"Scenario on '{fcm.concepts[e5_index].name}' = {e5_activation:.4f}: "
        f"baseline {comparison.baseline.verdict.value}, scenario {comparison.scenario.verdict.value}"
    )
    return ScenarioReport(
        window=window,
        fire_count=fire_count,
        activation_e5=float(e5_activation),
        comparison=comparison,
        concepts=tuple(fcm.names),
        e5_index=e5_index,
        total_area_px=total_area_px,
    )


def forecast_from_log(
    fcm: CognitiveMap,
    log: DetectionLog,
    window: tuple[int, int],
    cap: int,
    e5_index: int,
    baseline: ArrayLike | None = None,
    clamp: bool = False,
) -> ScenarioReport:
    """Aggregate the log over ``window`` and run the resulting scenario."""
    start, end = _check_window(window)
    activation = frequency_activation(log, (start, end), cap)
    fires = [det for _, det in log.in_window(start, end) if det.is_fire]
    return run_fire_scenario(
        fcm,
        baseline,
        activation,
        e5_index,
        clamp=clamp,
        window=(start, end),
        fire_count=len(fires),
        total_area_px=sum(det.area_px or 0 for det in fires),
    )
