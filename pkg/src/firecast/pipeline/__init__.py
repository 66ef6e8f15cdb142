"""Bridge from fire detections to cognitive-map scenarios."""

from firecast.pipeline.report import RenderedReport, render_report
from firecast.pipeline.scenario import (
    DetectionLog,
    ScenarioReport,
    forecast_from_log,
    frequency_activation,
    neutral_baseline,
    run_fire_scenario,
)

__all__ = [
    "DetectionLog",
    "RenderedReport",
    "ScenarioReport",
    "forecast_from_log",
    "frequency_activation",
    "neutral_baseline",
    "render_report",
    "run_fire_scenario",
]
