"""Render scenario reports as JSON and as a text table."""

from __future__ import annotations

import json
from dataclasses import dataclass

from firecast.pipeline.scenario import ScenarioReport

NON_CONVERGED_WARNING = "WARNING: at least one run did not reach a fixed point; deltas are indicative only"


@dataclass(frozen=True)
class RenderedReport:
    text: str
    json: str


def report_json(report: ScenarioReport) -> str:
    """Deterministic JSON document for ``report``."""
    return json.dumps(report.to_dict(), indent=2)


def delta_order(report: ScenarioReport) -> list[int]:
    """Concept indices by descending ``|delta|``, ties broken by index."""
    return sorted(range(len(report.deltas)), key=lambda i: (-abs(float(report.deltas[i])), i))


def report_table(report: ScenarioReport) -> str:
    name_width = max(len("concept"), *(len(name) for name in report.concepts))
    lines = [
        f"window: {report.window[0]}..{report.window[1]}",
        f"fire detections: {report.fire_count} (total area {report.total_area_px} px)",
        f"{report.concepts[report.e5_index]} activation: {report.activation_e5:.6f}",
        f"verdicts: baseline={report.verdicts['baseline'].value} scenario={report.verdicts['scenario'].value}",
    ]
    if report.non_converged:
        lines.append(NON_CONVERGED_WARNING)
    lines.append("")
    lines.append(f"{'id':>3}  {'concept':<{name_width}}  {'baseline':>10}  {'scenario':>10}  {'delta':>10}")
    for i in delta_order(report):
        lines.append(
            f"{i:>3}  {report.concepts[i]:<{name_width}}  "
            f"{float(report.baseline_fixed_point[i]):>10.6f}  "
            f"{float(report.scenario_fixed_point[i]):>10.6f}  "
            f"{float(report.deltas[i]):>10.6f}"
        )
    return "\n".join(lines) + "\n"


def render_report(report: ScenarioReport) -> RenderedReport:
    """Both artifacts for ``report``: the text table and the JSON document."""
    return RenderedReport(text=report_table(report), json=report_json(report))
