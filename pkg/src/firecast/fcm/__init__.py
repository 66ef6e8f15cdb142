"""Fuzzy cognitive maps: construction, linguistic weights and dynamics."""

from firecast.fcm.cognitive_map import CognitiveMap, Concept, fcm_build, validate_weights
from firecast.fcm.dynamics import (
    ScenarioComparison,
    Trajectory,
    Verdict,
    as_activation,
    fcm_run,
    fcm_step,
    scenario_compare,
)
from firecast.fcm.loader import (
    SANITARY_MAP_PATH,
    fcm_file_load,
    fcm_file_save,
    load_activation,
    map_from_dict,
    map_to_dict,
)
from firecast.fcm.scale import DEFAULT_SCALE, DEFAULT_TERMS, LinguisticScale, resolve_linguistic

__all__ = [
    "DEFAULT_SCALE",
    "DEFAULT_TERMS",
    "SANITARY_MAP_PATH",
    "CognitiveMap",
    "Concept",
    "LinguisticScale",
    "ScenarioComparison",
    "Trajectory",
    "Verdict",
    "as_activation",
    "fcm_build",
    "fcm_file_load",
    "fcm_file_save",
    "fcm_run",
    "fcm_step",
    "load_activation",
    "map_from_dict",
    "map_to_dict",
    "resolve_linguistic",
    "scenario_compare",
    "validate_weights",
]
