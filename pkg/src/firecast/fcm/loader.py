"""Read and write cognitive map files.

Map file layout (JSON, YAML or TOML)::

    {"concepts": [{"id": 0, "name": "population"}, ...],
     "weights": [[...n x n...]],
     "edges": [{"from": 0, "to": 2, "term": "moderately"}, ...],
     "scale": {"term": value, ...},
     "config": {"lambda": 1.0, "allow_self_loops": false, "eps": 1e-6, "max_iters": 100}}

``weights`` and ``edges`` are both optional; edges are applied on top of the
matrix (or on a zero matrix) after their terms are resolved through the
scale. The file's ``scale`` is merged over the default scale.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Any

import numpy as np
from pydantic import ValidationError

from firecast.common.errors import InputError, MapValidationError
from firecast.config.loader import read_structured_file
from firecast.config.schema import FcmConfig
from firecast.config.utils import resolve_path
from firecast.fcm.cognitive_map import CognitiveMap, Concept, fcm_build
from firecast.fcm.dynamics import as_activation
from firecast.fcm.scale import DEFAULT_SCALE, resolve_linguistic

logger = logging.getLogger(__name__)

MAPS_DIR = Path(__file__).parent / "maps"
SANITARY_MAP_PATH = MAPS_DIR / "sanitary.json"
BUILTIN_MAPS = {"sanitary": SANITARY_MAP_PATH}


def _parse_concepts(raw: Any) -> list[Concept]:
    if not isinstance(raw, list) or not raw:
        raise MapValidationError("map needs a non-empty 'concepts' list")
    concepts = []
    for position, item in enumerate(raw):
        if isinstance(item, str):
            concepts.append(Concept(id=position, name=item))
        elif isinstance(item, dict) and "name" in item:
            concepts.append(Concept(id=int(item.get("id", position)), name=item["name"]))
        else:
            raise MapValidationError(f"concept entry {position} must be a name or an object with 'id' and 'name'")
    return concepts


def _edge_endpoint(value: Any, names: dict[str, int], n: int, edge_no: int) -> int:
    if isinstance(value, str):
        if value not in names:
            raise MapValidationError(f"edge {edge_no} references unknown concept '{value}'")
        return names[value]
    index = int(value)
    if not 0 <= index < n:
        raise MapValidationError(f"edge {edge_no} references concept index {index} outside 0..{n - 1}")
    return index


def map_from_dict(
    data: dict[str, Any], source: str = "dictionary", default_config: FcmConfig | None = None
) -> CognitiveMap:
    """Build a validated map from the map-file dictionary layout.

    ``default_config`` applies when the data has no ``config`` section.
    """
    if not isinstance(data, dict):
        raise MapValidationError(f"map {source} must be a mapping at the top level")

    config = default_config or FcmConfig()
    try:
        if data.get("config") is not None:
            config = FcmConfig.model_validate(data["config"])
    except ValidationError as e:
        raise ValueError(f"Invalid FCM configuration in {source}:\n{str(e)}")

    scale = DEFAULT_SCALE.merged(data.get("scale") or {})
    concepts = _parse_concepts(data.get("concepts"))
    n = len(concepts)

    if data.get("weights") is not None:
        try:
            weights = np.array(data["weights"], dtype=np.float64)
        except (TypeError, ValueError) as e:
            raise MapValidationError(f"weights in {source} are not a numeric matrix: {e}")
        if weights.ndim != 2 or weights.shape[0] != weights.shape[1]:
            raise MapValidationError(f"weights in {source} must be square, got shape {weights.shape}")
    else:
        weights = np.zeros((n, n))

    edges = data.get("edges") or []
    if edges and weights.shape != (n, n):
        raise MapValidationError(f"weights in {source} are {weights.shape[0]}x{weights.shape[1]} but there are {n} concepts")
    names = {c.name: c.id for c in concepts}
    for edge_no, edge in enumerate(edges):
        if not isinstance(edge, dict) or "from" not in edge or "to" not in edge:
            raise MapValidationError(f"edge {edge_no} needs 'from' and 'to'")
        cause = _edge_endpoint(edge["from"], names, n, edge_no)
        effect = _edge_endpoint(edge["to"], names, n, edge_no)
        if "term" in edge:
            value = resolve_linguistic(scale, edge["term"])
        elif "weight" in edge:
            value = float(edge["weight"])
        else:
            raise MapValidationError(f"edge {edge_no} needs a 'term' or a 'weight'")
        weights[cause, effect] = value

    return fcm_build(concepts, weights, config, scale)


def map_to_dict(fcm: CognitiveMap) -> dict[str, Any]:
    """Map-file dictionary for ``fcm``; the inverse of :func:`map_from_dict`."""
    return {
        "concepts": [{"id": c.id, "name": c.name} for c in fcm.concepts],
        "weights": [[float(v) for v in row] for row in fcm.weights],
        "scale": fcm.scale.to_dict(),
        "config": fcm.config.to_dict(),
    }


def fcm_file_load(file_path: str | Path, default_config: FcmConfig | None = None) -> CognitiveMap:
    """Load a map file, or a built-in map by name (``"sanitary"``).

    Raises:
        FileNotFoundError: If the file does not exist.
        UnknownTermError: If an edge uses a term missing from the scale.
        MapValidationError: If the matrix breaks the weight rules.
        ValueError: If the file cannot be parsed.
    """
    if str(file_path) in BUILTIN_MAPS:
        file_path = BUILTIN_MAPS[str(file_path)]
    path = resolve_path(file_path, must_exist=True, error_prefix="Map file")
    fcm = map_from_dict(read_structured_file(path), source=str(path), default_config=default_config)
    logger.info(f"Loaded cognitive map from {path} ({fcm.n} concepts)")
    return fcm


def fcm_file_save(fcm: CognitiveMap, file_path: str | Path) -> Path:
    path = Path(file_path)
    path.write_text(json.dumps(map_to_dict(fcm), indent=2) + "\n")
    logger.info(f"Saved cognitive map to {path}")
    return path


def load_activation(file_path: str | Path, n: int) -> np.ndarray:
    """Read an activation file ``{"values": [...]}`` of length ``n``."""
    path = resolve_path(file_path, must_exist=True, error_prefix="Activation file")
    data = read_structured_file(path)
    if not isinstance(data, dict) or "values" not in data:
        raise InputError(f"Activation file {path} must contain a 'values' list")
    return as_activation(data["values"], n, name=f"{path.name} values")
