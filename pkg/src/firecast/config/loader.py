"""Load run configurations from TOML or YAML files."""

import json
import logging
import tomllib
from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from firecast.config.schema import FirecastConfig
from firecast.config.utils import resolve_path

logger = logging.getLogger(__name__)


def config_from_dict(config_dict: dict[str, Any] | None, source: str = "dictionary") -> FirecastConfig:
    """Validate a configuration dictionary.

    Args:
        config_dict: Raw configuration data; ``None`` yields all defaults.
        source: Description of where the data came from, used in errors.

    Returns:
        Validated configuration.

    Raises:
        ValueError: If validation fails.
    """
    try:
        return FirecastConfig(**(config_dict or {}))
    except ValidationError as e:
        raise ValueError(f"Invalid firecast configuration {source}:\n{str(e)}")


def read_structured_file(path: Path) -> Any:
    """Read a ``.toml``, ``.yaml``/``.yml`` or ``.json`` document."""
    suffix = path.suffix.lower()
    if suffix in [".yaml", ".yml"]:
        try:
            with path.open("r") as f:
                return yaml.safe_load(f)
        except Exception as e:
            raise ValueError(f"Error loading YAML file {path}: {str(e)}")
    if suffix == ".toml":
        try:
            with path.open("rb") as f:
                return tomllib.load(f)
        except Exception as e:
            raise ValueError(f"Error loading TOML file {path}: {str(e)}")
    if suffix == ".json":
        try:
            return json.loads(path.read_text())
        except json.JSONDecodeError as e:
            raise ValueError(f"Error loading JSON file {path}: {str(e)}")
    raise ValueError(f"Unsupported file format: {suffix} (expected .toml, .yaml, .yml or .json)")


def load_config(file_path: str | Path) -> FirecastConfig:
    """Load and validate a configuration file."""
    path = resolve_path(file_path, must_exist=True, error_prefix="Config file")
    data = read_structured_file(path)
    if data is not None and not isinstance(data, dict):
        raise ValueError(f"Config file {path} must contain a mapping at the top level")
    config = config_from_dict(data, source=f"in {path}")
    logger.info(f"Loaded configuration from {path}")
    return config
