#!/usr/bin/env python
"""Generate YAML schema for the firecast run configuration."""

import yaml
from firecast.config.schema import FirecastConfig


def main() -> None:
    """Print the YAML schema to stdout."""
    schema = FirecastConfig.model_json_schema(by_alias=True)
    print(yaml.dump(schema, sort_keys=False))


if __name__ == "__main__":
    main()
