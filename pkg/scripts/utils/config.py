"""Section-wise access to config.yaml."""

from __future__ import annotations

from pathlib import Path
from typing import Any, Optional

import yaml

CONFIG_PATH = Path(__file__).resolve().parents[2] / "config.yaml"


def load_yaml(path: Path) -> dict:
    """Read a YAML mapping; an empty file yields an empty dict."""
    with open(path, encoding="utf-8") as f:
        data = yaml.safe_load(f)
    if data is None:
        return {}
    if not isinstance(data, dict):
        raise ValueError(f"{path}: expected a mapping at top level")
    return data


def load_section(name: str, defaults: dict[str, Any], path: Optional[Path] = None) -> dict[str, Any]:
    """Merge hard-coded defaults with one section of config.yaml.

    Args:
        name: Section key, e.g. "engine" or "render".
        defaults: Values used when the file or the key is missing.
        path: Alternate config file (tests).

    Returns:
        A new dict; file values win over defaults.
    """
    config_path = path or CONFIG_PATH
    if config_path.exists():
        cfg = load_yaml(config_path)
        return {**defaults, **(cfg.get(name) or {})}
    return dict(defaults)
