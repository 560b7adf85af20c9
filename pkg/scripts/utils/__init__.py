"""Configuration loading, run configuration and command dispatch."""

from scripts.utils.config import load_section
from scripts.utils.run_config import RunConfig, parse_config
from scripts.utils.runner import run

__all__ = ["RunConfig", "load_section", "parse_config", "run"]
