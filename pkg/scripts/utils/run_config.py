"""Run configuration for one CLI command.

Precedence, lowest first: hard-coded defaults (plus the config.yaml sections
read by each module), a flat ``key = value`` file given with ``--config``,
command-line flags. Every problem is a ``click.UsageError`` with a one-line message
naming the field, so click exits with code 2.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Any, Mapping, Optional

import click
from dotenv.parser import parse_stream

from scripts.utils.config import load_yaml

COMMANDS = (
    "julia",
    "filled",
    "mset",
    "limitset",
    "yoccoz-disks",
    "yoccoz-verify",
    "sturmian",
    "minkowski",
    "cifs",
    "motion",
    "fixed-points",
    "centers",
)

# Commands whose p, q form an exponent beta = p/q > 1.
EXPONENT_COMMANDS = {"julia", "filled", "mset", "cifs", "motion"}

CHOICES = {
    "mode": ("boundary", "backward"),
    "variant": ("m_beta_zero", "m_beta"),
    "coords": ("original", "covj"),
    "disk_variant": ("mating", "classical"),
    "family": ("power", "mating"),
}

YAML_SUFFIXES = (".yaml", ".yml")

_COMMAND_DEFAULTS: dict[str, dict[str, Any]] = {
    "sturmian": {"p": 1, "q": 3},
    "mset": {"width": 6.0},
}


def parse_complex(value: Any) -> complex:
    """A complex number from "re,im", "re" or a plain number.

    Raises:
        ValueError: The text is not one or two finite numbers.
    """
    if isinstance(value, bool):
        raise ValueError(f"not a complex number: {value!r}")
    if isinstance(value, (int, float, complex)):
        z = complex(value)
    else:
        parts = [part.strip() for part in str(value).split(",")]
        if not 1 <= len(parts) <= 2:
            raise ValueError(f"not a complex number: {value!r}")
        z = complex(float(parts[0]), float(parts[1]) if len(parts) == 2 else 0.0)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise ValueError(f"not a finite complex number: {value!r}")
    return z


def format_complex(z: complex) -> str:
    return f"{z.real!r},{z.imag!r}"


class ComplexParam(click.ParamType):
    """Click type for "re,im" pairs."""

    name = "re,im"

    def convert(self, value: Any, param: Optional[click.Parameter], ctx: Optional[click.Context]) -> complex:
        if isinstance(value, complex):
            return value
        try:
            return parse_complex(value)
        except ValueError:
            self.fail(f"{value!r} is not a complex number written as re,im", param, ctx)


COMPLEX = ComplexParam()


def parse_fraction(text: Any) -> tuple[int, int]:
    """"p/q" as a pair of integers."""
    num, sep, den = str(text).partition("/")
    if not sep:
        raise ValueError(f"not a fraction p/q: {text!r}")
    return int(num), int(den)


@dataclass
class RunConfig:
    """Validated parameters of one command; ``None`` defers to config.yaml."""

    command: str
    # family
    p: int = 3
    q: int = 2
    c: complex = 0j
    a: complex = 4 + 0j
    family: str = "power"
    # grid
    center: complex = 0j
    width: float = 4.0
    px: int = 256
    py: Optional[int] = None
    # engine
    depth: Optional[int] = None
    budget: Optional[int] = None
    radius_override: Optional[float] = None
    workers: Optional[int] = None
    # outputs
    out: Optional[str] = None
    labels_csv: Optional[str] = None
    dimension_csv: Optional[str] = None
    palette: Optional[str] = None
    # renderers
    mode: str = "boundary"
    seed: Optional[complex] = None
    steps: Optional[int] = None
    variant: str = "m_beta_zero"
    sub_resolution: Optional[int] = None
    coords: str = "original"
    near_p_buffer: Optional[float] = None
    # combinatorics
    q_max: int = 8
    extra: tuple[tuple[int, int], ...] = ()
    disk_variant: str = "mating"
    degree: int = 2
    m: int = 1
    cf: str = "[0;(1)]"
    bits: int = 64
    # cifs and motion
    generations: Optional[int] = None
    tolerance: Optional[float] = None
    path_end: complex = 0.01 + 0j
    path_steps: int = 10
    period_max: Optional[int] = None
    n_points: Optional[int] = None
    # centers
    d: int = 2

    def as_dict(self) -> dict:
        """Plain YAML-safe values, complex numbers as "re,im".

        ``workers`` is left out: it never changes the results.
        """
        out = {}
        for key, value in asdict(self).items():
            if key == "workers":
                continue
            if isinstance(value, complex):
                value = format_complex(value)
            elif key == "extra":
                value = [f"{p}/{q}" for p, q in value]
            out[key] = value
        return out


FIELD_TYPES = {f.name: str(f.type) for f in fields(RunConfig) if f.name != "command"}


def _coerce(key: str, value: Any) -> Any:
    kind = FIELD_TYPES[key]
    if value is None:
        return None
    try:
        if key == "extra":
            items = value.split(",") if isinstance(value, str) else value
            return tuple(parse_fraction(item) for item in items if str(item).strip())
        if "complex" in kind:
            return parse_complex(value)
        if "int" in kind:
            if isinstance(value, bool) or (isinstance(value, float) and not value.is_integer()):
                raise ValueError(value)
            return int(value)
        if "float" in kind:
            return float(value)
        return str(value)
    except (TypeError, ValueError):
        raise click.UsageError(f"{key}: cannot read {value!r}") from None


def _normalise_key(key: str) -> str:
    return str(key).replace("-", "_")


def _read_key_values(path: Path) -> dict[str, Any]:
    """``key = value`` lines; blank lines and ``#`` comments are skipped."""
    data: dict[str, Any] = {}
    with open(path, encoding="utf-8") as f:
        for binding in parse_stream(f):
            if binding.error:
                raise click.UsageError(
                    f"config: line {binding.original.line} of {path} is not key = value: "
                    f"{binding.original.string.strip()!r}"
                )
            if binding.key is None:
                continue
            if binding.value is None:
                raise click.UsageError(f"{_normalise_key(binding.key)}: missing '= value' in {path}")
            data[binding.key] = binding.value
    return data


def read_config_file(path: Path | str) -> dict[str, Any]:
    """Flat run keys from ``path``; unknown keys are a usage error.

    The file is ``key = value`` text (UTF-8, ``#`` comments). Files ending in
    ``.yaml`` or ``.yml`` are read as a flat YAML mapping instead.
    """
    path = Path(path)
    try:
        if path.suffix in YAML_SUFFIXES:
            data = load_yaml(path)
        else:
            data = _read_key_values(path)
    except (OSError, UnicodeDecodeError, ValueError) as e:
        raise click.UsageError(f"config: cannot read {path}: {e}") from None
    values = {}
    for key, value in data.items():
        name = _normalise_key(key)
        if name not in FIELD_TYPES:
            raise click.UsageError(f"config: unknown key '{key}' in {path}")
        if isinstance(value, (dict, list)) and name != "extra":
            raise click.UsageError(f"{name}: expected a single value in {path}")
        values[name] = value
    return values


def _check(condition: bool, message: str) -> None:
    if not condition:
        raise click.UsageError(message)


def validate(config: RunConfig) -> RunConfig:
    """Reject invalid values before any computation."""
    _check(config.command in COMMANDS, f"command must be one of {', '.join(COMMANDS)}")
    _check(config.q >= 1, "q must be ≥ 1")
    _check(config.p >= 1, "p must be ≥ 1")
    if config.command in EXPONENT_COMMANDS or (config.command == "fixed-points" and config.family == "power"):
        _check(config.p > config.q, "p must exceed q (beta = p/q > 1)")
    for key, allowed in CHOICES.items():
        value = getattr(config, key)
        _check(value in allowed, f"{key} must be one of {', '.join(allowed)}, got {value!r}")
    _check(config.width > 0, "width must be > 0")
    _check(config.px >= 1, "px must be ≥ 1")
    _check(config.py is None or config.py >= 1, "py must be ≥ 1")
    for key in ("depth", "budget", "steps", "n_points"):
        value = getattr(config, key)
        _check(value is None or value >= 1, f"{key} must be ≥ 1")
    _check(config.workers is None or config.workers >= 0, "workers must be ≥ 0")
    _check(config.radius_override is None or config.radius_override >= 0, "radius_override must be ≥ 0")
    _check(config.near_p_buffer is None or config.near_p_buffer >= 0, "near_p_buffer must be ≥ 0")
    _check(config.sub_resolution is None or config.sub_resolution >= 2, "sub_resolution must be ≥ 2")
    _check(config.q_max >= 2, "q_max must be ≥ 2")
    _check(config.degree >= 2, "degree must be ≥ 2")
    _check(config.m >= 1, "m must be ≥ 1")
    _check(config.d >= 2, "d must be ≥ 2")
    _check(config.bits >= 1, "bits must be ≥ 1")
    _check(config.generations is None or config.generations >= 0, "generations must be ≥ 0")
    _check(config.tolerance is None or config.tolerance > 0, "tolerance must be > 0")
    _check(config.path_steps >= 1, "path_steps must be ≥ 1")
    _check(config.period_max is None or 1 <= config.period_max <= 12, "period_max must be between 1 and 12")
    if config.mode == "backward" and config.command == "julia":
        _check(config.seed is not None, "seed is required in backward mode")
    if config.command == "minkowski":
        from scripts.combinatorics.continued_fraction import parse_continued_fraction

        try:
            parse_continued_fraction(config.cf)
        except ValueError as e:
            raise click.UsageError(f"cf: {e}") from None
    return config


def parse_config(
    command: str,
    flags: Mapping[str, Any],
    config_file: Optional[Path | str] = None,
) -> RunConfig:
    """Merge defaults, the optional config file and flags into a RunConfig.

    ``flags`` maps field names to values; ``None`` (and empty tuples) mean
    "not given".

    Raises:
        click.UsageError: Unknown keys, unreadable values or failed validation.
    """
    values: dict[str, Any] = dict(_COMMAND_DEFAULTS.get(command, {}))
    if config_file is not None:
        values.update(read_config_file(config_file))
    for key, value in flags.items():
        name = _normalise_key(key)
        if name not in FIELD_TYPES:
            raise click.UsageError(f"unknown option '{key}'")
        if value is None or value == ():
            continue
        values[name] = value
    coerced = {key: _coerce(key, value) for key, value in values.items()}
    return validate(RunConfig(command=command, **coerced))
