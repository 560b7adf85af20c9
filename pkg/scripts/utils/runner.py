"""Dispatch a RunConfig to the owning module and report a one-line summary."""

from __future__ import annotations

import json
import logging
import time
from pathlib import Path
from typing import Callable, Optional

import click
import numpy as np
import yaml

from scripts.core.errors import CorrDynError, OutputError, TooManyUnknown
from scripts.utils.config import load_yaml
from scripts.utils.run_config import RunConfig

logger = logging.getLogger(__name__)

Handler = Callable[[RunConfig], tuple[dict, list[Path]]]


def _pair(z: complex) -> list[float]:
    return [z.real, z.imag]


def _exponent(config: RunConfig):
    from scripts.core.correspondence import RationalExp

    return RationalExp(config.p, config.q)


def _grid(config: RunConfig):
    from scripts.render.grid import GridSpec

    return GridSpec(config.center, config.width, config.px, config.py or config.px)


def _escape_params(config: RunConfig, corr):
    from scripts.orbits.engine import EscapeParams

    return EscapeParams.for_corr(corr, config.depth, config.budget, config.radius_override)


def _palette_overrides(config: RunConfig) -> Optional[dict]:
    if config.palette is None:
        return None
    try:
        return load_yaml(Path(config.palette))
    except (OSError, ValueError) as e:
        raise OutputError(f"cannot read palette {config.palette}: {e}") from e


def _write_raster(raster, config: RunConfig, palette: dict) -> list[Path]:
    from scripts.render.output import write_label_csv, write_ppm

    outputs = []
    if config.out:
        outputs.append(write_ppm(raster, palette, config.out))
    if config.labels_csv:
        outputs.append(write_label_csv(raster, config.labels_csv))
    return outputs


def _power_palette(config: RunConfig) -> dict:
    from scripts.render.output import load_palette

    return load_palette(overrides=_palette_overrides(config))


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------

def _julia(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.core.correspondence import PowerCorr
    from scripts.render.classify import circle_deviation_px
    from scripts.render.julia import render_julia_boundary

    corr = PowerCorr(_exponent(config), config.c)
    seed = config.seed if config.mode == "backward" else None
    raster = render_julia_boundary(
        corr, _grid(config), _escape_params(config, corr),
        backward_seed=seed, steps=config.steps, workers=config.workers,
    )
    metrics = raster.summary()
    if corr.c == 0:
        metrics["circle_deviation_px"] = circle_deviation_px(raster)
    return metrics, _write_raster(raster, config, _power_palette(config))


def _filled(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.core.correspondence import PowerCorr
    from scripts.orbits.centers import trichotomy_applies
    from scripts.render.classify import classify_set
    from scripts.render.julia import render_filled_julia

    corr = PowerCorr(_exponent(config), config.c)
    raster = render_filled_julia(corr, _grid(config), _escape_params(config, corr), workers=config.workers)
    metrics = raster.summary()
    try:
        metrics["classification"] = classify_set(raster).summary()
    except TooManyUnknown as e:
        logger.warning("no classification: %s", e)
        metrics["classification"] = None
    metrics["trichotomy"] = trichotomy_applies(corr.exp)
    return metrics, _write_raster(raster, config, _power_palette(config))


def _mset(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.core.correspondence import PowerCorr
    from scripts.render.julia import ParameterVariant, render_parameter_set

    exp = _exponent(config)
    params = _escape_params(config, PowerCorr(exp, 0j))
    raster = render_parameter_set(
        exp, _grid(config), params,
        variant=ParameterVariant(config.variant),
        sub_resolution=config.sub_resolution,
        workers=config.workers,
    )
    return raster.summary(), _write_raster(raster, config, _power_palette(config))


def _limitset(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.core.correspondence import Coords
    from scripts.mating.limit_sets import (
        LIMIT_PALETTE,
        LimitLabel,
        j_symmetric_difference,
        j_symmetry_score,
        render_limit_sets,
    )
    from scripts.render.output import load_palette

    raster = render_limit_sets(
        config.a, _grid(config),
        depth=config.depth,
        coords=Coords(config.coords),
        node_budget=config.budget,
        near_p_buffer=config.near_p_buffer,
        workers=config.workers,
    )
    metrics = {
        **raster.summary(),
        "j_symmetry": j_symmetry_score(raster, config.a),
        "j_symmetric_difference": j_symmetric_difference(raster, config.a),
    }
    palette = load_palette(LimitLabel, LIMIT_PALETTE, _palette_overrides(config))
    return metrics, _write_raster(raster, config, palette)


def _yoccoz_disks(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.combinatorics.yoccoz_disks import DiskVariant, emit_disk_family

    frame = emit_disk_family(
        config.q_max, config.extra, DiskVariant(config.disk_variant),
        path=config.out, degree=config.degree, m=config.m,
    )
    outputs = [Path(config.out)] if config.out else []
    return {"disks": len(frame), "variant": config.disk_variant, "q_max": config.q_max}, outputs


def _yoccoz_verify(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.mating.yoccoz_check import write_yoccoz_csv, yoccoz_verify

    checks = yoccoz_verify(config.a, config.q_max)
    outputs = [write_yoccoz_csv(checks, config.out)] if config.out else []
    return {
        "a": _pair(config.a),
        "checks": [check.summary() for check in checks],
        "passed": all(check.passed for check in checks),
    }, outputs


def _sturmian(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.combinatorics.sturmian import eigenvalue_bound, is_balanced, sturmian_word, word_matrix

    word = sturmian_word(config.p, config.q)
    matrix = word_matrix(word)
    bound = eigenvalue_bound(config.p, config.q)
    return {
        "word": str(word),
        "binary": word.binary(),
        "balanced": is_balanced(word),
        "trace": matrix.trace,
        "eigenvalue": matrix.eigenvalue,
        "bound": bound,
        "within_bound": matrix.eigenvalue_at_most(bound),
        "axis": matrix.axis_endpoints(),
    }, []


def _minkowski(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.combinatorics.continued_fraction import h_conjugacy_check, minkowski_h, parse_continued_fraction

    cf = parse_continued_fraction(config.cf)
    h = minkowski_h(cf, config.bits)
    report = h_conjugacy_check(cf, config.bits)
    return {
        "cf": str(cf),
        "h": f"{h.numerator}/{h.denominator}",
        "h_float": float(h),
        "conjugacy": report.summary(),
    }, []


def _cifs(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.cifs.ifs import (
        build_cifs,
        cifs_config,
        generations_for,
        hausdorff_upper_bound,
        hutchinson_generations,
        write_attractor_csv,
        write_dimension_csv,
    )

    cifs = build_cifs(_exponent(config), config.c)
    tolerance = config.tolerance or float(cifs_config()["dual_tolerance"])
    generations = generations_for(cifs, tolerance) if config.generations is None else config.generations
    samples = list(hutchinson_generations(cifs, config.c, generations))
    outputs = []
    if config.out:
        outputs.append(write_attractor_csv(samples, config.out))
    if config.dimension_csv:
        outputs.append(write_dimension_csv([cifs], config.dimension_csv))
    return {
        **cifs.summary(),
        "s_star": hausdorff_upper_bound(cifs),
        "generations": generations,
        "points": len(samples[-1]),
    }, outputs


def _motion(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.cifs.motion import branched_motion_sample, write_motion_csv

    path = [complex(c) for c in np.linspace(0, config.path_end, config.path_steps + 1)]
    sample = branched_motion_sample(
        _exponent(config), path, config.n_points, config.period_max, workers=config.workers,
    )
    outputs = [write_motion_csv(sample, config.out)] if config.out else []
    return sample.summary(), outputs


def _fixed_points(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.core.correspondence import Coords, MatingCorr, PowerCorr
    from scripts.core.fixed_points import fixed_points

    if config.family == "power":
        corr = PowerCorr(_exponent(config), config.c)
    else:
        corr = MatingCorr(config.a, Coords(config.coords))
    points = fixed_points(corr)
    return {"family": config.family, "fixed_points": [fp.as_dict() for fp in points]}, []


def _centers(config: RunConfig) -> tuple[dict, list[Path]]:
    from scripts.core.correspondence import PowerCorr, RationalExp
    from scripts.orbits.centers import is_center, simple_centers

    exp = RationalExp(2 * config.d, 2)
    rows = []
    for center in simple_centers(config.d):
        corr = PowerCorr(exp, center)
        rows.append({"c": _pair(center), "center": is_center(corr, 2, _escape_params(config, corr))})
    return {"d": config.d, "centers": rows}, []


HANDLERS: dict[str, Handler] = {
    "julia": _julia,
    "filled": _filled,
    "mset": _mset,
    "limitset": _limitset,
    "yoccoz-disks": _yoccoz_disks,
    "yoccoz-verify": _yoccoz_verify,
    "sturmian": _sturmian,
    "minkowski": _minkowski,
    "cifs": _cifs,
    "motion": _motion,
    "fixed-points": _fixed_points,
    "centers": _centers,
}


def write_sidecar(path: Path | str, config: RunConfig) -> Path:
    """The full run configuration as YAML next to an output, named "<out>.meta"."""
    target = Path(path)
    meta = target.with_name(target.name + ".meta")
    try:
        meta.write_text(yaml.safe_dump(config.as_dict(), sort_keys=True), encoding="utf-8")
    except OSError as e:
        raise OutputError(f"cannot write {meta}: {e}") from e
    return meta


def run(config: RunConfig) -> int:
    """Execute ``config`` and print the JSON summary line.

    Returns:
        0 on success, 1 when the computation failed with a CorrDynError.
    """
    started = time.perf_counter()
    try:
        metrics, outputs = HANDLERS[config.command](config)
        for path in outputs:
            write_sidecar(path, config)
    except CorrDynError as e:
        logger.error("%s failed: %s: %s", config.command, type(e).__name__, e)
        click.echo(f"Error: {e}", err=True)
        return 1
    summary = {
        "command": config.command,
        "wall_time_s": round(time.perf_counter() - started, 3),
        "outputs": [str(path) for path in outputs],
        **metrics,
    }
    click.echo(json.dumps(summary, default=str))
    logger.info("%s finished in %.2fs", config.command, summary["wall_time_s"])
    return 0
