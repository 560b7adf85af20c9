"""CLI for corrdyn: holomorphic correspondences, matings and their combinatorics."""

from __future__ import annotations

import logging
import sys
from typing import Any, Callable

import click

from scripts.utils.run_config import COMPLEX

LOG_FORMAT = "%(asctime)s [%(name)s] %(levelname)s: %(message)s"


def _options(*decorators: Callable) -> Callable:
    def apply(func: Callable) -> Callable:
        for decorator in reversed(decorators):
            func = decorator(func)
        return func
    return apply


config_option = click.option(
    "--config", "config_file", type=click.Path(exists=True, dir_okay=False),
    default=None, help="Run file of key = value lines (flags win)",
)
workers_option = click.option("--workers", type=int, default=None, help="Worker processes (default: CPU count)")
out_option = click.option("--out", default=None, help="Output file")

exponent_options = _options(
    click.option("--p", type=int, default=None, help="Numerator of beta = p/q"),
    click.option("--q", type=int, default=None, help="Denominator of beta = p/q"),
)
grid_options = _options(
    click.option("--center", type=COMPLEX, default=None, help="Window center re,im"),
    click.option("--width", type=float, default=None, help="Window width"),
    click.option("--px", type=int, default=None, help="Pixels across"),
    click.option("--py", type=int, default=None, help="Pixels down (default: px)"),
)
engine_options = _options(
    click.option("--depth", type=int, default=None, help="Orbit depth"),
    click.option("--budget", type=int, default=None, help="Node budget per query"),
    click.option("--radius-override", type=float, default=None, help="Lower bound for the escape radius"),
)
raster_outputs = _options(
    out_option,
    click.option("--labels-csv", default=None, help="Also write x,y,label CSV"),
    click.option("--palette", default=None, type=click.Path(dir_okay=False), help="YAML label -> [r, g, b]"),
)


def _dispatch(command: str, flags: dict[str, Any]) -> None:
    from scripts.utils.run_config import parse_config
    from scripts.utils.runner import run

    config_file = flags.pop("config_file", None)
    config = parse_config(command, flags, config_file)
    code = run(config)
    if code:
        sys.exit(code)


@click.group()
@click.option("--verbose", "-v", is_flag=True, help="Debug logging on stderr")
def cli(verbose: bool) -> None:
    """Dynamics of holomorphic correspondences: Julia sets, matings, Yoccoz checks."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.INFO,
        format=LOG_FORMAT,
        stream=sys.stderr,
    )


@cli.command()
@exponent_options
@click.option("--c", type=COMPLEX, default=None, help="Parameter c as re,im")
@grid_options
@engine_options
@click.option("--mode", type=click.Choice(["boundary", "backward"]), default=None,
              help="boundary: edge of K_c; backward: random backward orbit")
@click.option("--seed", type=COMPLEX, default=None, help="Repelling fixed point for backward mode")
@click.option("--steps", type=int, default=None, help="Backward orbit length")
@workers_option
@raster_outputs
@config_option
def julia(**flags: Any) -> None:
    """Render the Julia set J_c of z^{p/q} + c."""
    _dispatch("julia", flags)


@cli.command()
@exponent_options
@click.option("--c", type=COMPLEX, default=None, help="Parameter c as re,im")
@grid_options
@engine_options
@workers_option
@raster_outputs
@config_option
def filled(**flags: Any) -> None:
    """Render the filled Julia set K_c and classify its topology."""
    _dispatch("filled", flags)


@cli.command()
@exponent_options
@grid_options
@engine_options
@click.option("--variant", type=click.Choice(["m_beta_zero", "m_beta"]), default=None,
              help="m_beta_zero: orbit of 0 bounded; m_beta: connectedness heuristic")
@click.option("--sub-resolution", type=int, default=None, help="Sub-grid size for m_beta")
@workers_option
@raster_outputs
@config_option
def mset(**flags: Any) -> None:
    """Render a parameter set (M_{beta,0} or M_beta) in the c-plane."""
    _dispatch("mset", flags)


@cli.command()
@click.option("--a", type=COMPLEX, default=None, help="Mating parameter a as re,im (|a - 4| <= 3)")
@grid_options
@click.option("--depth", type=int, default=None, help="Chain depth")
@click.option("--budget", type=int, default=None, help="Node budget per pixel")
@click.option("--coords", type=click.Choice(["original", "covj"]), default=None, help="Pixel coordinates")
@click.option("--near-p-buffer", type=float, default=None, help="Radius around P counted as success")
@workers_option
@raster_outputs
@config_option
def limitset(**flags: Any) -> None:
    """Render the limit sets Lambda_- and Lambda_+ of the mating F_a."""
    _dispatch("limitset", flags)


@cli.command("yoccoz-disks")
@click.option("--q-max", type=int, default=None, help="Largest denominator")
@click.option("--extra", multiple=True, help="Extra fraction p/q (repeatable)")
@click.option("--disk-variant", type=click.Choice(["mating", "classical"]), default=None, help="Disk family")
@click.option("--degree", type=int, default=None, help="Degree for classical disks")
@click.option("--m", type=int, default=None, help="Multiplicity for classical disks")
@out_option
@config_option
def yoccoz_disks(**flags: Any) -> None:
    """Write the Yoccoz disk family as CSV."""
    _dispatch("yoccoz-disks", flags)


@cli.command("yoccoz-verify")
@click.option("--a", type=COMPLEX, default=None, help="Mating parameter a as re,im")
@click.option("--q-max", type=int, default=None, help="Largest denominator scanned")
@out_option
@config_option
def yoccoz_verify(**flags: Any) -> None:
    """Check the Yoccoz inequality at repelling fixed points of F_a."""
    _dispatch("yoccoz-verify", flags)


@cli.command()
@click.option("--p", type=int, default=None, help="Numerator, 0 < p < q")
@click.option("--q", type=int, default=None, help="Denominator")
@config_option
def sturmian(**flags: Any) -> None:
    """Sturmian word of p/q and its matrix in the modular group."""
    _dispatch("sturmian", flags)


@cli.command()
@click.option("--cf", default=None, help='Continued fraction, e.g. "[0;1,2]" or "[0;(1)]"')
@click.option("--bits", type=int, default=None, help="Binary precision")
@config_option
def minkowski(**flags: Any) -> None:
    """Minkowski question mark h(x) with the conjugacy check."""
    _dispatch("minkowski", flags)


@cli.command()
@exponent_options
@click.option("--c", type=COMPLEX, default=None, help="Parameter c as re,im (near 0)")
@click.option("--generations", type=int, default=None, help="Hutchinson generations (default: from tolerance)")
@click.option("--tolerance", type=float, default=None, help="Target cylinder diameter")
@out_option
@click.option("--dimension-csv", default=None, help="Also write the dimension report")
@config_option
def cifs(**flags: Any) -> None:
    """Dual Julia set through its conformal IFS, with a dimension bound."""
    _dispatch("cifs", flags)


@cli.command()
@exponent_options
@click.option("--path-end", type=COMPLEX, default=None, help="Straight path from 0 to this c")
@click.option("--path-steps", type=int, default=None, help="Number of path segments")
@click.option("--period-max", type=int, default=None, help="Largest seeded period (<= 12)")
@click.option("--n-points", type=int, default=None, help="Cap on seeded points")
@workers_option
@out_option
@config_option
def motion(**flags: Any) -> None:
    """Branched motion of the unit circle along a parameter path."""
    _dispatch("motion", flags)


@cli.command("fixed-points")
@click.option("--family", type=click.Choice(["power", "mating"]), default=None, help="Correspondence family")
@exponent_options
@click.option("--c", type=COMPLEX, default=None, help="Power-family parameter c")
@click.option("--a", type=COMPLEX, default=None, help="Mating parameter a")
@click.option("--coords", type=click.Choice(["original", "covj"]), default=None, help="Mating coordinates")
@config_option
def fixed_points(**flags: Any) -> None:
    """Fixed points with multipliers and classes."""
    _dispatch("fixed-points", flags)


@cli.command()
@click.option("--d", type=int, default=None, help="Degree d of (w - c)^2 = z^{2d}")
@engine_options
@config_option
def centers(**flags: Any) -> None:
    """Simple centers a^{d-1} = -1 and their center check."""
    _dispatch("centers", flags)


if __name__ == "__main__":
    cli()
