"""The ``hem`` command-line front end.

Exit codes: 0 when every check passes or is an explicit smoke run, 1 when a
check fails, 2 for usage or configuration errors.
"""

from __future__ import annotations

import functools
import os
from dataclasses import dataclass
from pathlib import Path

import click

from .. import __version__
from ..core import DomainError, HemError, PhaseError, ResolutionError, SectorError, UsageError
from .commands import (
    CommandResult,
    cmd_constants,
    cmd_gmc_fusion,
    cmd_probe_regularity,
    cmd_residue,
    cmd_singular_vector,
    cmd_suite,
    cmd_verify_selberg,
)
from .config import SUITE_CHOICES, RunConfig

EXIT_USAGE = 2
EXIT_FAIL = 1
USAGE_ERRORS = (UsageError, DomainError, PhaseError, SectorError, ResolutionError)


@dataclass
class GlobalOptions:
    config_path: str | None
    out: str | None
    seed: int | None
    as_json: bool


def threads_from_env() -> int:
    """Worker count from ``HEM_THREADS`` (default 1)."""
    raw = os.environ.get("HEM_THREADS", "").strip()
    if not raw:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise UsageError(f"HEM_THREADS must be a positive integer, got {raw!r}") from exc
    if n < 1:
        raise UsageError(f"HEM_THREADS must be a positive integer, got {raw!r}")
    return n


def resolve_config(g: GlobalOptions, command: str, params: dict, options: dict, seed: int | None = None) -> RunConfig:
    """Defaults, then the config file, then explicit flags."""
    if g.config_path:
        base = RunConfig.from_toml(Path(g.config_path).read_text(encoding="utf-8"))
        if base.command != command:
            raise UsageError(f"config file is for {base.command!r}, not {command!r}")
    else:
        base = RunConfig(command)
    top = {}
    seed = seed if seed is not None else g.seed
    if seed is not None:
        top["seed"] = seed
    if g.out is not None:
        top["out"] = g.out
    return base.with_changes({k: v for k, v in params.items() if v is not None},
                             {k: v for k, v in options.items() if v is not None}, **top)


def _emit(g: GlobalOptions, cfg: RunConfig, result: CommandResult) -> int:
    report = result.report
    report.write(cfg.out, report.name, result.csv)
    if g.as_json:
        click.echo(report.to_json(), nl=False)
    else:
        for line in result.text or []:
            click.echo(line)
        for line in report.summary_lines():
            click.echo(line)
    return report.exit_code


def command(fn):
    """Map library errors to the exit-code contract."""

    @functools.wraps(fn)
    @click.pass_context
    def wrapper(ctx: click.Context, *args, **kwargs):
        try:
            code = fn(ctx.obj, *args, **kwargs)
        except USAGE_ERRORS as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_USAGE)
        except HemError as exc:
            click.echo(f"error: {exc}", err=True)
            ctx.exit(EXIT_FAIL)
        ctx.exit(code)

    return wrapper


@click.group(context_settings={"help_option_names": ["-h", "--help"]})
@click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False), help="RunConfig TOML file.")
@click.option("--out", type=click.Path(file_okay=False), help="Directory for JSON, CSV and timing files.")
@click.option("--seed", type=click.IntRange(min=0), help="Seed for every random stream.")
@click.option("--json", "as_json", is_flag=True, help="Print the canonical JSON report.")
@click.version_option(__version__, prog_name="hem")
@click.pass_context
def cli(ctx: click.Context, config_path, out, seed, as_json) -> None:
    """Verification campaigns for higher equations of motion."""
    ctx.obj = GlobalOptions(config_path, out, seed, as_json)


def _param_options(fn):
    for name, attr in (("--mu-r", "mu_r"), ("--mu-l", "mu_l"), ("--mu", "mu"), ("--gamma", "gamma")):
        fn = click.option(name, attr, type=float, default=None, help=f"Override {attr}.")(fn)
    return fn


def _params(gamma=None, mu=None, mu_l=None, mu_r=None) -> dict:
    return {"gamma": gamma, "mu": mu, "muL": mu_l, "muR": mu_r}


@cli.command()
@_param_options
@command
def constants(g: GlobalOptions, gamma, mu, mu_l, mu_r) -> int:
    """All four constants, stated and chained, with conic and phase data."""
    cfg = resolve_config(g, "constants", _params(gamma, mu, mu_l, mu_r), {})
    return _emit(g, cfg, cmd_constants(cfg))


@cli.command("singular-vector")
@click.option("--sector", type=click.Choice(["bulk", "boundary"]), default=None)
@click.option("--at-kac", default=None, help="Kac label 'r,s' at which to evaluate exactly.")
@command
def singular_vector(g: GlobalOptions, sector, at_kac) -> int:
    """Factored level-two singular vector with an equality certificate."""
    cfg = resolve_config(g, "singular-vector", {}, {"sector": sector, "at_kac": at_kac})
    return _emit(g, cfg, cmd_singular_vector(cfg))


@cli.command("verify-selberg")
@click.option("--a", "a", type=float, default=None)
@click.option("--b", "b", type=float, default=None)
@click.option("--c", "c", type=float, default=None)
@click.option("--triples", type=click.IntRange(min=1), default=None)
@command
def verify_selberg(g: GlobalOptions, a, b, c, triples) -> int:
    """Selberg quadrature against the closed forms."""
    cfg = resolve_config(g, "verify-selberg", {}, {"a": a, "b": b, "c": c, "triples": triples})
    return _emit(g, cfg, cmd_verify_selberg(cfg))


@cli.command()
@click.option("--integral", type=click.Choice(["J1", "I11-op", "I11-same", "I2"]), default=None)
@click.option("--gamma", type=float, default=None)
@command
def residue(g: GlobalOptions, integral, gamma) -> int:
    """Residue at alpha21 by pole-fit extrapolation."""
    cfg = resolve_config(g, "residue", _params(gamma), {"integral": integral})
    return _emit(g, cfg, cmd_residue(cfg))


@cli.command("probe-regularity")
@click.option("--integral", type=click.Choice(["J1", "J2", "J3", "J2+J3", "I2"]), default=None)
@click.option("--gamma", type=float, default=None)
@command
def probe_regularity(g: GlobalOptions, integral, gamma) -> int:
    """Numerical test for a pole at alpha21."""
    cfg = resolve_config(g, "probe-regularity", _params(gamma), {"integral": integral})
    return _emit(g, cfg, cmd_probe_regularity(cfg))


def _float_list(text: str | None) -> list[float] | None:
    if text is None:
        return None
    try:
        return [float(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from exc


@cli.command("gmc-fusion")
@click.option("--gamma", type=float, default=None)
@click.option("--alpha", type=float, default=None)
@click.option("--radii", default=None, help="Comma-separated probe radii in [0.02, 0.4].")
@click.option("--samples", type=click.IntRange(min=1), default=None)
@click.option("--grid-n", type=click.IntRange(min=1), default=None)
@click.option("--seed", "local_seed", type=click.IntRange(min=0), default=None)
@command
def gmc_fusion(g: GlobalOptions, gamma, alpha, radii, samples, grid_n, local_seed) -> int:
    """Fusion scaling slope from sampled chaos."""
    options = {"alpha": alpha, "radii": _float_list(radii), "samples": samples, "grid_n": grid_n}
    cfg = resolve_config(g, "gmc-fusion", _params(gamma), options, local_seed)
    return _emit(g, cfg, cmd_gmc_fusion(cfg))


@cli.command()
@click.argument("name", type=click.Choice(SUITE_CHOICES), required=False)
@click.option("--gamma", type=float, default=None, help="Run residue checks at this gamma only.")
@click.option("--samples", type=click.IntRange(min=1), default=None, help="GMC samples per fit.")
@click.option("--mc-samples", type=click.IntRange(min=1), default=None, help="Monte Carlo samples per point.")
@click.option("--seed", "local_seed", type=click.IntRange(min=0), default=None)
@command
def suite(g: GlobalOptions, name, gamma, samples, mc_samples, local_seed) -> int:
    """Run an acceptance suite: algebra, selberg, residues, chains, gmc or all."""
    options = {"suite": name, "samples": samples, "mc_samples": mc_samples,
               "gammas": [gamma] if gamma is not None else None}
    cfg = resolve_config(g, "suite", _params(gamma), options, local_seed)
    threads = threads_from_env()
    return _emit(g, cfg, cmd_suite(cfg, threads))


def main() -> None:
    cli(prog_name="hem")
