"""Command-line front end, run configuration and verification reports."""

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
from .config import COMMANDS, CONFIG_VERSION, DEFAULT_OPTIONS, SUITE_CHOICES, SUITES, RunConfig
from .main import cli, main
from .report import Check, VerificationReport, build_hash, canonical_json

__all__ = [
    "COMMANDS",
    "CONFIG_VERSION",
    "DEFAULT_OPTIONS",
    "SUITES",
    "SUITE_CHOICES",
    "Check",
    "CommandResult",
    "RunConfig",
    "VerificationReport",
    "build_hash",
    "canonical_json",
    "cli",
    "cmd_constants",
    "cmd_gmc_fusion",
    "cmd_probe_regularity",
    "cmd_residue",
    "cmd_singular_vector",
    "cmd_suite",
    "cmd_verify_selberg",
    "main",
]
