"""
Command-line surface
"""

from .commands import (
    COMMANDS,
    cmd_curve,
    cmd_ghz5,
    cmd_sample_ham,
    cmd_table1,
    cmd_validate,
    resolve_ensemble,
    run_command,
)
from .models import Command, ExitCode, OutputFormat, RunConfig, build_run_config, load_config_file
from .parser import build_parser, main

__all__ = [
    "COMMANDS",
    "cmd_curve",
    "cmd_ghz5",
    "cmd_sample_ham",
    "cmd_table1",
    "cmd_validate",
    "resolve_ensemble",
    "run_command",
    "Command",
    "ExitCode",
    "OutputFormat",
    "RunConfig",
    "build_run_config",
    "load_config_file",
    "build_parser",
    "main",
]
