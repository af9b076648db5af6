#!/usr/bin/env python3
"""
Argument parser and entry point for the qfi-noise command line
"""

import argparse
import logging
from typing import List, Optional

from pydantic import ValidationError

from config.settings import get_settings
from src.channels import ChannelMode
from src.errors import QfiNoiseError
from src.hamiltonians import BasisFactory
from .commands import run_command
from .models import ExitCode, build_run_config

MODE_CHOICES = [m.value for m in ChannelMode]


def _common_options() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON config file mirroring the flags; flags override it")
    common.add_argument("--seed", type=int, help="Master seed (required by every command that samples)")
    common.add_argument("--samples", type=int, help="Monte Carlo sample count")
    common.add_argument("--out", help="Output path (a directory for curve)")
    common.add_argument("--format", choices=["csv", "json"], help="Output format")
    return common


def _state_options() -> argparse.ArgumentParser:
    states = argparse.ArgumentParser(add_help=False)
    states.add_argument("--state", action="append", dest="states",
                        help="State id, e.g. ghz4_2, dicke6_3, ame4_3, q4_2, haar4_2_s17 (repeatable)")
    return states


def _ensemble_options() -> argparse.ArgumentParser:
    ensemble = argparse.ArgumentParser(add_help=False)
    ensemble.add_argument("--basis", choices=BasisFactory.list_bases(), help="Local generator basis")
    ensemble.add_argument("--ensemble", help="Ensemble kind (sphere, gue, goe) or a preset name from ensembles.yaml")
    return ensemble


def _grid_options() -> argparse.ArgumentParser:
    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--t-start", type=float, dest="t_start", help="First time of the grid")
    grid.add_argument("--t-stop", type=float, dest="t_stop", help="Last time of the grid")
    grid.add_argument("--t-points", type=int, dest="t_points", help="Number of grid points")
    return grid


def _mode_option(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--mode", action="append", dest="modes", choices=MODE_CHOICES,
                        help="Noise mode (repeatable)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="qfi-noise",
        description="Mean quantum Fisher information of multipartite states under random local unitary noise",
    )
    subparsers = parser.add_subparsers(dest="command", help="Available commands")
    common, states, ensemble, grid = _common_options(), _state_options(), _ensemble_options(), _grid_options()

    table1_parser = subparsers.add_parser("table1", parents=[common, states],
                                          help="Analytic mean QFI for the reference rows")
    table1_parser.add_argument("--mc", action="store_true", default=None,
                               help="Add Monte Carlo columns with standard errors")

    curve_parser = subparsers.add_parser("curve", parents=[common, states, ensemble, grid],
                                         help="Fidelity curve and averaged bound as CSV")
    _mode_option(curve_parser)
    curve_parser.add_argument("--method", choices=["auto", "quadrature", "monte-carlo"],
                              help="Fidelity evaluation (auto uses quadrature when available)")

    ghz5_parser = subparsers.add_parser("ghz5", parents=[common, grid],
                                        help="GHZ5 coefficients against Monte Carlo populations")
    _mode_option(ghz5_parser)

    validate_parser = subparsers.add_parser("validate", parents=[common],
                                            help="Run the invariant groups and write a JSON verdict")
    validate_parser.add_argument("--group", action="append", dest="groups",
                                 help="Validation group to run (repeatable; default: all default groups)")

    sample_parser = subparsers.add_parser("sample-ham", parents=[common, states, ensemble],
                                          help="Dump sampled coefficients and embedded Hamiltonians")
    _mode_option(sample_parser)
    sample_parser.add_argument("--sites", type=int, help="Number of sites when no --state is given")
    sample_parser.add_argument("--local-dim", type=int, dest="local_dim",
                               help="Local dimension when no --state is given")
    sample_parser.add_argument("--no-embed", action="store_false", dest="embed", default=None,
                               help="Skip the embedded n-site matrices")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Parse, run and map the outcome to 0 (pass), 1 (numeric mismatch) or 2 (usage/config error)"""
    parser = build_parser()
    args = parser.parse_args(argv)
    if not args.command:
        parser.print_help()
        return int(ExitCode.USAGE)

    settings = get_settings()
    logging.basicConfig(level=settings.log_level.upper(),
                        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s")

    flags = {key: value for key, value in vars(args).items() if key not in ("command", "config")}
    try:
        config = build_run_config(args.command, flags, args.config)
        return int(run_command(config))
    except (QfiNoiseError, ValidationError) as e:
        print(f"❌ {e}")
        return int(ExitCode.USAGE)
    except KeyboardInterrupt:
        print("\n👋 Interrupted")
        return int(ExitCode.USAGE)
