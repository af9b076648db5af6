"""
Run configuration for the command-line surface
"""

from enum import Enum, IntEnum
from pathlib import Path
from typing import Any, Dict, List, Optional

import orjson
from pydantic import BaseModel, Field, model_validator

from src.channels import ChannelMode
from src.errors import ArgumentError


class ExitCode(IntEnum):
    OK = 0
    MISMATCH = 1
    USAGE = 2


class Command(str, Enum):
    TABLE1 = "table1"
    CURVE = "curve"
    GHZ5 = "ghz5"
    VALIDATE = "validate"
    SAMPLE_HAM = "sample-ham"


class OutputFormat(str, Enum):
    CSV = "csv"
    JSON = "json"


# Commands that always draw random numbers; table1 only does with --mc
SEEDED_COMMANDS = {Command.CURVE, Command.GHZ5, Command.VALIDATE, Command.SAMPLE_HAM}


class RunConfig(BaseModel):
    """Everything one CLI invocation needs; built from the JSON config file, then the flags"""

    command: Command
    states: List[str] = Field(default_factory=list)
    basis: Optional[str] = None
    ensemble: Optional[str] = None
    ensemble_config: Optional[Dict[str, Any]] = None
    modes: List[ChannelMode] = Field(default_factory=list)
    t_start: float = Field(default=0.0, ge=0.0)
    t_stop: Optional[float] = None
    t_points: int = Field(default=50, ge=2)
    samples: Optional[int] = Field(default=None, ge=1)
    seed: Optional[int] = Field(default=None, ge=0)
    out: Optional[str] = None
    format: OutputFormat = OutputFormat.CSV
    mc: bool = False
    method: str = "auto"
    groups: Optional[List[str]] = None
    sites: Optional[int] = Field(default=None, ge=1)
    local_dim: Optional[int] = Field(default=None, ge=2)
    embed: bool = True

    @model_validator(mode="after")
    def _check_run(self):
        if self.seed is None and (self.command in SEEDED_COMMANDS or (self.command == Command.TABLE1 and self.mc)):
            raise ValueError(f"'{self.command.value}' draws random numbers and needs an explicit --seed")
        if self.t_stop is not None and self.t_stop <= self.t_start:
            raise ValueError(f"Time grid must be strictly increasing, got start {self.t_start} >= stop {self.t_stop}")
        if self.method not in ("auto", "quadrature", "monte-carlo"):
            raise ValueError(f"Unknown fidelity method '{self.method}'")
        return self


def load_config_file(path: str) -> Dict[str, Any]:
    """JSON object whose keys mirror the long flags (dashes or underscores)"""
    try:
        raw = orjson.loads(Path(path).read_bytes())
    except FileNotFoundError:
        raise ArgumentError(f"Config file not found: {path}")
    except orjson.JSONDecodeError as e:
        raise ArgumentError(f"Malformed config file {path}: {e}")
    if not isinstance(raw, dict):
        raise ArgumentError(f"Config file {path} must hold a JSON object")

    config = {key.replace("-", "_"): value for key, value in raw.items()}
    # single-value spellings of the list fields
    if "state" in config:
        config.setdefault("states", [config.pop("state")])
    if "mode" in config:
        mode = config.pop("mode")
        config.setdefault("modes", mode if isinstance(mode, list) else [mode])
    if isinstance(config.get("states"), str):
        config["states"] = [config["states"]]
    return config


def build_run_config(command: str, flags: Dict[str, Any], config_path: Optional[str] = None) -> RunConfig:
    """Merge the config file with the parsed flags; flags that were given win"""
    merged: Dict[str, Any] = load_config_file(config_path) if config_path else {}
    merged.update({key: value for key, value in flags.items() if value is not None})
    merged["command"] = command
    return RunConfig(**merged)
