"""
JSON export/import of pure states: {"n": ..., "d": ..., "amplitudes": [[re, im], ...]}
"""

from pathlib import Path
from typing import Union

import numpy as np
import orjson

from src.errors import StateArgumentError
from .models import PureState


def state_to_json(state: PureState) -> bytes:
    payload = {
        "n": state.n,
        "d": state.d,
        "label": state.label,
        "amplitudes": [[float(a.real), float(a.imag)] for a in state.amplitudes],
    }
    return orjson.dumps(payload, option=orjson.OPT_INDENT_2)


def state_from_json(data: Union[bytes, str]) -> PureState:
    try:
        payload = orjson.loads(data)
        pairs = np.asarray(payload["amplitudes"], dtype=float)
        amplitudes = pairs[:, 0] + 1j * pairs[:, 1]
        return PureState(n=payload["n"], d=payload["d"], amplitudes=amplitudes,
                         label=payload.get("label", ""))
    except (orjson.JSONDecodeError, KeyError, IndexError, TypeError) as e:
        raise StateArgumentError(f"Malformed state JSON: {e}")


def save_state(state: PureState, path: Union[str, Path]) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_bytes(state_to_json(state))
    return path


def load_state(path: Union[str, Path]) -> PureState:
    return state_from_json(Path(path).read_bytes())
