#!/usr/bin/env python3
"""
State factory - resolves textual state ids into constructed states
"""

import logging
import re
from typing import Callable, Dict, List, Tuple

from src.errors import StateArgumentError
from src.utils.rng import counter_rng
from .constructors import (
    ame_state,
    dicke_state,
    ghz_minus_state,
    ghz_state,
    haar_random_state,
    qutrit_dicke,
)
from .models import PureState

logger = logging.getLogger(__name__)

# Stream id reserved for state sampling so it never collides with ensemble draws
HAAR_STATE_STREAM = 7


def _haar(n: str, d: str, seed: str) -> PureState:
    rng = counter_rng(int(seed), 0, stream=HAAR_STATE_STREAM)
    return haar_random_state(int(n), int(d), rng, label=f"haar{n}_{d}_s{seed}")


class StateFactory:
    """State id registry.

    Recognised ids:
        ghz{n}_{d}         GHZ state of n qudits
        ghz{n}_plus        alias of ghz{n}_2
        ghz{n}_minus       (|0...0> - |1...1>)/sqrt(2)
        dicke{n}_{e}       qubit Dicke state with e excitations
        q4_{k}             four-qutrit Dicke family, k in 1..4
        ame6_2, ame4_3     absolutely maximally entangled states
        haar{n}_{d}_s{s}   Haar-random pure state drawn from seed s
    """

    _families: List[Tuple[str, "re.Pattern", Callable[..., PureState]]] = [
        ("ghz", re.compile(r"^ghz(\d+)_(\d+)$"), lambda n, d: ghz_state(int(n), int(d))),
        ("ghz_plus", re.compile(r"^ghz(\d+)_plus$"), lambda n: ghz_state(int(n), 2)),
        ("ghz_minus", re.compile(r"^ghz(\d+)_minus$"), lambda n: ghz_minus_state(int(n))),
        ("dicke", re.compile(r"^dicke(\d+)_(\d+)$"), lambda n, e: dicke_state(int(n), int(e))),
        ("qutrit_dicke", re.compile(r"^q4_(\d+)$"), lambda k: qutrit_dicke(int(k))),
        ("ame", re.compile(r"^(ame6_2|ame4_3)$"), ame_state),
        ("haar", re.compile(r"^haar(\d+)_(\d+)_s(\d+)$"), _haar),
    ]

    @classmethod
    def create(cls, state_id: str) -> PureState:
        """Build the state named by state_id"""
        key = state_id.strip().lower()
        for _, pattern, builder in cls._families:
            match = pattern.match(key)
            if match:
                state = builder(*match.groups())
                logger.debug(f"Built state {key} (n={state.n}, d={state.d})")
                return state.model_copy(update={"label": key})
        raise StateArgumentError(
            f"Unknown state id: {state_id}. Available families: {', '.join(cls.list_families())}"
        )

    @classmethod
    def list_families(cls) -> List[str]:
        return [name for name, _, _ in cls._families]

    @classmethod
    def describe(cls) -> Dict[str, str]:
        return {name: pattern.pattern for name, pattern, _ in cls._families}
