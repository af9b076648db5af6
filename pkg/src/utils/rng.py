"""
Counter-based random streams keyed by (seed, sample index)
"""

import numpy as np

# Counter word layout: [block counter, unused, sample index, stream id]
_INDEX_WORD = 2
_STREAM_WORD = 3


def counter_rng(seed: int, index: int, stream: int = 0) -> np.random.Generator:
    """Independent Philox stream for one Monte Carlo sample.

    The same (seed, index, stream) always yields the same draws, whatever the
    order in which samples are evaluated.
    """
    counter = np.zeros(4, dtype=np.uint64)
    counter[_INDEX_WORD] = np.uint64(index)
    counter[_STREAM_WORD] = np.uint64(stream)
    return np.random.Generator(np.random.Philox(key=int(seed), counter=counter))
