#!/usr/bin/env python3
"""
Deterministic chunked Monte Carlo execution over a joblib worker pool
"""

import logging
from typing import Any, Callable, List, NamedTuple, Optional, Sequence

import numpy as np
from joblib import Parallel, delayed

from config.settings import get_settings

logger = logging.getLogger(__name__)


class McEstimate(NamedTuple):
    """Sample mean with its standard error"""

    estimate: float
    std_error: float
    samples: int


def pairwise_sum(parts: Sequence[Any]) -> Any:
    """Tree reduction in a fixed order, independent of how parts were produced"""
    if not parts:
        raise ValueError("pairwise_sum needs at least one part")
    if len(parts) == 1:
        return parts[0]
    middle = len(parts) // 2
    return pairwise_sum(parts[:middle]) + pairwise_sum(parts[middle:])


def summarize(values: np.ndarray) -> McEstimate:
    values = np.asarray(values, dtype=float)
    count = values.shape[0]
    mean = float(np.mean(values))
    std_error = float(np.std(values, ddof=1) / np.sqrt(count)) if count > 1 else 0.0
    return McEstimate(mean, std_error, count)


class MonteCarloExecutor:
    """Runs a chunk kernel over sample indices [0, samples).

    Chunk boundaries depend only on the chunk size, never on the worker count,
    and chunk results are always combined in chunk order, so every reduction is
    bit-identical for any degree of parallelism.
    """

    def __init__(self, workers: Optional[int] = None, chunk_size: Optional[int] = None):
        settings = get_settings()
        self.workers = workers or settings.workers
        self.chunk_size = chunk_size or settings.mc_chunk_size

    def chunks(self, samples: int) -> List[tuple]:
        return [(start, min(start + self.chunk_size, samples))
                for start in range(0, samples, self.chunk_size)]

    def run_chunks(self, kernel: Callable[..., Any], samples: int, **kwargs) -> List[Any]:
        """Evaluate kernel(start, stop, **kwargs) for every chunk, results in chunk order"""
        if samples < 1:
            raise ValueError(f"samples must be >= 1, got {samples}")
        bounds = self.chunks(samples)
        logger.debug(f"Running {samples} samples in {len(bounds)} chunks on {self.workers} workers")

        if self.workers == 1 or len(bounds) == 1:
            return [kernel(start, stop, **kwargs) for start, stop in bounds]

        return Parallel(n_jobs=min(self.workers, len(bounds)))(
            delayed(kernel)(start, stop, **kwargs) for start, stop in bounds
        )

    def sample_values(self, kernel: Callable[..., np.ndarray], samples: int, **kwargs) -> np.ndarray:
        """Concatenate per-sample values returned by each chunk"""
        return np.concatenate(self.run_chunks(kernel, samples, **kwargs), axis=0)

    def reduce_sum(self, kernel: Callable[..., Any], samples: int, **kwargs) -> Any:
        """Pairwise sum of per-chunk partial sums"""
        return pairwise_sum(self.run_chunks(kernel, samples, **kwargs))
