from .parallel import McEstimate, MonteCarloExecutor, pairwise_sum, summarize
from .rng import counter_rng

__all__ = ["McEstimate", "MonteCarloExecutor", "pairwise_sum", "summarize", "counter_rng"]
