"""
src/core/parallel.py

Order-preserving parallel map used by trial loops and sample evaluation.
The worker count comes from the environment so batch runs stay reproducible.
"""

import logging
import os
from concurrent.futures import ThreadPoolExecutor

from config import DEFAULT_WORKERS, WORKERS_ENV_VAR


def worker_count():
    """Read the worker count from the environment (at least 1)."""
    raw = os.environ.get(WORKERS_ENV_VAR)
    if raw is None:
        return DEFAULT_WORKERS
    try:
        return max(1, int(raw))
    except ValueError:
        logging.warning(f"Ignoring invalid {WORKERS_ENV_VAR}={raw!r}")
        return DEFAULT_WORKERS


def parallel_map(func, items, workers=None):
    """
    Apply func to every item, keeping the input order.

    Args:
        func: Callable of one argument
        items: Iterable of inputs
        workers: Worker count, defaults to worker_count()

    Returns:
        List of results in input order
    """
    items = list(items)
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))
