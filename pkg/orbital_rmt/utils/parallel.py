"""
Deterministic map-reduce over Monte Carlo realizations.

Work items are mapped in index order over a joblib process pool and combined
with a fixed pairwise tree, so a result never depends on how many
workers produced it.
"""

import os
from typing import Callable, List, Optional, Sequence, TypeVar

from joblib import Parallel, cpu_count, delayed, parallel_backend

from ..constants import WORKERS_ENV_VAR
from ..exceptions import InvalidArgumentError

T = TypeVar("T")
R = TypeVar("R")


def resolve_workers(workers: Optional[int] = None) -> int:
    """
    Resolve the worker count.

    Args:
        workers: Explicit count; falls back to ORBITAL_RMT_WORKERS, then all cores

    Returns:
        Positive worker count

    Raises:
        InvalidArgumentError: If the count is not a positive integer
    """
    if workers is None:
        env_value = os.environ.get(WORKERS_ENV_VAR)
        if env_value:
            try:
                workers = int(env_value)
            except ValueError:
                raise InvalidArgumentError(
                    f"{WORKERS_ENV_VAR} must be a positive integer, got {env_value!r}"
                )
        else:
            workers = cpu_count()
    if workers < 1:
        raise InvalidArgumentError(f"Worker count must be positive, got {workers}")
    return workers


def ordered_map(
    func: Callable[[T], R],
    items: Sequence[T],
    workers: Optional[int] = None,
) -> List[R]:
    """
    Apply func to every item, returning results in item order.

    With one worker (or one item) everything runs in-process. func and the
    items must be picklable otherwise.
    """
    n_workers = min(resolve_workers(workers), max(len(items), 1))
    if n_workers <= 1:
        return [func(item) for item in items]
    # One BLAS thread per worker.
    with parallel_backend("loky", n_jobs=n_workers, inner_max_num_threads=1):
        return Parallel(n_jobs=n_workers)(delayed(func)(item) for item in items)


def tree_reduce(combine: Callable[[T, T], T], leaves: Sequence[T]) -> T:
    """
    Combine leaves with a fixed balanced pairwise tree.

    The pairing depends only on the number of leaves, so the floating
    point result is identical however the leaves were computed.

    Raises:
        InvalidArgumentError: If there are no leaves
    """
    if not leaves:
        raise InvalidArgumentError("Cannot reduce an empty sequence")
    level = list(leaves)
    while len(level) > 1:
        paired = [combine(level[i], level[i + 1]) for i in range(0, len(level) - 1, 2)]
        if len(level) % 2:
            paired.append(level[-1])
        level = paired
    return level[0]
