"""Order-preserving process pool map used by the renderers."""

from __future__ import annotations

import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Callable, Iterable, Optional, TypeVar

from scripts.utils.config import load_section

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def default_workers() -> int:
    cfg = load_section("render", {"workers": 0})
    return int(cfg["workers"]) or (os.cpu_count() or 1)


def parallel_map(func: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None) -> list[R]:
    """Map ``func`` over ``items``; results keep input order.

    ``func`` must be a module-level function so it can be pickled.
    ``workers <= 1`` runs in-process.
    """
    tasks = list(items)
    count = default_workers() if workers is None else workers
    if count <= 1 or len(tasks) <= 1:
        return [func(task) for task in tasks]
    chunksize = max(1, len(tasks) // (4 * count))
    logger.debug("mapping %d tasks on %d workers (chunksize %d)", len(tasks), count, chunksize)
    with ProcessPoolExecutor(max_workers=count) as pool:
        return list(pool.map(func, tasks, chunksize=chunksize))
