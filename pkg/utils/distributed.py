"""Worker-count bookkeeping and an order-preserving process-pool map.

Callers reduce the returned list themselves, so results never depend on
scheduling.
"""
import logging
from concurrent.futures import ProcessPoolExecutor

logger = logging.getLogger(__name__)

_world_size = 1


def init_workers(jobs):
    global _world_size
    jobs = int(jobs or 1)
    if jobs < 1:
        raise ValueError(f"jobs must be positive, got {jobs}")
    _world_size = jobs
    if jobs > 1:
        logger.info(f"using {jobs} worker processes")


def get_world_size():
    return _world_size


def map_ordered(fn, tasks, jobs=None):
    """`[fn(t) for t in tasks]`, fanned out over processes when jobs > 1."""
    tasks = list(tasks)
    jobs = get_world_size() if jobs is None else jobs
    if jobs <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=min(jobs, len(tasks))) as pool:
        return list(pool.map(fn, tasks))
