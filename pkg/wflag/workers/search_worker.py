"""Process-pool fan-out for candidate searches"""

from multiprocessing import Pool
from typing import Callable, List, Optional, Sequence, TypeVar
import logging

from wflag.config import get_settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def run_tasks(func: Callable[[T], List[R]], tasks: Sequence[T], jobs: Optional[int] = None) -> List[R]:
    """
    Evaluate func over tasks and concatenate the results in task order.

    Args:
        func: Module-level function (must be picklable)
        tasks: Work items
        jobs: Worker processes; 1 runs in-process

    Returns:
        Flattened results, independent of the number of workers
    """
    if jobs is None:
        jobs = get_settings().SEARCH_JOBS
    jobs = max(1, int(jobs))

    if jobs == 1 or len(tasks) <= 1:
        chunks = [func(task) for task in tasks]
    else:
        logger.info(f"🚀 Dispatching {len(tasks)} search points to {jobs} workers")
        with Pool(processes=jobs) as pool:
            chunks = pool.map(func, tasks, chunksize=max(1, len(tasks) // (4 * jobs)))

    results: List[R] = []
    for chunk in chunks:
        results.extend(chunk)
    return results
