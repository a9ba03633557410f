"""
Worker pool service for independent solver runs.
Provides a clean abstraction over a lazily created process pool.
"""
# services/worker_pool_service.py
import logging
from concurrent.futures import Executor, ProcessPoolExecutor
from typing import Callable, Iterable, List, Optional, TypeVar

from config.settings import Settings

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


class WorkerPoolService:
    """Runs independent tasks inline or on a process pool, preserving task order."""

    def __init__(self, max_workers: Optional[int] = None):
        Settings.validate_required_settings()

        self.max_workers = max_workers or Settings.BENCH_MAX_WORKERS
        if self.max_workers < 1:
            raise ValueError(f"max_workers must be at least 1, got {self.max_workers}")
        self._executor: Optional[Executor] = None

    def _get_executor(self) -> Executor:
        """Get the process pool, creating it on first use."""
        if self._executor is None:
            try:
                self._executor = ProcessPoolExecutor(max_workers=self.max_workers)
                logger.info("Worker pool started with %d processes", self.max_workers)
            except Exception as e:
                logger.error("Failed to start worker pool: %s", e)
                raise
        return self._executor

    def map(self, fn: Callable[[T], R], tasks: Iterable[T]) -> List[R]:
        """Apply fn to every task; results come back in task order."""
        tasks = list(tasks)
        if self.max_workers == 1 or len(tasks) <= 1:
            return [fn(task) for task in tasks]

        try:
            return list(self._get_executor().map(fn, tasks))
        except Exception as e:
            logger.error("Worker pool run failed: %s", e)
            raise RuntimeError(f"Parallel run of {len(tasks)} tasks failed") from e

    def shutdown(self) -> None:
        if self._executor is not None:
            self._executor.shutdown()
            self._executor = None
            logger.info("Worker pool stopped")
