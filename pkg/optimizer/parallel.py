# optimizer/parallel.py
"""
Map-and-reduce over a process pool.

The shared payload (link tables, a scenario template) is shipped once per
worker through the pool initializer; tasks only carry their own small
arguments. Results come back in task order, so reductions never depend on
which worker finished first. With ``workers <= 1`` everything runs inline.

Random streams are keyed by (stage, slot), never by worker, so a run is the
same whether it is spread over one process or many.
"""
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Any, Callable, Iterable, List, Optional

import numpy as np

logger = logging.getLogger(__name__)

_SHARED: Any = None

_SEED_MASK = (1 << 64) - 1


def stream(seed: int, *key: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence(entropy=int(seed) & _SEED_MASK,
                                                        spawn_key=tuple(int(k) for k in key)))


def derive_seed(seed: int, *key: int) -> int:
    """A 63-bit seed derived from ``seed`` and ``key``, for handing to a nested run."""
    state = np.random.SeedSequence(entropy=int(seed) & _SEED_MASK,
                                   spawn_key=tuple(int(k) for k in key)).generate_state(2, dtype=np.uint32)
    return (int(state[0]) << 31) ^ int(state[1])


def default_workers() -> int:
    return os.cpu_count() or 1


def _install(shared: Any) -> None:
    global _SHARED
    _SHARED = shared


def _run(job):
    fn, task = job
    return fn(_SHARED, task)


class WorkerPool:
    def __init__(self, shared: Any, workers: Optional[int] = 1):
        self.shared = shared
        self.workers = default_workers() if workers is None else max(1, int(workers))
        self._executor: Optional[ProcessPoolExecutor] = None

    def __enter__(self) -> "WorkerPool":
        if self.workers > 1:
            self._executor = ProcessPoolExecutor(max_workers=self.workers,
                                                 initializer=_install, initargs=(self.shared,))
            logger.debug("Started pool with %d workers", self.workers)
        return self

    def __exit__(self, *exc) -> None:
        if self._executor is not None:
            self._executor.shutdown()
            self._executor = None

    def map(self, fn: Callable[[Any, Any], Any], tasks: Iterable[Any]) -> List[Any]:
        tasks = list(tasks)
        if self._executor is None:
            return [fn(self.shared, t) for t in tasks]
        chunk = max(1, len(tasks) // (4 * self.workers))
        return list(self._executor.map(_run, [(fn, t) for t in tasks], chunksize=chunk))
