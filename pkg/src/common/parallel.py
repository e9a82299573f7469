"""Pool de hilos de trabajo con resultados ordenados.

Cada hilo tiene su propia cola de entrada y deja pares (índice, resultado) en
una cola de resultados compartida; el coordinador cuenta las tareas en vuelo
y detiene a los hilos con centinelas ``None`` cuando todo volvió.
"""

import logging
import os
import queue
import threading
from typing import Callable, Iterable, List, Optional, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def default_jobs() -> int:
    value = os.environ.get("QUADRINGS_JOBS")
    if not value:
        return 1
    try:
        return max(1, int(value))
    except ValueError:
        logger.warning("ignoring QUADRINGS_JOBS=%r", value)
        return 1


def map_ordered(fn: Callable[[T], R], items: Iterable[T], jobs: Optional[int] = None) -> List[R]:
    """
    Aplica ``fn`` a cada elemento de ``items`` usando ``jobs`` hilos.

    Parámetros:
      fn    : función de un argumento.
      items : elementos de entrada.
      jobs  : cantidad de hilos; None toma QUADRINGS_JOBS, y 1 o menos corre
              todo en el hilo actual.

    Retorna:
      Lista con [fn(x) for x in items], en el orden de entrada. Si alguna
      llamada falla se relanza la primera excepción.
    """
    items = list(items)
    jobs = default_jobs() if jobs is None else jobs
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    jobs = min(jobs, len(items))

    input_queues = [queue.Queue() for _ in range(jobs)]
    result_queue = queue.Queue()
    tasks_in_flight = 0
    tasks_lock = threading.Lock()

    def worker(worker_id):
        while True:
            task = input_queues[worker_id].get()
            if task is None:
                break
            index, item = task
            try:
                result_queue.put((index, fn(item), None))
            except Exception as exc:
                result_queue.put((index, None, exc))

    threads = []
    for wid in range(jobs):
        thread = threading.Thread(target=worker, args=(wid,), daemon=True)
        thread.start()
        threads.append(thread)

    for index, item in enumerate(items):
        with tasks_lock:
            tasks_in_flight += 1
        input_queues[index % jobs].put((index, item))

    results: List = [None] * len(items)
    errors = {}
    while True:
        index, value, exc = result_queue.get()
        if exc is not None:
            errors[index] = exc
        else:
            results[index] = value
        with tasks_lock:
            tasks_in_flight -= 1
            if tasks_in_flight == 0:
                break

    for q in input_queues:
        q.put(None)
    for thread in threads:
        thread.join()

    if errors:
        raise errors[min(errors)]
    logger.debug("map_ordered: %d items on %d workers", len(items), jobs)
    return results
