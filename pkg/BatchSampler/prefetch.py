# ./BatchSampler/prefetch.py

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Iterable, Iterator, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def prefetch(items: Iterable[T], prepare: Callable[[T], R], enabled: bool = True) -> Iterator[R]:
    """Yield prepare(item) for each item, preparing item k+1 on a worker thread while k is consumed.

    Single producer, single consumer, one item in flight. Worker exceptions are
    re-raised in the consumer.
    """
    if not enabled:
        for item in items:
            yield prepare(item)
        return

    iterator = iter(items)
    with ThreadPoolExecutor(max_workers=1, thread_name_prefix="batch-prefetch") as pool:
        try:
            pending = pool.submit(prepare, next(iterator))
        except StopIteration:
            return
        for item in iterator:
            ready = pending.result()
            pending = pool.submit(prepare, item)
            yield ready
        yield pending.result()
