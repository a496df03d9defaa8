"""Deterministic per-graph fan-out for the decompositions.

Per-graph pattern induction is pure, so it can run on a thread pool; the
results are collected back in dataset order and the vocabulary reduction
stays single-threaded, making output independent of the thread count.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Sequence, TypeVar

T = TypeVar("T")
R = TypeVar("R")


def map_graphs(fn: Callable[[T], R], items: Sequence[T],
               threads: int = 1) -> list[R]:
    if threads <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
