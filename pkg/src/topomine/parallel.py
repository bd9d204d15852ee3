"""Deterministic parallel map over graphs.

Work items are independent and results are collected by index, so the
output is identical for any worker count (including 1, which bypasses the
pool entirely).
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


def ordered_map(fn, items, threads: int = 1) -> list:
    items = list(items)
    if threads <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(fn, items))
