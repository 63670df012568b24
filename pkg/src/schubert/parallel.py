"""Deterministic parallel map over independent work items.

Results are returned in input order regardless of completion order, so output
never depends on scheduling. Workers run in threads: every kernel here is
pure Python over immutable tables, safe to share.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor


def pmap(fn, items, jobs: int = 1) -> list:
    items = list(items)
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))
