"""Ordered thread-pool map capped by OPDAM_A1_THREADS."""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor

ENV_VAR = "OPDAM_A1_THREADS"


def max_workers() -> int:
    raw = os.environ.get(ENV_VAR, "")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    return n if n > 0 else min(8, os.cpu_count() or 1)


def ordered_map(fn, items) -> list:
    """[fn(item) for item in items], possibly in parallel, in input order."""
    items = list(items)
    workers = min(max_workers(), len(items))
    if workers <= 1:
        return [fn(item) for item in items]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, items))
