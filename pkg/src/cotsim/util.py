"""Seed derivation and deterministic chunked parallelism helpers."""

from __future__ import annotations

import hashlib
import multiprocessing
from typing import Any, Callable, Sequence

import numpy as np

#: fixed id-chunk size for class enumeration kernels; must never depend on the
#: worker count, so results are bit-identical under any parallelism level
ID_CHUNK = 4096

#: fixed input-chunk size for support enumeration inside kernels
INPUT_CHUNK = 1 << 16


def derive_seed(*parts: Any) -> int:
    """Stable 63-bit seed from a tuple of labels/ints via SHA-256.

    Used for all child streams so that every (rule, m, trial) record is
    reproducible independently of scheduling or worker count.
    """
    text = "\x1f".join(str(p) for p in parts)
    digest = hashlib.sha256(text.encode("utf-8")).digest()
    return int.from_bytes(digest[:8], "big") & (2**63 - 1)


def rng_from(*parts: Any) -> np.random.Generator:
    return np.random.default_rng(derive_seed(*parts))


def chunk_ranges(n: int, chunk: int) -> list[tuple[int, int]]:
    return [(lo, min(lo + chunk, n)) for lo in range(0, n, chunk)]


def parallel_map(fn: Callable, tasks: Sequence, workers: int = 1) -> list:
    """Map fn over tasks, preserving order; fork-based pool when workers > 1.

    Task granularity is fixed by the caller, so outputs are identical for any
    worker count.
    """
    if workers <= 1 or len(tasks) <= 1:
        return [fn(t) for t in tasks]
    ctx = multiprocessing.get_context("fork")
    with ctx.Pool(processes=workers) as pool:
        return pool.map(fn, tasks)
