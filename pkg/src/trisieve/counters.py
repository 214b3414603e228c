"""Operation counters for benchmarking.

Counting is opt-in: wrap a computation in :func:`counting` to collect.  Inside
library code, :func:`phase` names the bucket that table writes land in, and
multiplications performed by matrix products always go to ``matmul_ops``.
"""

from __future__ import annotations

from collections import Counter
from contextlib import contextmanager
from contextvars import ContextVar

_active: ContextVar[Counter | None] = ContextVar("trisieve_counters", default=None)
_phase: ContextVar[str] = ContextVar("trisieve_phase", default="other_ops")


@contextmanager
def counting():
    """Collect counters for the enclosed block into a fresh ``Counter``.

    Nested blocks also add their totals to the enclosing block.
    """
    parent = _active.get()
    bucket = Counter()
    token = _active.set(bucket)
    try:
        yield bucket
    finally:
        _active.reset(token)
        if parent is not None:
            parent.update(bucket)


@contextmanager
def phase(name: str):
    token = _phase.set(name)
    try:
        yield
    finally:
        _phase.reset(token)


def record_writes(k: int) -> None:
    bucket = _active.get()
    if bucket is not None:
        bucket[_phase.get()] += k


def record_mults(k: int) -> None:
    bucket = _active.get()
    if bucket is not None:
        bucket["matmul_ops"] += k
