"""Kernel selection: compiled 64-bit loops when available, Python otherwise.

The compiled module is picked at import time unless ``TRISIEVE_PURE=1`` is
set.  Each call first tries the compiled kernel and silently reruns the
Python kernel if a value overflows 64 bits, so results are always exact.
"""

from __future__ import annotations

import os
from contextlib import contextmanager

from . import _pykernels

try:
    from . import _ckernels as _native
except ImportError:  # extension not built
    _native = None

if os.environ.get("TRISIEVE_PURE", "") not in ("", "0"):
    _native_enabled = False
else:
    _native_enabled = _native is not None

NAMES = ("matmul", "scatter_down", "gather_up", "split_gather")


def native_available() -> bool:
    return _native is not None


def active() -> str:
    return "native" if _native_enabled else "python"


def select(kind: str) -> None:
    """Switch kernels globally: ``"native"`` or ``"python"``."""
    global _native_enabled
    if kind == "native":
        if _native is None:
            raise RuntimeError("compiled kernels are not built; reinstall with Cython available")
        _native_enabled = True
    elif kind == "python":
        _native_enabled = False
    else:
        raise ValueError(f"unknown kernel kind {kind!r}")


@contextmanager
def using(kind: str):
    prev = active()
    select(kind)
    try:
        yield
    finally:
        select(prev)


def _dispatch(name):
    py = getattr(_pykernels, name)

    def call(*args):
        if _native_enabled:
            try:
                return getattr(_native, name)(*args)
            except OverflowError:
                pass
        return py(*args)

    call.__name__ = name
    call.__doc__ = py.__doc__
    return call


matmul = _dispatch("matmul")
scatter_down = _dispatch("scatter_down")
gather_up = _dispatch("gather_up")
split_gather = _dispatch("split_gather")
