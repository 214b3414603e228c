"""Exact integer matrix products.

Backends:

``naive``
    literal triple loop, the reference for the others;
``blocked``
    tiles of ``BLOCK`` rows/columns fed to the compiled kernel;
``strassen``
    Strassen recursion on the matrix padded to a power-of-two square,
    falling back to ``blocked`` below ``STRASSEN_CUTOFF`` rows;
``auto``
    when the inner dimension exceeds both outer ones, split the product
    into a sum of square products along the inner dimension, otherwise
    ``blocked``.

All backends return identical results; ``matmul_ops`` counts the scalar
multiplications each one performs.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import counters, kernels
from .setcore import ShapeError

BACKENDS = ("naive", "blocked", "strassen", "auto")
BLOCK = 128
STRASSEN_CUTOFF = 64


@dataclass(frozen=True)
class IntMatrix:
    rows: int
    cols: int
    data: tuple[int, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ShapeError("matrix dimensions must be nonnegative")
        if len(self.data) != self.rows * self.cols:
            raise ShapeError(f"{self.rows}x{self.cols} matrix needs {self.rows * self.cols} entries")

    @classmethod
    def from_rows(cls, rows) -> IntMatrix:
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        if any(len(r) != ncols for r in rows):
            raise ShapeError("ragged rows")
        return cls(len(rows), ncols, tuple(v for r in rows for v in r))

    @classmethod
    def identity(cls, n: int) -> IntMatrix:
        return cls(n, n, tuple(int(i == j) for i in range(n) for j in range(n)))

    def __getitem__(self, ij) -> int:
        i, j = ij
        return self.data[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        return [list(self.data[i * self.cols:(i + 1) * self.cols]) for i in range(self.rows)]

    def transpose(self) -> IntMatrix:
        r, c, d = self.rows, self.cols, self.data
        return IntMatrix(c, r, tuple(d[i * c + j] for j in range(c) for i in range(r)))


def _naive(a, b, r, m, c):
    out = [0] * (r * c)
    for i in range(r):
        for j in range(c):
            acc = 0
            for k in range(m):
                acc += a[i * m + k] * b[k * c + j]
            out[i * c + j] = acc
    counters.record_mults(r * m * c)
    return out


def _sub_block(a, cols, r0, r1, c0, c1):
    out = []
    for i in range(r0, r1):
        out.extend(a[i * cols + c0:i * cols + c1])
    return out


def _blocked(a, b, r, m, c):
    if r * m * c == 0:
        return [0] * (r * c)
    if r <= BLOCK and m <= BLOCK and c <= BLOCK:
        counters.record_mults(r * m * c)
        return kernels.matmul(a, b, r, m, c)
    out = [0] * (r * c)
    for i0 in range(0, r, BLOCK):
        i1 = min(r, i0 + BLOCK)
        for j0 in range(0, c, BLOCK):
            j1 = min(c, j0 + BLOCK)
            acc = [0] * ((i1 - i0) * (j1 - j0))
            for k0 in range(0, m, BLOCK):
                k1 = min(m, k0 + BLOCK)
                part = kernels.matmul(
                    _sub_block(a, m, i0, i1, k0, k1),
                    _sub_block(b, c, k0, k1, j0, j1),
                    i1 - i0, k1 - k0, j1 - j0,
                )
                counters.record_mults((i1 - i0) * (k1 - k0) * (j1 - j0))
                acc = [x + y for x, y in zip(acc, part)]
            w = j1 - j0
            for i in range(i1 - i0):
                out[(i0 + i) * c + j0:(i0 + i) * c + j1] = acc[i * w:(i + 1) * w]
    return out


def _pad(a, rows, cols, n):
    out = [0] * (n * n)
    for i in range(rows):
        out[i * n:i * n + cols] = a[i * cols:(i + 1) * cols]
    return out


def _add(x, y):
    return [p + q for p, q in zip(x, y)]


def _sub(x, y):
    return [p - q for p, q in zip(x, y)]


def _quadrants(a, n):
    h = n // 2
    return (
        _sub_block(a, n, 0, h, 0, h),
        _sub_block(a, n, 0, h, h, n),
        _sub_block(a, n, h, n, 0, h),
        _sub_block(a, n, h, n, h, n),
    )


def _strassen_sq(a, b, n):
    if n <= STRASSEN_CUTOFF:
        return _blocked(a, b, n, n, n)
    h = n // 2
    a11, a12, a21, a22 = _quadrants(a, n)
    b11, b12, b21, b22 = _quadrants(b, n)
    m1 = _strassen_sq(_add(a11, a22), _add(b11, b22), h)
    m2 = _strassen_sq(_add(a21, a22), b11, h)
    m3 = _strassen_sq(a11, _sub(b12, b22), h)
    m4 = _strassen_sq(a22, _sub(b21, b11), h)
    m5 = _strassen_sq(_add(a11, a12), b22, h)
    m6 = _strassen_sq(_sub(a21, a11), _add(b11, b12), h)
    m7 = _strassen_sq(_sub(a12, a22), _add(b21, b22), h)
    c11 = _add(_sub(_add(m1, m4), m5), m7)
    c12 = _add(m3, m5)
    c21 = _add(m2, m4)
    c22 = _add(_add(_sub(m1, m2), m3), m6)
    out = [0] * (n * n)
    for i in range(h):
        out[i * n:i * n + h] = c11[i * h:(i + 1) * h]
        out[i * n + h:(i + 1) * n] = c12[i * h:(i + 1) * h]
        out[(i + h) * n:(i + h) * n + h] = c21[i * h:(i + 1) * h]
        out[(i + h) * n + h:(i + h + 1) * n] = c22[i * h:(i + 1) * h]
    return out


def _strassen(a, b, r, m, c):
    size = max(r, m, c)
    if size <= STRASSEN_CUTOFF:
        return _blocked(a, b, r, m, c)
    n = 1
    while n < size:
        n *= 2
    full = _strassen_sq(_pad(a, r, m, n), _pad(b, m, c, n), n)
    return _sub_block(full, n, 0, r, 0, c)


def _square_split(a, b, r, m, c):
    # sum of ceil(m / N) products of N x N squares, N = max(r, c)
    n = max(r, c)
    out = [0] * (r * c)
    for k0 in range(0, m, n):
        k1 = min(m, k0 + n)
        a_sq = _pad(_sub_block(a, m, 0, r, k0, k1), r, k1 - k0, n)
        b_sq = _pad(_sub_block(b, c, k0, k1, 0, c), k1 - k0, c, n)
        part = _strassen(a_sq, b_sq, n, n, n)
        out = _add(out, _sub_block(part, n, 0, r, 0, c))
    return out


def matmul(a: IntMatrix, b: IntMatrix, backend: str = "auto") -> IntMatrix:
    if a.cols != b.rows:
        raise ShapeError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    r, m, c = a.rows, a.cols, b.cols
    if backend == "naive":
        data = _naive(a.data, b.data, r, m, c)
    elif backend == "blocked":
        data = _blocked(a.data, b.data, r, m, c)
    elif backend == "strassen":
        data = _strassen(a.data, b.data, r, m, c)
    elif backend == "auto":
        if r and c and m > max(r, c):
            data = _square_split(a.data, b.data, r, m, c)
        else:
            data = _blocked(a.data, b.data, r, m, c)
    else:
        raise ValueError(f"unknown matmul backend {backend!r}; expected one of {BACKENDS}")
    return IntMatrix(r, c, tuple(data))
