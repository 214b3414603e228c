"""Symmetric-difference products and direct evaluation of ``x_j``.

If ``|A| = |B| = q`` and ``|A ^ B| = ell`` then ``A`` and ``B`` share
``q - ell/2`` elements and each has ``ell/2`` of its own.  Writing
``A = I | K`` and ``B = K | J`` with ``K = A & B`` turns the sum over pairs
with a given difference ``D = I | J`` into a matrix product over the shared
part ``K``, followed by summing the product entries ``(I, D - I)`` over the
halves ``I`` of ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import counters, kernels
from .matmul import IntMatrix, matmul
from .setcore import SetFunction, check_same_shape, j_support, rank_index, subset_masks, to_mask
from .transforms import SupersetSums, intersection_transform


class ParityError(ValueError):
    pass


@dataclass(frozen=True)
class SdProductTable:
    n: int
    ell: int
    values: tuple[int, ...]

    def __getitem__(self, d) -> int:
        mask = d if isinstance(d, int) else to_mask(d, self.n)
        return self.values[rank_index(self.n, self.ell)[mask]]


def _check_ell(q: int, ell: int) -> None:
    if ell % 2:
        raise ParityError(f"ell={ell} must be even")
    if not 0 <= ell <= 2 * q:
        raise ValueError(f"ell={ell} must lie in [0, 2q={2 * q}]")


def build_pair_matrices(f: SetFunction, ell: int) -> IntMatrix:
    """Matrix with ``(I, K) -> f(I | K)`` for disjoint ``I``, ``K`` and 0 otherwise.

    Rows run over ``(ell/2)``-subsets, columns over ``(q - ell/2)``-subsets,
    both in colex order.  The ``g`` side of the product uses the transpose.
    """
    _check_ell(f.q, ell)
    n, q, half = f.n, f.q, ell // 2
    rows = subset_masks(n, half)
    cols = subset_masks(n, q - half)
    lookup = rank_index(n, q)
    vals = f.values
    data = []
    for i in rows:
        for k in cols:
            data.append(0 if i & k else vals[lookup[i | k]])
    return IntMatrix(len(rows), len(cols), tuple(data))


def symmetric_difference_product(f: SetFunction, g: SetFunction, ell: int, backend: str = "auto") -> SdProductTable:
    """``D -> sum(f(A) g(B) for A ^ B == D)`` over all ``ell``-subsets ``D``."""
    check_same_shape(f, g)
    _check_ell(f.q, ell)
    n, half = f.n, ell // 2
    if ell > n:
        return SdProductTable(n, ell, ())
    fmat = build_pair_matrices(f, ell)
    gmat = build_pair_matrices(g, ell).transpose()
    prod = matmul(fmat, gmat, backend)
    dmasks = subset_masks(n, ell)
    values = kernels.split_gather(prod.data, prod.cols, dmasks, half, n)
    counters.record_writes(len(dmasks) * comb(ell, half))
    return SdProductTable(n, ell, tuple(values))


def ell_range(q: int, j: int, n: int) -> range:
    return range(max(0, q - j), min(2 * q, n, q + j) + 1, 2)


def x_direct(
    f: SetFunction,
    g: SetFunction,
    h: SetFunction,
    j: int,
    backend: str = "auto",
    *,
    cache: dict | None = None,
) -> int:
    """Total weight of triples with ``|A ^ B ^ C| == j``, evaluated directly.

    ``C`` meets ``D = A ^ B`` in ``(q + |D| - j) / 2`` elements exactly when
    ``|D ^ C| = j``.  Passing the same ``cache`` dict to several calls
    shares the products and transforms between them.
    """
    check_same_shape(f, g, h)
    q, n = f.q, f.n
    if j not in j_support(q):
        raise ParityError(f"j={j} is not a feasible size for q={q}")
    if cache is None:
        cache = {}
    if "h_sums" not in cache:
        cache["h_sums"] = SupersetSums(h)
    total = 0
    with counters.phase("xdirect_ops"):
        for ell in ell_range(q, j, n):
            t = (q + ell - j) // 2
            if not 0 <= t <= min(ell, q):
                continue
            if ("sd", ell) not in cache:
                cache["sd", ell] = symmetric_difference_product(f, g, ell, backend).values
                cache["h", ell] = intersection_transform(h, ell, sums=cache["h_sums"])
            sd = cache["sd", ell]
            hcol = cache["h", ell].column(t)
            total += sum(a * b for a, b in zip(sd, hcol))
            counters.record_writes(len(sd))
    return total
