"""Intersection and parity transforms of a set function.

For ``f`` on ``q``-subsets and a size ``s``, the intersection transform gives,
for every ``s``-subset ``Z`` and every ``t``, the total of ``f`` over the sets
meeting ``Z`` in exactly ``t`` elements.  The parity transform only keeps
track of whether ``t`` is even or odd.

The computation goes through superset sums.  With
``up_w(W) = sum(f(A) for A containing W)`` for ``|W| = w``, summing ``up_w``
over the ``w``-subsets of ``Z`` weighs each ``A`` by ``C(|A & Z|, w)``; a
binomial inversion then recovers the exact-``t`` counts.  The superset sums
do not depend on ``s`` and are shared when several sizes are needed.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from . import counters, kernels
from .setcore import SetFunction, rank_subset, subset_masks

INTERSECTION = "intersection"
PARITY = "parity"


@dataclass(frozen=True)
class TransformTable:
    """Values indexed ``values[rank(Z)][t]`` (``t`` is the parity for parity tables)."""

    n: int
    s: int
    kind: str
    values: tuple[tuple[int, ...], ...]

    def at(self, z, t: int) -> int:
        return self.values[rank_subset(z, self.n)][t]

    def column(self, t: int) -> list[int]:
        return [row[t] for row in self.values]


class SupersetSums:
    """Superset sums of one set function, computed lazily per level ``w``."""

    def __init__(self, f: SetFunction):
        self.f = f
        self._levels: dict[int, list[int]] = {}

    def level(self, w: int) -> list[int]:
        if w not in self._levels:
            f = self.f
            masks = subset_masks(f.n, f.q)
            self._levels[w] = kernels.scatter_down(masks, f.values, w, f.n)
            counters.record_writes(len(masks) * comb(f.q, w))
        return self._levels[w]


def _check_s(f: SetFunction, s: int) -> None:
    if not 0 <= s <= f.n:
        raise ValueError(f"transform size s={s} outside [0, n={f.n}]")


def _intersection_rows(sums: SupersetSums, s: int) -> list[tuple[int, ...]]:
    f = sums.f
    zmasks = subset_masks(f.n, s)
    top = min(s, f.q)
    # weighted[w][z] = sum over A of f(A) * C(|A & Z|, w)
    weighted = []
    for w in range(top + 1):
        weighted.append(kernels.gather_up(sums.level(w), zmasks, w, f.n))
        counters.record_writes(len(zmasks) * comb(s, w))
    rows = []
    for z in range(len(zmasks)):
        row = []
        for t in range(top + 1):
            acc = 0
            for w in range(t, top + 1):
                term = comb(w, t) * weighted[w][z]
                acc += -term if (w - t) & 1 else term
            row.append(acc)
        rows.append(tuple(row))
    counters.record_writes(len(zmasks) * (top + 1))
    return rows


def intersection_transform(f: SetFunction, s: int, *, sums: SupersetSums | None = None) -> TransformTable:
    """Table of ``sum(f(A) for |A & Z| == t)`` for all ``s``-subsets ``Z``, ``0 <= t <= min(s, q)``."""
    _check_s(f, s)
    if sums is None:
        sums = SupersetSums(f)
    elif sums.f is not f:
        raise ValueError("superset sums belong to a different set function")
    return TransformTable(f.n, s, INTERSECTION, tuple(_intersection_rows(sums, s)))


def parity_from_intersection(table: TransformTable) -> TransformTable:
    rows = []
    for row in table.values:
        even = sum(row[0::2])
        odd = sum(row[1::2])
        rows.append((even, odd))
    counters.record_writes(2 * len(rows))
    return TransformTable(table.n, table.s, PARITY, tuple(rows))


def parity_transform(f: SetFunction, s: int, *, sums: SupersetSums | None = None) -> TransformTable:
    """Table of ``(sum over even |A & Z|, sum over odd |A & Z|)`` for all ``s``-subsets ``Z``."""
    return parity_from_intersection(intersection_transform(f, s, sums=sums))
