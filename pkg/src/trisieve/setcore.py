"""Subsets of a small universe, colex ranking, and dense set functions.

Subsets are carried around as Python ``int`` bitmasks (bit ``e`` set means
element ``e`` is present).  The colexicographic order on ``q``-subsets is the
same as the numeric order of their bitmasks, which is what makes the rank of
a subset independent of the universe size: the rank of ``{1, 3}`` is 4 for
every ``n >= 4``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

MAX_UNIVERSE = 64


class InvalidSubsetError(ValueError):
    pass


class ShapeError(ValueError):
    """Set functions (or matrices) with incompatible shapes were combined."""


class ScopeError(ValueError):
    """Input beyond the size an exhaustive routine is allowed to handle."""


def check_universe(n: int) -> None:
    if not 1 <= n <= MAX_UNIVERSE:
        raise ValueError(f"universe size must be in [1, {MAX_UNIVERSE}], got {n}")


def to_mask(members: Iterable[int], n: int | None = None) -> int:
    mask = 0
    for e in members:
        if e < 0 or (n is not None and e >= n):
            raise InvalidSubsetError(f"element {e} outside universe of size {n}")
        if mask >> e & 1:
            raise InvalidSubsetError(f"element {e} repeated")
        mask |= 1 << e
    return mask


def members(mask: int) -> list[int]:
    out = []
    e = 0
    while mask:
        if mask & 1:
            out.append(e)
        mask >>= 1
        e += 1
    return out


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def rank_subset(sub: Sequence[int] | int, n: int) -> int:
    """Colex rank of ``sub`` among the ``|sub|``-subsets of ``range(n)``.

    ``sub`` may be a sequence of elements or a bitmask.

    >>> rank_subset([1, 3], 4)
    4
    """
    elems = members(sub) if isinstance(sub, int) else sorted(sub)
    if len(set(elems)) != len(elems):
        raise InvalidSubsetError(f"repeated element in {list(sub)}")
    for e in elems:
        if not 0 <= e < n:
            raise InvalidSubsetError(f"element {e} outside universe of size {n}")
    return sum(comb(c, j + 1) for j, c in enumerate(elems))


def unrank_subset(rank: int, n: int, q: int) -> list[int]:
    """Inverse of :func:`rank_subset`; returns the sorted member list."""
    total = comb(n, q)
    if not 0 <= rank < total:
        raise IndexError(f"rank {rank} out of range [0, {total}) for C({n},{q})")
    out = [0] * q
    c = n
    while q > 0:
        c -= 1
        b = comb(c, q)
        if rank >= b:
            rank -= b
            q -= 1
            out[q] = c
    return out


def symmetric_difference(x: Sequence[int], y: Sequence[int]) -> list[int]:
    return sorted(set(x) ^ set(y))


def j_support(q: int) -> list[int]:
    """Possible sizes of ``A ^ B ^ C`` for three ``q``-subsets."""
    if q < 0:
        raise ValueError("q must be nonnegative")
    return list(range(q % 2, 3 * q + 1, 2))


@lru_cache(maxsize=None)
def subset_masks(n: int, q: int) -> tuple[int, ...]:
    """All ``q``-subsets of ``range(n)`` as bitmasks, in colex (numeric) order."""
    if q < 0 or q > n:
        return ()
    masks = [sum(1 << e for e in c) for c in combinations(range(n), q)]
    masks.sort()
    return tuple(masks)


@lru_cache(maxsize=None)
def rank_index(n: int, q: int) -> dict[int, int]:
    """Map bitmask -> colex rank for the ``q``-subsets of ``range(n)``."""
    return {m: r for r, m in enumerate(subset_masks(n, q))}


@dataclass(frozen=True)
class SetFunction:
    """Dense table ``binom(range(n), q) -> int`` indexed by colex rank."""

    n: int
    q: int
    values: tuple[int, ...]

    def __post_init__(self):
        check_universe(self.n)
        if self.q < 0:
            raise ValueError("q must be nonnegative")
        values = tuple(int(v) for v in self.values)
        if len(values) != comb(self.n, self.q):
            raise ShapeError(
                f"expected C({self.n},{self.q}) = {comb(self.n, self.q)} values, got {len(values)}"
            )
        object.__setattr__(self, "values", values)

    @classmethod
    def zeros(cls, n: int, q: int) -> SetFunction:
        return cls(n, q, (0,) * comb(n, q))

    @classmethod
    def constant(cls, n: int, q: int, c: int = 1) -> SetFunction:
        return cls(n, q, (c,) * comb(n, q))

    @classmethod
    def from_mapping(cls, n: int, q: int, entries: dict) -> SetFunction:
        """Build from ``{subset: value}``; subsets may be masks or iterables."""
        vals = [0] * comb(n, q)
        for key, v in entries.items():
            mask = key if isinstance(key, int) else to_mask(key, n)
            if mask >> n:
                raise InvalidSubsetError(f"subset {members(mask)} outside universe of size {n}")
            if popcount(mask) != q:
                raise InvalidSubsetError(f"subset {members(mask)} does not have size {q}")
            vals[rank_index(n, q)[mask]] = v
        return cls(n, q, tuple(vals))

    @classmethod
    def point(cls, n: int, sub: Iterable[int], value: int = 1) -> SetFunction:
        sub = list(sub)
        return cls.from_mapping(n, len(sub), {to_mask(sub, n): value})

    def __getitem__(self, sub) -> int:
        mask = sub if isinstance(sub, int) else to_mask(sub, self.n)
        r = rank_index(self.n, self.q).get(mask)
        if r is None:
            raise InvalidSubsetError(f"{members(mask)} is not a {self.q}-subset of range({self.n})")
        return self.values[r]

    def items(self):
        return zip(subset_masks(self.n, self.q), self.values)

    def total(self) -> int:
        return sum(self.values)

    def __add__(self, other: SetFunction) -> SetFunction:
        check_same_shape(self, other)
        return SetFunction(self.n, self.q, tuple(a + b for a, b in zip(self.values, other.values)))


def check_same_shape(*fns: SetFunction) -> None:
    n, q = fns[0].n, fns[0].q
    for f in fns[1:]:
        if (f.n, f.q) != (n, q):
            raise ShapeError(f"set functions have shapes (n={n}, q={q}) and (n={f.n}, q={f.q})")
