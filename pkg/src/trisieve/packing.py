"""Counting ordered ``t``-tuples of pairwise disjoint members of a set family.

For ``t = 3 r`` the count is ``Delta(g, g, g)`` where ``g(A)`` is the number of
ordered ``r``-tuples of disjoint members whose union is exactly ``A``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial

from .linsys import weighted_disjoint_triples
from .setcore import InvalidSubsetError, SetFunction, check_universe, members, to_mask


@dataclass(frozen=True)
class SetFamily:
    n: int
    s: int
    members: tuple[int, ...]  # bitmasks

    def __post_init__(self):
        check_universe(self.n)
        seen = set()
        for m in self.members:
            if m >> self.n:
                raise InvalidSubsetError(f"member {members(m)} outside universe of size {self.n}")
            if bin(m).count("1") != self.s:
                raise InvalidSubsetError(f"member {members(m)} does not have {self.s} elements")
            if m in seen:
                raise InvalidSubsetError(f"member {members(m)} listed twice")
            seen.add(m)

    @classmethod
    def from_sets(cls, n: int, s: int, sets) -> SetFamily:
        return cls(n, s, tuple(to_mask(x, n) for x in sets))

    def as_sets(self) -> list[list[int]]:
        return [members(m) for m in self.members]


def union_count_dp(fam: SetFamily, t3: int) -> SetFunction:
    """``A -> #ordered t3-tuples of disjoint members with union A``, on ``(s * t3)``-subsets."""
    if t3 < 1:
        raise ValueError("t3 must be at least 1")
    q = fam.s * t3
    if q > fam.n:
        return SetFunction.zeros(fam.n, q)
    layer = {0: 1}
    for _ in range(t3):
        nxt: dict[int, int] = {}
        for union, cnt in layer.items():
            for m in fam.members:
                if not union & m:
                    u = union | m
                    nxt[u] = nxt.get(u, 0) + cnt
        layer = nxt
    return SetFunction.from_mapping(fam.n, q, layer)


def count_set_packings(fam: SetFamily, t: int, gamma="auto", backend: str = "auto") -> int:
    if t < 3 or t % 3:
        raise ValueError(f"t={t}: the number of sets must be a positive multiple of 3")
    g = union_count_dp(fam, t // 3)
    return weighted_disjoint_triples(g, g, g, gamma, backend).delta


def unordered(count: int, t: int) -> int:
    q, r = divmod(count, factorial(t))
    if r:
        raise ArithmeticError(f"ordered count {count} not divisible by {t}!")
    return q
