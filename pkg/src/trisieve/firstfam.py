"""Right-hand sides of the parity-sieve equations.

For every ``i`` the sieve gives one linear equation
``sum_j (n - 2j)**i * x_j = y_i`` over the unknowns ``x_j`` (the total weight
of triples with ``|A ^ B ^ C| = j``).  ``y_i`` sums ``T_0(Z) - T_1(Z)`` over
all ``i``-tuples of elements, where ``Z`` is the running symmetric difference
of the tuple and ``T_p(Z)`` is the weight of triples whose combined
symmetric difference meets ``Z`` with parity ``p``.  Grouping tuples by the
size of ``Z`` turns the tuple sum into a short sum over ``|Z| <= i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, floor

from . import counters
from .setcore import SetFunction, check_same_shape
from .transforms import SupersetSums, TransformTable, parity_transform


@dataclass(frozen=True)
class LnTable:
    """``entries[i][s]``: number of ``i``-tuples whose running symmetric difference has size ``s``.

    The count is over all tuples, not per fixed set; the number of tuples
    landing on one particular ``s``-set is ``entries[i][s] // C(n, s)``.
    """

    n: int
    entries: tuple[tuple[int, ...], ...]

    def per_set(self, i: int, s: int) -> int:
        total = self.entries[i][s]
        per, rem = divmod(total, comb(self.n, s))
        assert rem == 0, (self.n, i, s)
        return per


@dataclass(frozen=True)
class FirstFamilyRhs:
    gamma: Fraction
    y: tuple[int, ...]


def _ln_rows(n: int, i_max: int) -> tuple[tuple[int, ...], ...]:
    # Columns stop at n; for i > n the recurrence stays valid with L[i][s>n] = 0.
    rows = [tuple([1] + [0] * i_max)]
    for i in range(1, i_max + 1):
        prev = rows[-1]
        row = [0] * (i_max + 1)
        row[0] = prev[1]
        for s in range(1, min(i, n) + 1):
            grow = (n - s + 1) * prev[s - 1]
            shrink = (s + 1) * prev[s + 1] if s + 1 <= i_max else 0
            row[s] = grow + shrink
        rows.append(tuple(row))
    return tuple(rows)


def ln_table(n: int, i_max: int, *, beyond_n: bool = False) -> LnTable:
    """Rows ``0 .. i_max``; ``i_max > n`` is refused unless ``beyond_n`` is set."""
    if i_max < 0 or (i_max > n and not beyond_n):
        raise ValueError(f"i_max={i_max} must lie in [0, n={n}]")
    return LnTable(n, _ln_rows(n, i_max))


def vandermonde_coeff(n: int, i: int, j: int) -> int:
    """``(n - 2j)**i``, with ``0**0 == 1``."""
    if i < 0 or j < 0:
        raise ValueError("i and j must be nonnegative")
    return (n - 2 * j) ** i


def first_family_top(q: int, gamma) -> int:
    """Largest sieve index ``i`` used for balance parameter ``gamma``."""
    return floor((Fraction(3, 2) - Fraction(gamma)) * q)


def _check_gamma(gamma) -> Fraction:
    g = Fraction(gamma)
    if not 0 <= g <= Fraction(1, 2):
        raise ValueError(f"gamma={gamma} must lie in [0, 1/2]")
    return g


def t_difference_from_parities(fp: TransformTable, gp: TransformTable, hp: TransformTable) -> list[int]:
    """``T_0 - T_1`` pointwise from the three parity tables, via the four-term expansions."""
    out = []
    for (f0, f1), (g0, g1), (h0, h1) in zip(fp.values, gp.values, hp.values):
        t0 = f0 * g0 * h0 + f1 * g1 * h0 + f1 * g0 * h1 + f0 * g1 * h1
        t1 = f1 * g1 * h1 + f0 * g0 * h1 + f0 * g1 * h0 + f1 * g0 * h0
        out.append(t0 - t1)
    counters.record_writes(len(out))
    return out


def t_difference_product_form(fp: TransformTable, gp: TransformTable, hp: TransformTable) -> list[int]:
    """Same values as :func:`t_difference_from_parities`, as a product of parity differences."""
    return [
        (f0 - f1) * (g0 - g1) * (h0 - h1)
        for (f0, f1), (g0, g1), (h0, h1) in zip(fp.values, gp.values, hp.values)
    ]


def t_parity_difference(f: SetFunction, g: SetFunction, h: SetFunction, s: int) -> list[int]:
    """``T_0(Z) - T_1(Z)`` for every ``s``-subset ``Z``, indexed by colex rank."""
    check_same_shape(f, g, h)
    fp, gp, hp = (parity_transform(fn, s) for fn in (f, g, h))
    return t_difference_from_parities(fp, gp, hp)


def y_values(f: SetFunction, g: SetFunction, h: SetFunction, gamma=0) -> FirstFamilyRhs:
    """Sieve right-hand sides ``y_0 .. y_top`` with ``top = floor((3/2 - gamma) q)``."""
    check_same_shape(f, g, h)
    gamma = _check_gamma(gamma)
    n = f.n
    top = first_family_top(f.q, gamma)
    ln = LnTable(n, _ln_rows(n, top))
    sums = [SupersetSums(fn) for fn in (f, g, h)]
    per_size = []
    with counters.phase("rhs_ops"):
        for s in range(min(top, n) + 1):
            fp, gp, hp = (parity_transform(sm.f, s, sums=sm) for sm in sums)
            per_size.append(sum(t_difference_from_parities(fp, gp, hp)))
    y = []
    for i in range(top + 1):
        yi = 0
        for s in range(i % 2, min(i, n) + 1, 2):
            yi += ln.per_set(i, s) * per_size[s]
        y.append(yi)
    return FirstFamilyRhs(gamma, tuple(y))
