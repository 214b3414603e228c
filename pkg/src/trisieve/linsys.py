"""Assemble and solve the linear system whose solution contains Delta(f, g, h).

The unknowns are ``x_j`` for the feasible sizes ``j`` of ``A ^ B ^ C``;
``Delta`` is ``x_{3q}``.  The sieve equations ``i = 0 .. floor((3/2 - gamma) q)``
form a Vandermonde system in the nodes ``n - 2j``; the unknowns with
``j <= floor(2 gamma q)`` are instead evaluated directly and substituted.
Larger ``gamma`` drops the most expensive sieve equations in exchange for
larger symmetric-difference products.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from . import counters
from .firstfam import _check_gamma, first_family_top, vandermonde_coeff, y_values
from .sdproduct import x_direct
from .setcore import SetFunction, check_same_shape, j_support

log = logging.getLogger(__name__)

AUTO_GAMMA = Fraction(1, 6)


class InsufficientEquationsError(ValueError):
    pass


class SingularSystemError(RuntimeError):
    pass


class InconsistentSystemError(RuntimeError):
    """A retained equation fails after solving: an arithmetic or input fault."""


def resolve_gamma(gamma) -> Fraction:
    if gamma is None or gamma == "auto":
        return AUTO_GAMMA
    if isinstance(gamma, str):
        gamma = Fraction(gamma)
    return _check_gamma(gamma)


def tau_gamma(omega, alpha):
    """Exponent saving ``tau`` and balance ``gamma`` for matrix exponents ``omega``, ``alpha``.

    Exact ``Fraction`` results when the inputs are rationals.
    """
    if isinstance(omega, float) or isinstance(alpha, float):
        one = 1.0
    else:
        omega, alpha, one = Fraction(omega), Fraction(alpha), Fraction(1)
    if alpha >= one / 2:
        return Fraction(1, 18), Fraction(1, 6)
    num = (3 - omega) * (1 - alpha)
    tau = num / (36 - 6 * (1 + omega) * (1 + alpha))
    gamma = num / (12 - 2 * (1 + omega) * (1 + alpha))
    return tau, gamma


@dataclass(frozen=True)
class Selection:
    q: int
    gamma: Fraction
    first: range
    second: tuple[int, ...]
    fell_back: bool = False

    @property
    def count(self) -> int:
        return len(self.first) + len(self.second)


def _select(q: int, gamma: Fraction) -> Selection:
    cut = floor(2 * gamma * q)
    second = tuple(j for j in j_support(q) if j <= cut)
    return Selection(q, gamma, range(first_family_top(q, gamma) + 1), second)


def select_equations(q: int, n: int, gamma, *, strict: bool = False) -> Selection:
    """Sieve indices and directly evaluated ``j`` for balance ``gamma``.

    If the two families together are too few (``strict=True`` raises
    instead), falls back to the pure sieve system at ``gamma = 0``.
    """
    gamma = resolve_gamma(gamma)
    sel = _select(q, gamma)
    needed = len(j_support(q))
    if sel.count < needed:
        if strict:
            raise InsufficientEquationsError(
                f"q={q}, gamma={gamma}: {sel.count} equations for {needed} unknowns"
            )
        log.warning("q=%d gamma=%s gives %d < %d equations; using gamma=0", q, gamma, sel.count, needed)
        sel = _select(q, Fraction(0))
        sel = Selection(q, sel.gamma, sel.first, sel.second, fell_back=True)
    return sel


@dataclass(frozen=True)
class EquationSystem:
    """Sieve rows over the unknowns left after substituting the direct values."""

    n: int
    q: int
    unknowns: tuple[int, ...]
    known: dict[int, int]
    rows: tuple[tuple[int, tuple[int, ...], int], ...]  # (i, coefficients, adjusted rhs)

    @classmethod
    def build(cls, n: int, q: int, y, known: dict[int, int]) -> EquationSystem:
        unknowns = tuple(j for j in j_support(q) if j not in known)
        rows = []
        for i, yi in enumerate(y):
            rhs = yi - sum(vandermonde_coeff(n, i, j) * xj for j, xj in known.items())
            rows.append((i, tuple(vandermonde_coeff(n, i, j) for j in unknowns), rhs))
        if len(rows) < len(unknowns):
            raise InsufficientEquationsError(f"{len(rows)} rows for {len(unknowns)} unknowns")
        return cls(n, q, unknowns, dict(known), tuple(rows))


def bareiss_solve(matrix: list[list[int]], rhs: list[int]) -> list[int]:
    """Exact integer solution of a square nonsingular system by fraction-free elimination.

    Raises ``SingularSystemError`` on a zero pivot column and
    ``InconsistentSystemError`` if the solution is not integral.
    """
    u = len(matrix)
    m = [list(row) + [b] for row, b in zip(matrix, rhs)]
    prev = 1
    for k in range(u):
        piv = next((r for r in range(k, u) if m[r][k] != 0), None)
        if piv is None:
            raise SingularSystemError(f"no pivot in column {k}")
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
        mkk = m[k][k]
        for i in range(k + 1, u):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, u + 1):
                val, rem = divmod(row_i[j] * mkk - mik * row_k[j], prev)
                assert rem == 0
                row_i[j] = val
            row_i[k] = 0
        prev = mkk
    x = [0] * u
    for k in range(u - 1, -1, -1):
        acc = m[k][u] - sum(m[k][j] * x[j] for j in range(k + 1, u))
        val, rem = divmod(acc, m[k][k])
        if rem:
            raise InconsistentSystemError(f"non-integral solution in row {k}")
        x[k] = val
    return x


def solve_system(sys: EquationSystem) -> dict[int, int]:
    """All ``x_j``: knowns as given, the rest from the leading square sieve block.

    Every retained row, including surplus ones, is checked afterwards.
    """
    u = len(sys.unknowns)
    sol = dict(sys.known)
    if u:
        square = sys.rows[:u]
        vals = bareiss_solve([list(r[1]) for r in square], [r[2] for r in square])
        sol.update(zip(sys.unknowns, vals))
    for i, coeffs, rhs in sys.rows:
        if sum(c * sol[j] for c, j in zip(coeffs, sys.unknowns)) != rhs:
            raise InconsistentSystemError(f"sieve equation i={i} fails after solving")
    return {j: sol[j] for j in j_support(sys.q)}


@dataclass
class DeltaResult:
    delta: int
    x: dict[int, int]
    gamma: Fraction
    backend: str
    counters: dict[str, int] = field(default_factory=dict)


def weighted_disjoint_triples(
    f: SetFunction, g: SetFunction, h: SetFunction, gamma="auto", backend: str = "auto"
) -> DeltaResult:
    """Sum of ``f(A) g(B) h(C)`` over ordered triples of pairwise disjoint ``q``-sets."""
    check_same_shape(f, g, h)
    n, q = f.n, f.q
    sel = select_equations(q, n, gamma)
    with counters.counting() as tally:
        rhs = y_values(f, g, h, sel.gamma)
        cache: dict = {}
        known = {j: x_direct(f, g, h, j, backend, cache=cache) for j in sel.second}
        system = EquationSystem.build(n, q, rhs.y, known)
        x = solve_system(system)
    report = {k: tally.get(k, 0) for k in ("rhs_ops", "xdirect_ops", "matmul_ops")}
    return DeltaResult(x[3 * q], x, sel.gamma, backend, report)
