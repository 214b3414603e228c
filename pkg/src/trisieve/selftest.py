"""Randomised invariant grid comparing every fast path with its oracle.

Each check returns ``None`` on success or a short description of the first
mismatch.  ``inject`` replaces one library function with a corrupted copy for
the duration of the run, which is how the suite proves it can fail.
"""

from __future__ import annotations

import random
import sys
from contextlib import ExitStack
from dataclasses import dataclass
from itertools import combinations
from unittest import mock

from . import firstfam, kernels, linsys, oracle, sdproduct, transforms
from .firstfam import ln_table, y_values
from .linsys import weighted_disjoint_triples
from .matmul import BACKENDS, IntMatrix, matmul
from .packing import SetFamily, count_set_packings
from .sdproduct import x_direct
from .setcore import SetFunction, rank_subset, subset_masks, unrank_subset
from .subgraph import Graph, automorphism_count, builtin_decomposition, count_subgraph_occurrences
from .transforms import intersection_transform, parity_transform


def random_setfunction(rng: random.Random, n: int, q: int, lo: int = -99, hi: int = 99) -> SetFunction:
    return SetFunction(n, q, tuple(rng.randint(lo, hi) for _ in subset_masks(n, q)))


def random_graph(rng: random.Random, n: int, p: float = 0.5) -> Graph:
    return Graph(n, tuple(e for e in combinations(range(n), 2) if rng.random() < p))


def _triple(rng, n, q):
    return tuple(random_setfunction(rng, n, q) for _ in range(3))


def check_ranking(rng):
    for n in range(1, 9):
        for q in range(n + 1):
            for r, mask in enumerate(subset_masks(n, q)):
                if rank_subset(mask, n) != r or rank_subset(unrank_subset(r, n, q), n) != r:
                    return f"rank/unrank disagree at n={n} q={q} rank={r}"
    return None


def check_transforms(rng):
    for n in range(1, 8):
        for q in range(min(n, 3) + 1):
            f = random_setfunction(rng, n, q)
            for s in range(min(n, 4) + 1):
                if [list(r) for r in intersection_transform(f, s).values] != oracle.naive_intersection(f, s):
                    return f"intersection transform n={n} q={q} s={s}"
                if [list(r) for r in parity_transform(f, s).values] != oracle.naive_parity(f, s):
                    return f"parity transform n={n} q={q} s={s}"
    return None


def check_ln_table(rng):
    for n in range(1, 6):
        table = ln_table(n, n)
        for i in range(n + 1):
            counts = oracle.brute_tuple_counts(n, i)
            row = [table.entries[i][s] for s in range(n + 1)]
            if row != [counts.get(s, 0) for s in range(n + 1)]:
                return f"L table n={n} i={i}"
    return None


def check_first_family(rng):
    for n, q in ((4, 1), (5, 1), (6, 2), (7, 2)):
        f, g, h = _triple(rng, n, q)
        x = oracle.brute_xj(f, g, h)
        y = y_values(f, g, h, 0).y
        for i, yi in enumerate(y):
            if sum((n - 2 * j) ** i * xj for j, xj in x.items()) != yi:
                return f"first-family identity n={n} q={q} i={i}"
    return None


def check_second_family(rng):
    for n, q in ((4, 1), (6, 2), (7, 2)):
        f, g, h = _triple(rng, n, q)
        for j, xj in oracle.brute_xj(f, g, h).items():
            if x_direct(f, g, h, j) != xj:
                return f"direct x_{j} n={n} q={q}"
    return None


def check_matmul(rng):
    for r, m, c in ((1, 1, 1), (3, 5, 2), (7, 3, 7), (9, 9, 9), (2, 20, 3)):
        a = IntMatrix(r, m, tuple(rng.randint(-50, 50) for _ in range(r * m)))
        b = IntMatrix(m, c, tuple(rng.randint(-50, 50) for _ in range(m * c)))
        ref = matmul(a, b, "naive")
        for be in BACKENDS:
            if matmul(a, b, be) != ref:
                return f"matmul backend {be} on {r}x{m}x{c}"
    return None


def check_sd_product(rng):
    for n, q in ((5, 1), (6, 2)):
        f, g, _ = _triple(rng, n, q)
        for ell in range(0, 2 * q + 1, 2):
            table = sdproduct.symmetric_difference_product(f, g, ell)
            ref = oracle.brute_sd_product(f, g, ell)
            if any(table[sorted(d)] != v for d, v in ref.items()):
                return f"symmetric-difference product n={n} q={q} l={ell}"
    return None


def check_delta(rng):
    for n, q in ((5, 1), (7, 2), (8, 2)):
        f, g, h = _triple(rng, n, q)
        ref = oracle.brute_delta(f, g, h)
        xs = oracle.brute_xj(f, g, h)
        for gamma in ("0", "1/8", "1/6", "1/2"):
            res = weighted_disjoint_triples(f, g, h, gamma)
            if res.delta != ref:
                return f"delta n={n} q={q} gamma={gamma}"
            if res.x != xs:
                return f"x vector n={n} q={q} gamma={gamma}"
    return None


def check_packing(rng):
    fam = SetFamily.from_sets(6, 2, list(combinations(range(6), 2)))
    if count_set_packings(fam, 3) != 90:
        return "pairs of a 6-set"
    for _ in range(4):
        n = rng.randint(4, 8)
        pairs = [p for p in combinations(range(n), 2) if rng.random() < 0.5]
        fam = SetFamily.from_sets(n, 2, pairs)
        got = count_set_packings(fam, 3)
        if got != oracle.brute_packing_count(pairs, 3):
            return f"packing count n={n} |F|={len(pairs)}"
        if got % 6:
            return "packing count not divisible by 3!"
    return None


def check_subgraphs(rng):
    for kind, size in (("path", 3), ("path", 4), ("matching", 2), ("cycle", 4)):
        pattern, pd = builtin_decomposition(kind, size)
        if automorphism_count(pattern) != oracle.brute_automorphisms(pattern.n, pattern.edges):
            return f"automorphisms of {kind}:{size}"
        for _ in range(2):
            host = random_graph(rng, rng.randint(3, 7))
            got = count_subgraph_occurrences(pattern, host, pd)
            if got != oracle.brute_subgraph_count(pattern.n, pattern.edges, host.n, host.edges):
                return f"{kind}:{size} in host with {host.n} vertices"
    return None


def check_kernels(rng):
    if not kernels.native_available():
        return None
    f = random_setfunction(rng, 8, 3)
    a, b = random_setfunction(rng, 7, 2), random_setfunction(rng, 7, 2)
    results = []
    for kind in ("native", "python"):
        with kernels.using(kind):
            tabs = [list(intersection_transform(f, s).values) for s in range(5)]
            results.append((tabs, weighted_disjoint_triples(a, b, a, 0).x))
    return None if results[0] == results[1] else "native and python kernels disagree"


CHECKS = {
    "rank-roundtrip": check_ranking,
    "transform-oracle": check_transforms,
    "tuple-count-table": check_ln_table,
    "first-family-identity": check_first_family,
    "direct-x-oracle": check_second_family,
    "matmul-backend-agreement": check_matmul,
    "symmetric-difference-product": check_sd_product,
    "delta-oracle": check_delta,
    "packing-oracle": check_packing,
    "subgraph-oracle": check_subgraphs,
    "kernel-agreement": check_kernels,
}


def _bump(fn, where):
    def broken(*args, **kwargs):
        out = fn(*args, **kwargs)
        return where(out)

    return broken


def _fault_solve(out):
    out = dict(out)
    top = max(out)
    out[top] += 1
    return out


def _fault_transform(table):
    rows = [list(r) for r in table.values]
    if rows and rows[0]:
        rows[0][0] += 1
    return transforms.TransformTable(table.n, table.s, table.kind, tuple(tuple(r) for r in rows))


def _fault_y(rhs):
    return firstfam.FirstFamilyRhs(rhs.gamma, (rhs.y[0] + 1,) + tuple(rhs.y[1:]))


FAULTS = {
    "solve": (linsys, "solve_system", _fault_solve),
    "transform": (transforms, "intersection_transform", _fault_transform),
    "first-family": (firstfam, "y_values", _fault_y),
}


@dataclass
class CheckOutcome:
    name: str
    passed: bool
    detail: str = ""


def run(seed: int = 0, inject: str | None = None, only=None) -> list[CheckOutcome]:
    outcomes = []
    with ExitStack() as stack:
        if inject is not None:
            if inject not in FAULTS:
                raise ValueError(f"unknown fault {inject!r}; choose from {', '.join(FAULTS)}")
            module, attr, corrupt = FAULTS[inject]
            broken = _bump(getattr(module, attr), corrupt)
            stack.enter_context(mock.patch.object(module, attr, broken))
            # names imported into other modules have to be patched there too
            for other in (linsys, sdproduct, firstfam, sys.modules[__name__]):
                if other is not module and getattr(other, attr, None) is not None:
                    stack.enter_context(mock.patch.object(other, attr, broken))
        for name, check in CHECKS.items():
            if only and name not in only:
                continue
            rng = random.Random(f"{seed}:{name}")
            try:
                detail = check(rng)
            except Exception as exc:  # a crash is a failure of that invariant
                detail = f"{type(exc).__name__}: {exc}"
            outcomes.append(CheckOutcome(name, detail is None, detail or ""))
    return outcomes
