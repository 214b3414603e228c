"""Brute-force reference implementations.

Nothing here calls into the fast code paths.  Set functions are read through
their ``values`` tuple using a colex enumeration built locally from
``itertools.combinations``, and every count is a literal loop over the
objects being counted.  Scope guards keep accidental calls from running for
hours.
"""

from __future__ import annotations

from itertools import combinations, permutations, product

from .setcore import ScopeError, SetFunction, ShapeError


def _colex(n: int, q: int) -> list[frozenset]:
    combos = list(combinations(range(n), q))
    combos.sort(key=lambda c: tuple(reversed(c)))
    return [frozenset(c) for c in combos]


def as_dict(f: SetFunction) -> dict[frozenset, int]:
    return dict(zip(_colex(f.n, f.q), f.values))


def _shared_shape(f, g, h):
    if not (f.n == g.n == h.n and f.q == g.q == h.q):
        raise ShapeError("f, g, h must share (n, q)")


def brute_delta(f: SetFunction, g: SetFunction, h: SetFunction) -> int:
    """Sum of f(A) g(B) h(C) over ordered pairwise disjoint triples."""
    _shared_shape(f, g, h)
    F, G, H = as_dict(f), as_dict(g), as_dict(h)
    total = 0
    for a, fa in F.items():
        for b, gb in G.items():
            if a & b:
                continue
            for c, hc in H.items():
                if a & c or b & c:
                    continue
                total += fa * gb * hc
    return total


def brute_xj(f: SetFunction, g: SetFunction, h: SetFunction) -> dict[int, int]:
    """Triple weight grouped by ``|A ^ B ^ C|``, for every size with the parity of q."""
    _shared_shape(f, g, h)
    q = f.q
    x = {j: 0 for j in range(q % 2, 3 * q + 1, 2)}
    F, G, H = as_dict(f), as_dict(g), as_dict(h)
    for a, fa in F.items():
        for b, gb in G.items():
            ab = a ^ b
            for c, hc in H.items():
                x[len(ab ^ c)] += fa * gb * hc
    return x


def naive_intersection(f: SetFunction, s: int) -> list[list[int]]:
    """``rows[rank(Z)][t]`` by a double loop over (Z, A)."""
    F = as_dict(f)
    top = min(s, f.q)
    rows = []
    for z in _colex(f.n, s):
        row = [0] * (top + 1)
        for a, v in F.items():
            row[len(a & z)] += v
        rows.append(row)
    return rows


def naive_parity(f: SetFunction, s: int) -> list[list[int]]:
    F = as_dict(f)
    rows = []
    for z in _colex(f.n, s):
        row = [0, 0]
        for a, v in F.items():
            row[len(a & z) % 2] += v
        rows.append(row)
    return rows


def brute_tuple_counts(n: int, i: int) -> dict[int, int]:
    """Number of ``i``-tuples over ``range(n)`` whose running symmetric difference has each size."""
    if n ** i > 10**7:
        raise ScopeError(f"{n}^{i} tuples is too many to enumerate")
    counts: dict[int, int] = {}
    for tup in product(range(n), repeat=i):
        z = set()
        for u in tup:
            z ^= {u}
        counts[len(z)] = counts.get(len(z), 0) + 1
    return counts


def brute_y(f: SetFunction, g: SetFunction, h: SetFunction, i: int) -> int:
    """Right-hand side of the first family directly from its tuple definition."""
    _shared_shape(f, g, h)
    n = f.n
    if n ** i * len(f.values) ** 3 > 5 * 10**7:
        raise ScopeError("tuple sum too large")
    F, G, H = as_dict(f), as_dict(g), as_dict(h)
    triples = [(a ^ b ^ c, F[a] * G[b] * H[c]) for a in F for b in G for c in H]
    y = 0
    for tup in product(range(n), repeat=i):
        z = set()
        for u in tup:
            z ^= {u}
        for d, w in triples:
            y += -w if len(d & z) % 2 else w
    return y


def brute_sd_product(f: SetFunction, g: SetFunction, ell: int) -> dict[frozenset, int]:
    """``{D: sum(f(A) g(B) for A ^ B == D)}`` for every ``D`` of size ``ell``."""
    F, G = as_dict(f), as_dict(g)
    out = {d: 0 for d in _colex(f.n, ell)}
    for a, fa in F.items():
        for b, gb in G.items():
            d = a ^ b
            if len(d) == ell:
                out[d] += fa * gb
    return out


def brute_packing_count(family, t: int) -> int:
    """Ordered ``t``-tuples of pairwise disjoint members, by enumeration."""
    sets = [frozenset(m) for m in family]
    if len(sets) ** t > 10**7:
        raise ScopeError(f"{len(sets)}^{t} tuples is too many to enumerate")
    count = 0
    for tup in product(sets, repeat=t):
        seen = set()
        ok = True
        for m in tup:
            if seen & m:
                ok = False
                break
            seen |= m
        if ok:
            count += 1
    return count


def _edge_set(edges):
    return {frozenset(e) for e in edges}


def brute_injective_homs(p_vertices, p_edges, h_vertices, h_edges, fixed=None) -> int:
    """Injective maps ``p_vertices -> h_vertices`` that send edges to edges and extend ``fixed``."""
    fixed = dict(fixed or {})
    pv = list(p_vertices)
    hv = list(h_vertices)
    he = _edge_set(h_edges)
    count = 0
    for image in permutations(hv, len(pv)):
        m = dict(zip(pv, image))
        if any(m[v] != w for v, w in fixed.items() if v in m):
            continue
        if all(frozenset((m[u], m[v])) in he for u, v in p_edges):
            count += 1
    return count


def brute_subgraph_count(p_n: int, p_edges, h_n: int, h_edges) -> int:
    """Distinct subgraphs of the host isomorphic to the pattern."""
    if p_n > 8 or h_n > 10:
        raise ScopeError("brute-force subgraph count is limited to k <= 8, n <= 10")
    he = _edge_set(h_edges)
    seen = set()
    for image in permutations(range(h_n), p_n):
        img_edges = frozenset(frozenset((image[u], image[v])) for u, v in p_edges)
        if img_edges <= he:
            seen.add((frozenset(image), img_edges))
    return len(seen)


def brute_automorphisms(p_n: int, p_edges) -> int:
    pe = _edge_set(p_edges)
    return sum(
        1
        for perm in permutations(range(p_n))
        if {frozenset((perm[u], perm[v])) for u, v in p_edges} == pe
    )
