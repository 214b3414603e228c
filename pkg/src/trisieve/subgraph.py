"""Counting occurrences of a bounded-pathwidth pattern in a host graph.

The pattern's vertices are split into ``L, S, M, T, R`` so that edges only
run inside a part or between neighbouring parts.  For every injective guess
of where the separators ``S`` and ``T`` go, the three sides become set
functions on the remaining host vertices:

* ``f(A)``: embeddings of ``L`` onto ``A`` compatible with the guess for ``S``,
* ``g(B)``: embeddings of ``M`` onto ``B`` compatible with both guesses,
* ``h(C)``: embeddings of ``R`` onto ``C`` compatible with the guess for ``T``,

and ``Delta(f, g, h)`` counts the injective homomorphisms extending the
guess.  Parts are padded to a common size with isolated slack vertices that
may only land on extra isolated host vertices, which multiplies the total by
exactly ``(number of slack vertices)!``.  Dividing the injective
homomorphism count by the number of automorphisms gives the number of
subgraphs.

Embedding counts come from a homomorphism DP over a nice path decomposition
(introduce / forget one vertex at a time) combined with inclusion-exclusion
over the image set, which turns homomorphism counts into injective ones.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from math import ceil, comb, factorial

from .linsys import weighted_disjoint_triples
from .setcore import ScopeError, SetFunction, subset_masks

log = logging.getLogger(__name__)

AUTOMORPHISM_LIMIT = 10


class DecompositionError(ValueError):
    """A path decomposition violates one of its invariants (named in ``invariant``)."""

    def __init__(self, invariant: str, detail: str):
        super().__init__(f"{invariant}: {detail}")
        self.invariant = invariant


class CountingFault(RuntimeError):
    """An exact division that must succeed did not."""


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("vertex count must be nonnegative")
        norm = set()
        for u, v in self.edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside {self.n} vertices")
            e = (min(u, v), max(u, v))
            if e in norm:
                raise ValueError(f"duplicate edge {e}")
            norm.add(e)
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    def adjacency(self) -> list[set[int]]:
        adj = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    @classmethod
    def complete(cls, n: int) -> Graph:
        return cls(n, tuple(combinations(range(n), 2)))


@dataclass(frozen=True)
class PathDecomposition:
    bags: tuple[frozenset, ...]

    def __post_init__(self):
        object.__setattr__(self, "bags", tuple(frozenset(b) for b in self.bags))

    @property
    def width(self) -> int:
        return max((len(b) for b in self.bags), default=0) - 1

    def validate(self, graph: Graph) -> None:
        """Raise :class:`DecompositionError` naming the first broken invariant."""
        seen = set().union(*self.bags) if self.bags else set()
        extra = seen - set(range(graph.n))
        if extra:
            raise DecompositionError("bag-vertices", f"bags mention non-vertices {sorted(extra)}")
        missing = set(range(graph.n)) - seen
        if missing:
            raise DecompositionError("vertex-coverage", f"vertices {sorted(missing)} are in no bag")
        for u, v in graph.edges:
            if not any(u in b and v in b for b in self.bags):
                raise DecompositionError("edge-coverage", f"edge ({u}, {v}) is in no bag")
        for v in range(graph.n):
            idx = [i for i, b in enumerate(self.bags) if v in b]
            if idx[-1] - idx[0] + 1 != len(idx):
                raise DecompositionError("contiguity", f"bags containing vertex {v} are not consecutive")

    def restrict(self, keep) -> PathDecomposition:
        keep = set(keep)
        return PathDecomposition(tuple(b & keep for b in self.bags if b & keep))


def nice_bags(bags) -> list[frozenset]:
    """Refine so that consecutive bags differ by one vertex (forgets before introduces)."""
    out = []
    cur: frozenset = frozenset()
    for bag in bags:
        for v in sorted(cur - bag):
            cur = cur - {v}
            if cur:
                out.append(cur)
        for v in sorted(bag - cur):
            cur = cur | {v}
            out.append(cur)
    for v in sorted(cur):
        cur = cur - {v}
        if cur:
            out.append(cur)
    return out


@dataclass(frozen=True)
class FivePartition:
    L: frozenset
    S: frozenset
    M: frozenset
    T: frozenset
    R: frozenset

    def parts(self):
        return (self.L, self.S, self.M, self.T, self.R)

    def violations(self, graph: Graph, width: int) -> list[str]:
        """Names of the partition invariants that fail (empty when valid)."""
        bad = []
        parts = self.parts()
        union = set().union(*parts)
        if sum(map(len, parts)) != len(union) or union != set(range(graph.n)):
            bad.append("partition")
        cap = ceil(graph.n / 3)
        if max(len(self.L), len(self.M), len(self.R)) > cap:
            bad.append("(i) part size")
        if max(len(self.S), len(self.T)) > max(width, 0):
            bad.append("(ii) separator size")
        where = {v: i for i, part in enumerate(parts) for v in part}
        if any(abs(where[u] - where[v]) > 1 for u, v in graph.edges if u in where and v in where):
            bad.append("(iii) consecutive edges")
        return bad


def five_partition(graph: Graph, pd: PathDecomposition) -> FivePartition:
    """Split the pattern at two cuts of the refined decomposition.

    The separators are the intersections of neighbouring bags at the cuts;
    among all valid choices the one with the fewest separator vertices (then
    the smallest largest part) is returned.
    """
    pd.validate(graph)
    width = pd.width
    if graph.n == 0:
        empty = frozenset()
        return FivePartition(empty, empty, empty, empty, empty)
    nice = nice_bags(pd.bags)
    m = len(nice)
    adhesion = [frozenset()] + [nice[c - 1] & nice[c] for c in range(1, m)] + [frozenset()]
    first = {}
    last = {}
    for i, b in enumerate(nice):
        for v in b:
            first.setdefault(v, i)
            last[v] = i
    best = None
    for c1 in range(m + 1):
        for c2 in range(c1, m + 1):
            S, T = adhesion[c1], adhesion[c2]
            if S & T:
                continue
            L, M, R = set(), set(), set()
            for v in range(graph.n):
                if v in S or v in T:
                    continue
                if last[v] < c1:
                    L.add(v)
                elif first[v] >= c2:
                    R.add(v)
                else:
                    M.add(v)
            cand = FivePartition(frozenset(L), S, frozenset(M), T, frozenset(R))
            if cand.violations(graph, width):
                continue
            key = (len(S) + len(T), max(len(L), len(M), len(R)), -c1, -c2)
            if best is None or key < best[0]:
                best = (key, cand)
    if best is None:
        raise DecompositionError(
            "five-partition",
            f"no pair of cuts keeps L, M, R within ceil(k/3) = {ceil(graph.n / 3)} vertices",
        )
    return best[1]


def _hom_count(nice, padj, choices, hadj) -> int:
    """Homomorphisms sending each pattern vertex ``v`` into ``choices[v]``.

    ``nice`` is a nice path decomposition of the pattern vertices in play.
    States map the images of the current bag (in sorted vertex order) to
    the number of partial homomorphisms.
    """
    states = {(): 1}
    bag: tuple = ()
    for nxt in nice + [frozenset()]:
        for gone in sorted(set(bag) - nxt):
            pos = bag.index(gone)
            merged: dict = {}
            for img, cnt in states.items():
                key = img[:pos] + img[pos + 1:]
                merged[key] = merged.get(key, 0) + cnt
            states = merged
            bag = bag[:pos] + bag[pos + 1:]
        for new in sorted(nxt - set(bag)):
            nb = tuple(sorted(bag + (new,)))
            pos = nb.index(new)
            nbrs = [i for i, u in enumerate(bag) if u in padj[new]]
            grown: dict = {}
            for img, cnt in states.items():
                for w in choices[new]:
                    hw = hadj[w]
                    if all(img[i] in hw for i in nbrs):
                        key = img[:pos] + (w,) + img[pos:]
                        grown[key] = grown.get(key, 0) + cnt
            states = grown
            bag = nb
        if not states:
            return 0
    return sum(states.values())


def _graph_maps(p_edges, h_edges):
    padj: dict = {}
    for u, v in p_edges:
        padj.setdefault(u, set()).add(v)
        padj.setdefault(v, set()).add(u)
    hadj: dict = {}
    for u, v in h_edges:
        hadj.setdefault(u, set()).add(v)
        hadj.setdefault(v, set()).add(u)
    return padj, hadj


def _injective_from_homs(hom_of, free_count: int, pool) -> int:
    # sum over W in pool with |W| <= free_count of
    # (-1)^(m - |W|) C(|pool| - |W|, m - |W|) hom(W)
    pool = list(pool)
    total = 0
    for w in range(min(free_count, len(pool)) + 1):
        coeff = comb(len(pool) - w, free_count - w)
        if not coeff:
            continue
        sign = -1 if (free_count - w) & 1 else 1
        for sub in combinations(pool, w):
            total += sign * coeff * hom_of(sub)
    return total


def count_injective_homs_extending(
    p_graph: Graph, h_graph: Graph, phi: dict, pd: PathDecomposition | None = None
) -> int:
    """Injective homomorphisms ``p_graph -> h_graph`` that agree with ``phi``.

    ``pd`` is a path decomposition of ``p_graph``; without one a single bag
    is used.  An inconsistent ``phi`` gives 0.
    """
    if len(set(phi.values())) != len(phi):
        return 0
    if any(not 0 <= w < h_graph.n for w in phi.values()):
        return 0
    if pd is None:
        pd = PathDecomposition((frozenset(range(p_graph.n)),) if p_graph.n else ())
    pd.validate(p_graph)
    padj, hadj = _graph_maps(p_graph.edges, h_graph.edges)
    padj = {v: padj.get(v, set()) for v in range(p_graph.n)}
    hadj = {w: hadj.get(w, set()) for w in range(h_graph.n)}
    nice = nice_bags(pd.bags)
    free = [v for v in range(p_graph.n) if v not in phi]
    pool = [w for w in range(h_graph.n) if w not in set(phi.values())]

    def hom_of(sub):
        choices = {v: (phi[v],) for v in phi}
        choices.update({v: sub for v in free})
        return _hom_count(nice, padj, choices, hadj)

    return _injective_from_homs(hom_of, len(free), pool)


def automorphism_count(graph: Graph) -> int:
    if graph.n > AUTOMORPHISM_LIMIT:
        raise ScopeError(f"automorphism count by enumeration is limited to {AUTOMORPHISM_LIMIT} vertices")
    edges = set(graph.edges)
    adj = graph.adjacency()
    degrees = [len(a) for a in adj]
    count = 0
    for perm in permutations(range(graph.n)):
        if any(degrees[perm[v]] != degrees[v] for v in range(graph.n)):
            continue
        if all((min(perm[u], perm[v]), max(perm[u], perm[v])) in edges for u, v in graph.edges):
            count += 1
    return count


def builtin_decomposition(kind: str, size: int) -> tuple[Graph, PathDecomposition]:
    """Pattern and decomposition for ``path`` (k vertices), ``matching`` (m edges), ``cycle`` (k vertices)."""
    if size < 1:
        raise ValueError("pattern size must be at least 1")
    if kind == "path":
        g = Graph(size, tuple((i, i + 1) for i in range(size - 1)))
        bags = [{i, i + 1} for i in range(size - 1)] or [{0}]
    elif kind == "matching":
        g = Graph(2 * size, tuple((2 * i, 2 * i + 1) for i in range(size)))
        bags = [{2 * i, 2 * i + 1} for i in range(size)]
    elif kind == "cycle":
        if size < 3:
            raise ValueError("a cycle needs at least 3 vertices")
        g = Graph(size, tuple((i, i + 1) for i in range(size - 1)) + ((0, size - 1),))
        bags = [{i, i + 1, size - 1} for i in range(size - 2)]
    else:
        raise ValueError(f"unknown pattern kind {kind!r}; expected path, matching or cycle")
    pd = PathDecomposition(tuple(frozenset(b) for b in bags))
    pd.validate(g)
    return g, pd


@dataclass
class _Plan:
    """Everything that stays fixed across separator guesses."""

    pattern: Graph
    host: Graph
    fp: FivePartition
    q: int
    slack: tuple[int, int, int]
    sides: tuple  # per side: (free vertices, fixed vertices, nice bags)
    padj: dict
    hadj: dict
    separators: tuple[int, ...]
    gamma: object
    backend: str


def _make_plan(pattern, host, pd, fp, gamma, backend) -> _Plan:
    q = max(len(fp.L), len(fp.M), len(fp.R))
    slack = (q - len(fp.L), q - len(fp.M), q - len(fp.R))
    sides = []
    for free, fixed in ((fp.L, fp.S), (fp.M, fp.S | fp.T), (fp.R, fp.T)):
        nice = nice_bags(pd.restrict(free | fixed).bags)
        sides.append((tuple(sorted(free)), tuple(sorted(fixed)), nice))
    padj, hadj = _graph_maps(pattern.edges, host.edges)
    padj = {v: padj.get(v, set()) for v in range(pattern.n)}
    hadj = {w: hadj.get(w, set()) for w in range(host.n)}
    seps = tuple(sorted(fp.S)) + tuple(sorted(fp.T))
    return _Plan(pattern, host, fp, q, slack, tuple(sides), padj, hadj, seps, gamma, backend)


def _guess_consistent(plan: _Plan, phi: dict) -> bool:
    for u in phi:
        for v in plan.padj[u]:
            if v in phi and phi[v] not in plan.hadj[phi[u]]:
                return False
    return True


def build_part_functions(plan: _Plan, phi: dict) -> tuple[SetFunction, SetFunction, SetFunction]:
    """``f, g, h`` over the host vertices outside the guess plus the slack targets.

    Real vertices are relabelled ``0 .. r-1`` in increasing order; the slack
    targets are ``r .. r + slack - 1``.
    """
    used = set(phi.values())
    real = [w for w in range(plan.host.n) if w not in used]
    r = len(real)
    n_univ = r + sum(plan.slack)
    q = plan.q
    dummy_mask = ((1 << n_univ) - 1) ^ ((1 << r) - 1)
    out = []
    for (free, fixed, nice), pad in zip(plan.sides, plan.slack):
        fixed_choice = {v: (phi[v],) for v in fixed}
        homs: dict[int, int] = {}
        for w in range(len(free) + 1):
            for sub in combinations(range(r), w):
                choices = dict(fixed_choice)
                image = tuple(real[i] for i in sub)
                choices.update({v: image for v in free})
                homs[sum(1 << i for i in sub)] = _hom_count(nice, plan.padj, choices, plan.hadj)
        values = []
        for mask in subset_masks(n_univ, q):
            real_part = mask & ~dummy_mask
            if bin(mask & dummy_mask).count("1") != pad:
                values.append(0)
                continue
            # surjective homs onto real_part via inclusion-exclusion
            bits = [i for i in range(r) if real_part >> i & 1]
            tot = 0
            for w in range(len(bits) + 1):
                sign = -1 if (len(bits) - w) & 1 else 1
                for sub in combinations(bits, w):
                    tot += sign * homs[sum(1 << i for i in sub)]
            values.append(tot * factorial(pad))
        out.append(SetFunction(n_univ, q, tuple(values)) if n_univ else None)
    return tuple(out)


def _delta_for_guess(plan: _Plan, phi: dict) -> int:
    f, g, h = build_part_functions(plan, phi)
    if f is None:
        # empty universe: only q = 0 can contribute
        return 1 if plan.q == 0 else 0
    return weighted_disjoint_triples(f, g, h, plan.gamma, plan.backend).delta


def _sum_guesses(plan: _Plan, images) -> int:
    total = 0
    for img in images:
        phi = dict(zip(plan.separators, img))
        if _guess_consistent(plan, phi):
            total += _delta_for_guess(plan, phi)
    return total


def _sum_chunk(args):
    plan, images = args
    return _sum_guesses(plan, images)


def injective_hom_total(
    pattern: Graph, host: Graph, pd: PathDecomposition, gamma="auto", backend: str = "auto", threads: int = 1
) -> tuple[int, FivePartition, int]:
    """``(sum over guesses of Delta, partition, slack vertex count)``."""
    fp = five_partition(pattern, pd)
    plan = _make_plan(pattern, host, pd, fp, gamma, backend)
    images = list(permutations(range(host.n), len(plan.separators)))
    if threads > 1 and len(images) > 1:
        step = ceil(len(images) / (4 * threads))
        chunks = [(plan, images[i:i + step]) for i in range(0, len(images), step)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            total = sum(pool.map(_sum_chunk, chunks))
    else:
        total = _sum_guesses(plan, images)
    return total, fp, sum(plan.slack)


def count_subgraph_occurrences(
    pattern: Graph, host: Graph, pd: PathDecomposition, gamma="auto", backend: str = "auto", threads: int = 1
) -> int:
    """Number of subgraphs of ``host`` isomorphic to ``pattern``."""
    pd.validate(pattern)
    if pattern.n > host.n:
        return 0
    total, _, slack = injective_hom_total(pattern, host, pd, gamma, backend, threads)
    inj, rem = divmod(total, factorial(slack))
    if rem:
        raise CountingFault(f"guess total {total} not divisible by {slack}!")
    aut = automorphism_count(pattern)
    count, rem = divmod(inj, aut)
    if rem:
        raise CountingFault(f"{inj} injective homomorphisms not divisible by {aut} automorphisms")
    return count
