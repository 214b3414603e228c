"""Command-line front end: ``trisieve {triples,packing,subgraph,bench,selftest}``.

Exit status is 0 on success, 1 when an internal invariant fails (including
an oracle mismatch), and 2 for bad input.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import random
import sys
import time
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from math import factorial

from . import io, oracle, selftest
from .counters import counting
from .linsys import InconsistentSystemError, SingularSystemError, resolve_gamma, weighted_disjoint_triples
from .matmul import BACKENDS
from .packing import count_set_packings
from .setcore import ScopeError, ShapeError
from .subgraph import (
    CountingFault,
    DecompositionError,
    builtin_decomposition,
    count_subgraph_occurrences,
)

SCHEMA = 1
EXIT_OK, EXIT_INTERNAL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


@dataclass
class CountReport:
    command: str
    result: dict
    gamma: str
    backend: str
    counters: dict = field(default_factory=dict)
    oracle: int | None = None
    match: bool | None = None
    schema: int = SCHEMA

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> CountReport:
        data = json.loads(text)
        if data.get("schema") != SCHEMA:
            raise ValueError(f"unsupported report schema {data.get('schema')!r}")
        return cls(**data)

    def human(self) -> str:
        lines = [f"{k} = {v}" for k, v in self.result.items() if not isinstance(v, dict)]
        for k, v in self.result.items():
            if isinstance(v, dict):
                lines += [f"{k}[{j}] = {xj}" for j, xj in v.items()]
        lines.append(f"gamma = {self.gamma}")
        lines.append(f"backend = {self.backend}")
        lines += [f"counter {k} = {v}" for k, v in sorted(self.counters.items())]
        if self.oracle is not None:
            lines.append(f"oracle = {self.oracle} {'MATCH' if self.match else 'MISMATCH'}")
        return "\n".join(lines)


def _gamma_arg(text: str):
    if text == "auto":
        return "auto"
    try:
        g = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"gamma must be a rational in [0, 1/2] or 'auto', got {text!r}")
    if not 0 <= g <= Fraction(1, 2):
        raise argparse.ArgumentTypeError(f"gamma {text} outside [0, 1/2]")
    return g


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return v


def _attach_oracle(report: CountReport, value: int, ref: int) -> None:
    report.oracle = ref
    report.match = value == ref


def cmd_triples(args) -> CountReport:
    f, g, h = (io.read(p, io.parse_setfunction) for p in args.files)
    for other, path in ((g, args.files[1]), (h, args.files[2])):
        if (other.n, other.q) != (f.n, f.q):
            raise ShapeError(
                f"{path}: shape (n={other.n}, q={other.q}) differs from {args.files[0]} (n={f.n}, q={f.q})"
            )
    res = weighted_disjoint_triples(f, g, h, args.gamma, args.backend)
    report = CountReport(
        "triples",
        {"delta": res.delta, "x": {str(j): v for j, v in sorted(res.x.items())}},
        str(res.gamma),
        res.backend,
        dict(res.counters),
    )
    if args.oracle:
        _attach_oracle(report, res.delta, oracle.brute_delta(f, g, h))
    return report


def cmd_packing(args) -> CountReport:
    if args.t < 3 or args.t % 3:
        raise InputError(f"--t {args.t}: the number of sets must be a positive multiple of 3")
    fam = io.read(args.family, io.parse_family)
    with counting() as ops:
        ordered = count_set_packings(fam, args.t, args.gamma, args.backend)
    unordered, rem = divmod(ordered, factorial(args.t))
    if rem:
        raise CountingFault(f"ordered count {ordered} not divisible by {args.t}!")
    report = CountReport(
        "packing",
        {"ordered": ordered, "unordered": unordered},
        str(resolve_gamma(args.gamma)),
        args.backend,
        dict(ops),
    )
    if args.oracle:
        _attach_oracle(report, ordered, oracle.brute_packing_count(fam.as_sets(), args.t))
    return report


def _pattern(args):
    if args.pattern:
        kind, _, size = args.pattern.partition(":")
        try:
            return builtin_decomposition(kind, int(size))
        except ValueError as exc:
            raise InputError(f"--pattern {args.pattern}: {exc}") from None
    if not (args.pattern_file and args.decomp):
        raise InputError("give --pattern KIND:SIZE or both --pattern-file and --decomp")
    return io.read(args.pattern_file, io.parse_graph), io.read(args.decomp, io.parse_decomposition)


def cmd_subgraph(args) -> CountReport:
    pattern, pd = _pattern(args)
    host = io.read(args.host, io.parse_graph)
    pd.validate(pattern)
    # counters from worker processes are not collected
    with counting() as ops:
        count = count_subgraph_occurrences(pattern, host, pd, args.gamma, args.backend, args.threads)
    report = CountReport(
        "subgraph",
        {"occurrences": count, "pattern_vertices": pattern.n, "host_vertices": host.n, "width": pd.width},
        str(resolve_gamma(args.gamma)),
        args.backend,
        dict(ops),
    )
    if args.oracle:
        _attach_oracle(report, count, oracle.brute_subgraph_count(pattern.n, pattern.edges, host.n, host.edges))
    return report


BENCH_COLUMNS = ("n", "q", "gamma", "backend", "wall_ms", "matmul_ops", "rhs_ops", "xdirect_ops", "delta", "schema")


def bench_rows(ns, q, gammas, backends, seed=0, lo=-99, hi=99):
    for n in ns:
        rng = random.Random(f"{seed}:{n}:{q}")
        f, g, h = (selftest.random_setfunction(rng, n, q, lo, hi) for _ in range(3))
        for gamma in gammas:
            for backend in backends:
                t0 = time.perf_counter()
                res = weighted_disjoint_triples(f, g, h, gamma, backend)
                wall = (time.perf_counter() - t0) * 1000
                yield {
                    "n": n,
                    "q": q,
                    "gamma": str(res.gamma),
                    "backend": backend,
                    "wall_ms": f"{wall:.3f}",
                    "matmul_ops": res.counters.get("matmul_ops", 0),
                    "rhs_ops": res.counters.get("rhs_ops", 0),
                    "xdirect_ops": res.counters.get("xdirect_ops", 0),
                    "delta": res.delta,
                    "schema": SCHEMA,
                }


def cmd_bench(args) -> int:
    gammas = [_gamma_arg(g) for g in args.gammas.split(",")]
    ns = [int(v) for v in args.n.split(",")]
    backends = args.backends.split(",")
    bad = [b for b in backends if b not in BACKENDS]
    if bad:
        raise InputError(f"unknown backend(s) {', '.join(bad)}")
    writer = csv.DictWriter(sys.stdout, fieldnames=BENCH_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for row in bench_rows(ns, args.q, gammas, backends, args.seed):
        writer.writerow(row)
    return EXIT_OK


def cmd_selftest(args) -> int:
    outcomes = selftest.run(args.seed, args.inject_fault)
    failed = [o for o in outcomes if not o.passed]
    if args.json:
        print(json.dumps({"schema": SCHEMA, "seed": args.seed, "checks": [asdict(o) for o in outcomes]}))
    else:
        for o in outcomes:
            print(f"{'PASS' if o.passed else 'FAIL'} {o.name}" + (f": {o.detail}" if o.detail else ""))
        print("PASS" if not failed else f"FAIL ({len(failed)} of {len(outcomes)} invariants)")
    return EXIT_INTERNAL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--gamma", type=_gamma_arg, default="auto", help="balance parameter in [0, 1/2] or 'auto'")
    common.add_argument("--backend", choices=BACKENDS, default="auto", help="integer matrix product backend")
    common.add_argument("--oracle", action="store_true", help="cross-check against brute force")
    common.add_argument("--json", action="store_true", help="print a JSON report")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=_positive, default=1, help="worker processes (subgraph guesses)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="trisieve", description="Exact disjoint-triple, packing and subgraph counts.")
    sub = p.add_subparsers(dest="command", required=True)

    t = sub.add_parser("triples", parents=[common], help="weighted disjoint triples of three set functions")
    t.add_argument("files", nargs=3, metavar="SETFN")

    k = sub.add_parser("packing", parents=[common], help="ordered packings of t disjoint family members")
    k.add_argument("family")
    k.add_argument("--t", type=int, required=True)

    s = sub.add_parser("subgraph", parents=[common], help="occurrences of a pattern graph in a host")
    s.add_argument("--host", required=True)
    s.add_argument("--pattern", help="builtin pattern: path:K, matching:M or cycle:K")
    s.add_argument("--pattern-file")
    s.add_argument("--decomp", help="path decomposition of --pattern-file")

    b = sub.add_parser("bench", parents=[common], help="CSV of run time and operation counters")
    b.add_argument("--n", default="8,10,12", help="comma-separated universe sizes")
    b.add_argument("--q", type=int, default=2)
    b.add_argument("--gammas", default="0,1/12,1/6")
    b.add_argument("--backends", default="auto")

    st = sub.add_parser("selftest", parents=[common], help="randomised invariant grid")
    st.add_argument("--inject-fault", choices=sorted(selftest.FAULTS), help=argparse.SUPPRESS)
    return p


COMMANDS = {"triples": cmd_triples, "packing": cmd_packing, "subgraph": cmd_subgraph}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        if args.command == "bench":
            return cmd_bench(args)
        if args.command == "selftest":
            return cmd_selftest(args)
        report = COMMANDS[args.command](args)
    except DecompositionError as exc:
        print(f"error: invalid decomposition, {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (CountingFault, InconsistentSystemError, SingularSystemError) as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, argparse.ArgumentTypeError, io.ParseError, ShapeError, ScopeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(report.to_json() if args.json else report.human())
    return EXIT_INTERNAL if report.match is False else EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
