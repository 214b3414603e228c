"""Compare the compiled kernels with the pure-Python ones on the same inputs.

Prints one CSV row per (workload, kernel) with the best of ``--repeat`` wall
times, and checks both kernels give identical answers.

    python3 benchmarks/bench_kernels.py --repeat 5
"""

import argparse
import csv
import random
import sys
import time

from trisieve import kernels
from trisieve.linsys import weighted_disjoint_triples
from trisieve.matmul import IntMatrix, matmul
from trisieve.selftest import random_setfunction
from trisieve.transforms import intersection_transform


def workloads(rng):
    a = IntMatrix(120, 120, tuple(rng.randint(-99, 99) for _ in range(120 * 120)))
    b = IntMatrix(120, 120, tuple(rng.randint(-99, 99) for _ in range(120 * 120)))
    yield "matmul 120x120x120 blocked", lambda: matmul(a, b, "blocked").data

    f = random_setfunction(rng, 14, 3)
    yield "intersection transform n=14 q=3 s=4", lambda: intersection_transform(f, 4).values

    g, h, k = (random_setfunction(rng, 14, 2) for _ in range(3))
    yield "delta n=14 q=2 gamma=1/2", lambda: weighted_disjoint_triples(g, h, k, "1/2").delta


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--repeat", type=int, default=3)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args(argv)

    kinds = ["python"] + (["native"] if kernels.native_available() else [])
    if len(kinds) == 1:
        print("compiled kernels not built; timing the Python kernels only", file=sys.stderr)
    writer = csv.writer(sys.stdout, lineterminator="\n")
    writer.writerow(["workload", "kernel", "best_ms", "speedup", "same_result"])
    for name, fn in workloads(random.Random(args.seed)):
        timings = {}
        answers = {}
        for kind in kinds:
            with kernels.using(kind):
                timings[kind], answers[kind] = best_of(fn, args.repeat)
        same = len({repr(a) for a in answers.values()}) == 1
        for kind in kinds:
            writer.writerow([name, kind, f"{timings[kind] * 1000:.2f}", f"{timings['python'] / timings[kind]:.2f}", same])
    return 0


if __name__ == "__main__":
    sys.exit(main())
