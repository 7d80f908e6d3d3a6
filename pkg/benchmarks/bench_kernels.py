"""Compare the numba kernels with their numpy/Python fallbacks.

Two workloads, both taken from the nerve computations:

* diagonal reduction of every boundary matrix of every orbit-cover nerve
  over ``Z_n`` for ``n <= N``;
* facet bijection search for every ordered pair of rotation classes with
  ``gcd(n, k) = 1``, ``k >= 2``, ``n <= N``.

Both backends must give identical answers; the script exits non-zero if not.

    python benchmarks/bench_kernels.py [--max-n 8] [--repeat 3]
"""

import argparse
import itertools
import sys
import time
from math import gcd

import numpy as np

from orbitcover import kernels
from orbitcover.compositions import enumerate_compositions, rotation_classes
from orbitcover.covers import orbit_cover
from orbitcover.nerve import build_nerve
from orbitcover.scale_core import Scale


def boundary_matrices(max_n):
    mats = []
    for n in range(1, max_n + 1):
        scale = Scale.of(n, range(n))
        for k in range(1, n + 1):
            for sigma in enumerate_compositions(n, k):
                cx = build_nerve(orbit_cover(scale, sigma, 0))
                mats += [cx.boundary_matrix(p) for p in range(1, cx.dimension + 1)]
    return mats


def search_problems(max_n):
    problems = []
    for n in range(2, max_n + 1):
        scale = Scale.of(n, range(n))
        for k in range(2, n + 1):
            if gcd(n, k) != 1:
                continue
            nerves = [build_nerve(orbit_cover(scale, c.representative, 0)) for c in rotation_classes(n, k)]
            for a, b in itertools.product(nerves, repeat=2):
                if a.f_vector() != b.f_vector():
                    continue
                sig_a = [a.vertex_signature(v) for v in range(n)]
                sig_b = [b.vertex_signature(v) for v in range(n)]
                compat = np.array([[x == y for y in sig_b] for x in sig_a], dtype=np.bool_)
                fa = [sum(1 << v for v in s) for s in a.facets()]
                fb = [sum(1 << v for v in s) for s in b.facets()]
                problems.append((n, fa, fb, compat))
    return problems


def run_smith(mats, backend):
    return [tuple(kernels.smith_diagonal(m, backend=backend)) for m in mats]


def run_search(problems, backend):
    out = []
    for n, fa, fb, compat in problems:
        image = kernels.find_facet_bijection(n, fa, fb, compat, backend=backend)
        out.append(image is not None)
    return out


def best_of(func, arg, backend, repeat):
    times = []
    result = None
    for _ in range(repeat):
        start = time.perf_counter()
        result = func(arg, backend)
        times.append(time.perf_counter() - start)
    return min(times), result


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=8)
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args(argv)

    print(f"numba available: {kernels.NUMBA_AVAILABLE}  (auto backend: {kernels.BACKEND})")
    mats = boundary_matrices(args.max_n)
    problems = search_problems(args.max_n)
    print(f"{len(mats)} boundary matrices, {len(problems)} bijection searches, n <= {args.max_n}")

    backends = ["numpy", "numba"] if kernels.NUMBA_AVAILABLE else ["numpy"]
    if kernels.NUMBA_AVAILABLE:
        # compile outside the timed region
        run_smith(mats[:1], "numba")
        run_search(problems[:1], "numba")

    ok = True
    print(f"{'workload':<20}{'backend':<10}{'seconds':>10}{'speedup':>10}")
    for name, func, data in (("diagonal reduction", run_smith, mats), ("bijection search", run_search, problems)):
        results = {}
        for backend in backends:
            results[backend] = best_of(func, data, backend, args.repeat)
        base = results["numpy"][0]
        for backend in backends:
            secs = results[backend][0]
            print(f"{name:<20}{backend:<10}{secs:>10.4f}{base / secs:>9.1f}x")
        if len({tuple(r[1]) for r in results.values()}) != 1:
            print(f"  backends disagree on {name}")
            ok = False
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
