#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python twins.

Runs the two hot loops on identical inputs through every importable
backend and reports wall time plus speedup; results are asserted equal
before timings are printed, so a fast-but-wrong kernel cannot slip by.

Usage: python bench/benchmark.py [--directions N] [--offsets N] [--k N]
"""

import argparse
import time
from fractions import Fraction

from toricstab import catalog, invariants
from toricstab.destabilizer import _candidate, _kernel_data, _pack
from toricstab.integration import _integer_box, _piece_table, _scaled_constraints
from toricstab.kernels import available_backends
from toricstab.plfunc import affine, make_pl, zero_function


def bench_scan_kernel(backends, directions, offsets):
    poly = catalog("cp2_2blowup")
    ext = invariants.extremal_field(poly)
    data = _kernel_data(poly, ext)
    base = (Fraction(0), Fraction(0))
    cands = [
        _pack(_candidate(poly, base, Fraction(j, directions), Fraction(t, offsets)))
        for j in range(directions)
        for t in range(offsets)
    ]
    print(f"crease functional batch: {len(cands)} candidates on cp2_2blowup")
    results = {}
    timings = {}
    for name, mod in backends.items():
        start = time.perf_counter()
        results[name] = mod.simple_pl_values(*data, cands)
        timings[name] = time.perf_counter() - start
    _report(results, timings)


def bench_lattice_kernel(backends, k):
    poly = catalog("cp2")
    phi = make_pl([zero_function(2), affine((1, 0), 0)], poly)
    lows, highs = _integer_box(poly, k, 10**9)
    rows = _scaled_constraints(poly, k)
    table, _ = _piece_table(phi, poly.dim)
    cells = (highs[0] - lows[0] + 1) * (highs[1] - lows[1] + 1)
    print(f"lattice sum: k={k}, {cells} box cells on cp2")
    results = {}
    timings = {}
    for name, mod in backends.items():
        start = time.perf_counter()
        results[name] = mod.lattice_weighted_sum(poly.dim, lows, highs, rows, table, k)
        timings[name] = time.perf_counter() - start
    _report(results, timings)


def _report(results, timings):
    values = list(results.values())
    assert all(v == values[0] for v in values), "backends disagree"
    slowest = max(timings.values())
    for name in sorted(timings):
        elapsed = timings[name]
        print(f"  {name:>9}: {elapsed * 1000:9.2f} ms   x{slowest / elapsed:.1f}")
    print()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--directions", type=int, default=360)
    parser.add_argument("--offsets", type=int, default=100)
    parser.add_argument("--k", type=int, default=400)
    args = parser.parse_args()

    backends = available_backends()
    print(f"backends: {', '.join(sorted(backends))}\n")
    bench_scan_kernel(backends, args.directions, args.offsets)
    bench_lattice_kernel(backends, args.k)


if __name__ == "__main__":
    main()
