#!/usr/bin/env python3
"""Benchmark: compiled Groebner kernel vs the pure-Python fallback.

Times full reduced-basis computations for the moduli presentations that
dominate the verification suite, over the rationals and mod 2, and reports
the speedup.  Both engines must produce bit-identical bases; that is asserted
here as well as in the test suite.

Run:  python3 benchmarks/bench_kernel.py [--repeat N]
"""

import argparse
import time

from blowupchow.groebner import _integer_terms
from blowupchow.poly import RAT
from blowupchow.presentation import build_presentation
from blowupchow.surface import load_surface

from blowupchow.kernel import _pure

try:
    from blowupchow.kernel import _speedups
except ImportError:
    _speedups = None

CASES = [
    ("p2", 3),
    ("p1xp1", 3),
    ("p2", 4),
    ("p1xp1", 4),
]


def bench(engine, weights, gens, prime, repeat):
    best = float("inf")
    basis = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        basis = engine.make_basis(weights, "degrevlex", gens, prime)
        best = min(best, time.perf_counter() - t0)
    return best, engine.basis_terms(basis)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    if _speedups is None:
        print("compiled kernel not available; build it with "
              "`pip install -e . --no-build-isolation`")
        return

    header = f"{'case':<16} {'prime':>5} {'pure':>9} {'compiled':>9} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for selector, n in CASES:
        ring = build_presentation(load_surface(selector), n)
        gens = [_integer_terms(g.with_ring(RAT))[0] for g in ring.ideal]
        for prime in (0, 2):
            t_pure, b_pure = bench(_pure, ring.vocab.weights, gens, prime,
                                   args.repeat)
            t_fast, b_fast = bench(_speedups, ring.vocab.weights, gens, prime,
                                   args.repeat)
            assert b_pure == b_fast, "kernel outputs diverged"
            label = f"{selector} n={n}"
            print(f"{label:<16} {prime or 'QQ':>5} {t_pure:>8.3f}s "
                  f"{t_fast:>8.3f}s {t_pure / t_fast:>7.2f}x")


if __name__ == "__main__":
    main()
