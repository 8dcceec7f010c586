#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallbacks.

Two representative hot-loop workloads:

* contraction sums: evaluate every canonical multidegree-(2,2) monomial at
  dims (2,2) on seeded random endomorphism tuples;
* exact elimination: the derivation-system rank behind the
  multidegree-(3,1) invariant-space oracle at dims (2,2).

The same code runs in both modes; only the kernel backend is switched.

Usage: python benchmarks/bench_kernels.py
"""

import time
from contextlib import contextmanager

from localinv import kernels
from localinv.evaluation import evaluate
from localinv.monomials import enumerate_generators
from localinv.spanchecks import invariant_space_dimension
from localinv.tensors import random_endotuple


@contextmanager
def backend(name):
    saved = kernels.compiled
    if name == "pure":
        kernels.compiled = None
    try:
        yield
    finally:
        kernels.compiled = saved


def bench_contraction():
    monomials = enumerate_generators((2, 2), (2, 2))
    tuples = [random_endotuple((2, 2), 2, seed=s) for s in range(10)]
    start = time.perf_counter()
    acc = 0
    for t in monomials:
        for endos in tuples:
            acc += evaluate(t, endos)
    return time.perf_counter() - start, acc


def bench_elimination():
    start = time.perf_counter()
    dim = invariant_space_dimension((3, 1), (2, 2), 2)
    return time.perf_counter() - start, dim


def main():
    if kernels.compiled is None:
        print("compiled extension not available; timing the pure backend only")
        modes = ["pure"]
    else:
        modes = ["compiled", "pure"]
    workloads = [
        ("contraction sums (168 monomials x 10 tuples)", bench_contraction),
        ("exact elimination (invariant oracle, alpha=(3,1))", bench_elimination),
    ]
    print(f"{'workload':<52} {'backend':<10} {'seconds':>9}")
    for label, fn in workloads:
        results = {}
        checks = set()
        for mode in modes:
            with backend(mode):
                seconds, check = fn()
            results[mode] = seconds
            checks.add(check)
            print(f"{label:<52} {mode:<10} {seconds:>9.3f}")
        if len(checks) != 1:
            raise AssertionError(f"backends disagree on {label}: {checks}")
        if len(results) == 2:
            print(f"{'':<52} {'speedup':<10} {results['pure'] / results['compiled']:>8.1f}x")
    print("results identical across backends")


if __name__ == "__main__":
    main()
