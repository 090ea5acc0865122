#!/usr/bin/env python3
"""Benchmark the compiled search kernel against the pure-Python fallback.

Measures the two kernel primitives on realistic workloads (symmetry tables
of the actual target groups) and one end-to-end search per backend.

Usage: python benchmarks/bench_kernels.py [--quick]
"""

import argparse
import random
import time

from zerosum.groups import GroupSpec
from zerosum.kernel import backends
from zerosum.search import OrderlySearch
from zerosum.sequences import LengthSet
from zerosum.symmetry import EquivalenceMode, get_context


def bench_primitives(impl, ctx, cases, repeat):
    t0 = time.perf_counter()
    for _ in range(repeat):
        for seq, support in cases:
            impl.is_lex_min(seq, support, ctx.perms_search)
    t_min = time.perf_counter() - t0
    t0 = time.perf_counter()
    for _ in range(repeat):
        for seq, support in cases:
            impl.lex_min_image(seq, ctx.perms_search)
    t_img = time.perf_counter() - t0
    calls = repeat * len(cases)
    return t_min / calls, t_img / calls


def make_cases(ctx, rnd, count, length):
    cases = []
    for _ in range(count):
        seq = bytes(sorted(rnd.randrange(ctx.m) for _ in range(length)))
        cases.append((seq, bytes(dict.fromkeys(seq))))
    return cases


KERNEL_FUNCS = ("is_lex_min", "min_scan_ok", "compare_rows", "collect_tight",
                "lex_min_image")


def bench_search(backend_name, group, length_set, mode):
    # the search resolves kernel functions through the module at call time,
    # so swapping the attributes redirects it to one backend
    from zerosum import kernel

    impl = backends()[backend_name]
    saved = {name: getattr(kernel, name) for name in KERNEL_FUNCS}
    for name in KERNEL_FUNCS:
        setattr(kernel, name, getattr(impl, name))
    try:
        t0 = time.perf_counter()
        s = OrderlySearch(group, length_set, mode).run()
        elapsed = time.perf_counter() - t0
        return elapsed, s.node_count, s.max_len
    finally:
        for name, func in saved.items():
            setattr(kernel, name, func)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--quick", action="store_true",
                        help="skip the large end-to-end search")
    args = parser.parse_args()

    impls = backends()
    print(f"available kernels: {', '.join(sorted(impls))}")
    rnd = random.Random(0)

    print("\nprimitive timings (per call):")
    print(f"{'group':>14} {'tables':>7} {'len':>4} "
          + "".join(f"{name + ' is_min':>18}{name + ' min_img':>18}"
                    for name in sorted(impls)))
    for orders, mode, length in [
        ((2, 2, 4), EquivalenceMode.AUTOMORPHISM_TRANSLATION, 10),
        ((2, 2, 6), EquivalenceMode.AUTOMORPHISM, 9),
        ((2, 2, 6), EquivalenceMode.AUTOMORPHISM_TRANSLATION, 14),
    ]:
        ctx = get_context(GroupSpec(orders), mode)
        cases = make_cases(ctx, rnd, 30, length)
        row = f"{str(orders):>14} {ctx.size:>7} {length:>4} "
        for name in sorted(impls):
            per_min, per_img = bench_primitives(impls[name], ctx, cases,
                                                3 if name == "python" else 30)
            row += f"{per_min * 1e6:>14.1f} us {per_img * 1e6:>14.1f} us"
        print(row)

    print("\nend-to-end search (short-zero-sum problem over [2,2,6]):")
    for name in sorted(impls):
        elapsed, nodes, max_len = bench_search(
            name, GroupSpec([2, 2, 6]), LengthSet.short(),
            EquivalenceMode.AUTOMORPHISM)
        print(f"  {name:>9}: {elapsed:8.2f}s  {nodes} nodes, "
              f"longest avoiding length {max_len}")

    if not args.quick:
        print("\nend-to-end search (exact-exponent problem over [2,2,6], "
              "the stretch case):")
        for name in sorted(impls):
            elapsed, nodes, max_len = bench_search(
                name, GroupSpec([2, 2, 6]), LengthSet.exact_exponent(),
                EquivalenceMode.AUTOMORPHISM_TRANSLATION)
            print(f"  {name:>9}: {elapsed:8.2f}s  {nodes} nodes, "
                  f"longest avoiding length {max_len}")


if __name__ == "__main__":
    main()
