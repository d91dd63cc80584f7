"""Compare the pure-Python and compiled term-arithmetic kernels.

Runs the same workload against ``torsal._kernel.pure`` and
``torsal._kernel._speedups`` and prints a timing table.  Results are
validated against each other before timing, so a divergence fails loudly
rather than producing a meaningless table.

Usage: python3 benchmarks/bench_kernels.py [--terms N] [--repeats N]
"""

import argparse
import random
import time

from torsal._kernel import pure

try:
    from torsal._kernel import _speedups as compiled
except ImportError:
    compiled = None


def random_terms(rng, nvars, nterms, max_exp=6):
    out = {}
    while len(out) < nterms:
        exps = tuple(rng.randint(0, max_exp) for _ in range(nvars))
        num = rng.randint(-99, 99)
        if num:
            out[exps] = pure.rat_norm(num, rng.randint(1, 24))
    return out


def build_workload(terms):
    rng = random.Random(20260816)
    nvars = 5
    a = random_terms(rng, nvars, terms)
    b = random_terms(rng, nvars, terms)
    point = [
        pure.rat_norm(rng.randint(-9, 9), rng.randint(1, 7)) for _ in range(nvars)
    ]
    return {
        "add": lambda impl: impl.terms_add(a, b),
        "mul": lambda impl: impl.terms_mul(a, b),
        "pow3": lambda impl: impl.terms_pow(a, 3, nvars),
        "eval": lambda impl: impl.terms_eval(a, point),
    }


def time_one(fn, impl, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn(impl)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--terms", type=int, default=60,
                        help="terms per operand (default 60)")
    parser.add_argument("--repeats", type=int, default=7,
                        help="repetitions; best time wins (default 7)")
    args = parser.parse_args()

    workload = build_workload(args.terms)
    backends = [("pure", pure)]
    if compiled is not None:
        backends.append(("compiled", compiled))
        for name, fn in workload.items():
            assert fn(pure) == fn(compiled), f"backends disagree on {name}"
    else:
        print("compiled kernel not built; timing the pure kernel only\n")

    width = max(len(n) for n in workload)
    header = f"{'operation':<{width}}  " + "".join(
        f"{name:>12}" for name, _ in backends
    )
    if compiled is not None:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for name, fn in workload.items():
        times = [time_one(fn, impl, args.repeats) for _, impl in backends]
        row = f"{name:<{width}}  " + "".join(f"{t * 1e6:>10.1f}us" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.2f}x"
        print(row)


if __name__ == "__main__":
    main()
