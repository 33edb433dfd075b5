"""Time the compiled and pure-Python trace kernels on random inputs.

    python benchmarks/bench_kernels.py [--reps 2000] [--symbols 12] [--length 24]
"""

import argparse
import random
import timeit

from graphprod import _kernels


def random_case(rng, symbols, length):
    masks = [0] * symbols
    for a in range(symbols):
        for b in range(a + 1, symbols):
            if rng.random() < 0.4:
                masks[a] |= 1 << b
                masks[b] |= 1 << a
    seq = [rng.randrange(symbols) for _ in range(length)]
    return seq, masks


def main():
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--reps", type=int, default=2000)
    p.add_argument("--symbols", type=int, default=12)
    p.add_argument("--length", type=int, default=24)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    rng = random.Random(args.seed)
    cases = [random_case(rng, args.symbols, args.length) for _ in range(50)]
    found = _kernels.backends()
    if "cython" not in found:
        print("compiled kernel not built; timing the Python fallback only")

    timings = {}
    for name, mod in found.items():
        row = {}
        for kernel in ("lex_order", "normal_word", "merge_target"):
            fn = getattr(mod, kernel)
            if kernel == "merge_target":
                def run():
                    for seq, masks in cases:
                        fn(seq, masks, seq[-1])
            elif kernel == "normal_word":
                def run():
                    for seq, masks in cases:
                        fn(tuple(seq), masks)
            else:
                def run():
                    for seq, masks in cases:
                        fn(seq, masks)
            n = max(1, args.reps // len(cases))
            row[kernel] = min(timeit.repeat(run, number=n, repeat=3)) / (n * len(cases))
        timings[name] = row

    print(f"{'kernel':<14}" + "".join(f"{b:>14}" for b in timings) + ("   speedup" if len(timings) > 1 else ""))
    for kernel in ("lex_order", "normal_word", "merge_target"):
        line = f"{kernel:<14}" + "".join(f"{timings[b][kernel] * 1e6:>11.2f} us" for b in timings)
        if len(timings) > 1:
            line += f"   {timings['python'][kernel] / timings['cython'][kernel]:6.1f}x"
        print(line)


if __name__ == "__main__":
    main()
