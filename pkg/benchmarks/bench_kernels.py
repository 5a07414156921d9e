"""Time the compiled kernels against the pure-Python ones on the same inputs.

    python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

from quadfield import _pykernels

try:
    from quadfield import _ckernels
except ImportError:
    _ckernels = None

DELTAS = [1757, 4 * 1293, 40_001, 99_997, 4 * 49_999, 199_997]


def cases(mod):
    def scan():
        mod.first_square_y(3, -1, 0, 200_000)
        mod.first_square_y(277, 11, 0, 200_000)

    def forms():
        for delta in DELTAS:
            mod.rho_cycles(mod.reduced_forms(delta), delta)

    def cf():
        for D in range(2, 3000):
            if int(D**0.5) ** 2 != D:
                mod.cf_cycle(0, 1, D)

    return {"first_square_y": scan, "reduced_forms+rho_cycles": forms, "cf_cycle": cf}


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    py = cases(_pykernels)
    c = cases(_ckernels) if _ckernels else {}
    print(f"{'kernel':28} {'python (s)':>12} {'cython (s)':>12} {'speedup':>9}")
    for name, fn in py.items():
        tp = min(timeit.repeat(fn, number=1, repeat=args.repeat))
        if name in c:
            tc = min(timeit.repeat(c[name], number=1, repeat=args.repeat))
            print(f"{name:28} {tp:12.4f} {tc:12.4f} {tp / tc:8.1f}x")
        else:
            print(f"{name:28} {tp:12.4f} {'n/a':>12} {'':>9}")


if __name__ == "__main__":
    main()
