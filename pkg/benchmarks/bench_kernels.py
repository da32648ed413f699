"""Time the brute-force CPA scan on G_n with both kernel backends.

    python benchmarks/bench_kernels.py [--sizes 5 7 9] [--repeat 3] [--python-max 9]

The pure-Python scan at n = 11 takes minutes, so by default it only runs
up to n = 9; the compiled kernel also runs n = 11.
"""
import argparse
import math
import time

from nilgraph import _kernels_py
from nilgraph.graph import build_gn

try:
    from nilgraph import _kernels as _kernels_c
except ImportError:
    _kernels_c = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        result = fn()
        times.append(time.perf_counter() - t)
    return min(times), result


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[5, 7, 9, 11])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--python-max", type=int, default=9, help="largest n to run with the pure-Python kernel")
    args = ap.parse_args(argv)

    if _kernels_c is None:
        print("compiled extension not built; only the pure-Python kernel is timed")
    print(f"{'n':>3} {'n!':>10} {'cython s':>10} {'python s':>10} {'speedup':>8}  |CPA|")
    for n in args.sizes:
        G = build_gn(n)
        table, k = G.color_matrix(), G.n_colors
        c_time = p_time = None
        found = None
        if _kernels_c is not None:
            c_time, found = best_of(lambda: _kernels_c.scan_cpa(table, n, k), args.repeat)
        if n <= args.python_max:
            p_time, p_found = best_of(lambda: _kernels_py.scan_cpa(table, n, k), 1 if n >= 9 else args.repeat)
            if found is not None and p_found != found:
                raise SystemExit(f"backends disagree at n={n}")
            found = p_found
        speed = f"{p_time / c_time:7.1f}x" if c_time and p_time else "       -"
        fmt = lambda x: f"{x:10.4f}" if x is not None else f"{'-':>10}"
        print(f"{n:>3} {math.factorial(n):>10} {fmt(c_time)} {fmt(p_time)} {speed}  {len(found)}")


if __name__ == "__main__":
    main()
