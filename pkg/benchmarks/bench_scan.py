"""Compare the compiled and NumPy backends of the theta scan.

    python3 benchmarks/bench_scan.py [--repeat R]
"""

import argparse
import timeit

from fcq import scan
from fcq.core_math import RuleParams
from fcq.remainder_kernel import default_grid_size

CASES = [(2, 1), (8, 2), (16, 3)]
RHOS = (1.05, 1.3, 2.0, 8.0)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=200)
    args = ap.parse_args()
    print(f"compiled backend available: {scan.BACKEND == 'cython'}")
    fast = scan.theta_scan_ratio
    slow = scan.theta_scan_ratio_py
    print(f"{'n':>3} {'s':>2} {'grid':>5} {'fast us':>9} {'numpy us':>9} {'speedup':>8}")
    for n, s in CASES:
        m = default_grid_size(RuleParams(n, s))
        for rho in RHOS:
            a, b = fast(rho, n, s, m), slow(rho, n, s, m)
            assert a[0] == b[0] and abs(a[1] - b[1]) <= 1e-12 * abs(b[1]), (n, s, rho, a, b)
        t_fast = min(timeit.repeat(lambda: [fast(r, n, s, m) for r in RHOS], number=args.repeat, repeat=3))
        t_slow = min(timeit.repeat(lambda: [slow(r, n, s, m) for r in RHOS], number=args.repeat, repeat=3))
        per = 1e6 / (args.repeat * len(RHOS))
        print(f"{n:>3} {s:>2} {m:>5} {t_fast * per:>9.2f} {t_slow * per:>9.2f} {t_slow / t_fast:>7.1f}x")


if __name__ == "__main__":
    main()
