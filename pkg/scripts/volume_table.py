"""Print Vol(H_{n,n}) and a_n for a range of n, with wall-clock timings.

    python3 scripts/volume_table.py --max-n 6 --workers 4
"""

import argparse
import time

from harmonic_polytope import harmonic_volume, nonzero_mixed_volume_count
from harmonic_polytope.config import set_limits


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--workers", type=int, default=1)
    args = parser.parse_args()
    set_limits(volume=max(args.max_n, 7), nonzero_count=max(args.max_n, 9))

    print(f"{'n':>2}  {'volume':>24}  {'seconds':>8}  {'a_n':>12}")
    for n in range(1, args.max_n + 1):
        start = time.perf_counter()
        vol = harmonic_volume(n, workers=args.workers)
        elapsed = time.perf_counter() - start
        print(f"{n:>2}  {str(vol):>24}  {elapsed:>8.2f}  {nonzero_mixed_volume_count(n):>12}")


if __name__ == "__main__":
    main()
