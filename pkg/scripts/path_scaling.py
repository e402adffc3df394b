"""Wall time of the path solver as k doubles (default 2^10..2^14)."""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from helpers import line_family  # noqa: E402

from fastdelivery.path import solve_line  # noqa: E402

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--low", type=int, default=10)
ap.add_argument("--high", type=int, default=14)
ap.add_argument("--naive", action="store_true", help="time the list-scan reference instead")
args = ap.parse_args()

prev = None
for e in range(args.low, args.high + 1):
    ln = line_family(2 ** e)
    t0 = time.perf_counter()
    solve_line(ln, naive=args.naive)
    dt = time.perf_counter() - t0
    print(f"k = 2^{e:<2}  {dt:8.3f} s" + (f"  x{dt / prev:.2f}" if prev else ""))
    prev = dt
