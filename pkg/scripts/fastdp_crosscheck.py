"""Fast DP against the subdivision oracle, one line per instance.

For each instance: DP time, the oracle over D = 1..64, and the oracle at the
refinement matching the DP's own hand-over points.
"""
import argparse
import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))
from helpers import REFINEMENTS, matched_refinement, small_graph  # noqa: E402

from fastdelivery.fast import solve_fast  # noqa: E402
from fastdelivery.oracle import oracle_fast_subdivided  # noqa: E402

ap = argparse.ArgumentParser(description=__doc__)
ap.add_argument("--count", type=int, default=100)
args = ap.parse_args()

dyadic = matched = 0
for seed in range(args.count):
    inst = small_graph(seed)
    sched, rep = solve_fast(inst)
    T = rep.delivery_time
    seq = [oracle_fast_subdivided(inst, D).delivery_time for D in REFINEMENTS]
    D = matched_refinement(inst, sched)
    at_D = oracle_fast_subdivided(inst, D).delivery_time
    dyadic += T in seq
    matched += at_D == T
    flag = "" if T in seq else "  <- needs D = %d" % D
    print(f"seed {seed:3}: T = {T}  oracle(1..64) = {' '.join(map(str, seq))}  oracle(D={D}) = {at_D}{flag}")
print(f"equality within D <= 64: {dyadic}/{args.count}; at matched D: {matched}/{args.count}")
