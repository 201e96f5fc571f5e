"""Hypergraph matching vs nearest-RRH + Hungarian on a small CRAN sweep.

Run:  python demos/cran_comparison.py [seeds]
"""

import sys
import time

import numpy as np

from hyperalloc import RadioParams, cran_bipartite_baseline, cran_iterative_matching
from hyperalloc.scenarios import build_cran_instance, generate_cran_geometry

M, K = 20, 10
seeds = int(sys.argv[1]) if len(sys.argv) > 1 else 10
params = RadioParams()

print(f"M={M} users, K={K} channels, {seeds} seeds per N")
print(f"{'N':>3} {'hypergraph Mbps':>16} {'baseline Mbps':>14} {'wins':>6} {'t_hyp ms':>9} {'t_base ms':>10}")
t0 = time.perf_counter()
for N in (10, 15, 20, 25, 30):
    hyp, base, th, tb = [], [], [], []
    for seed in range(seeds):
        inst, _ = build_cran_instance(generate_cran_geometry(M, N, seed), params, K)
        _, a = cran_iterative_matching(inst)
        _, b = cran_bipartite_baseline(inst)
        hyp.append(a.total_bps)
        base.append(b.total_bps)
        th.append(a.solver_time_s)
        tb.append(b.solver_time_s)
    wins = int(np.sum(np.array(hyp) >= np.array(base)))
    print(f"{N:>3} {np.mean(hyp) / 1e6:>16.1f} {np.mean(base) / 1e6:>14.1f} {wins:>3}/{seeds:<2}"
          f" {1e3 * np.mean(th):>9.1f} {1e3 * np.mean(tb):>10.1f}")
print(f"total {time.perf_counter() - t0:.1f} s")
