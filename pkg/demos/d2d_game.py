"""D2D channel selection as a potential game: best response vs stochastic play.

Run:  python demos/d2d_game.py
"""

from hyperalloc import RadioParams, d2d_allocate
from hyperalloc.game import new_game
from hyperalloc.scenarios import build_d2d_instance, generate_d2d_geometry

params = RadioParams()
inst = build_d2d_instance(generate_d2d_geometry(30, seed=7, area=500.0, params=params), params)
H = inst.hypergraph
sizes = [len(e) for e in H.edges]
print(f"{H.n} links, {H.m} interference hyperedges "
      f"({sizes.count(2)} pairwise, {sizes.count(3)} cumulative)")
print("max adjacency degree:", new_game(H, 1).max_degree())

for K in (2, 3, 4):
    prof, trace, rep = d2d_allocate(inst, K, "best_response", seed=1)
    print(f"K={K} best_response  potential {trace.potentials[0]:>3} -> {prof.potential:>3}"
          f" in {len(trace) - 1} rounds, sum-rate {rep.total_bps / 1e6:8.1f} Mbps")
    prof, trace, rep = d2d_allocate(inst, K, "stochastic", seed=1, beta=2.0, max_rounds=50)
    print(f"K={K} stochastic     potential {trace.potentials[0]:>3} -> {prof.potential:>3}"
          f" (best of 50 rounds), sum-rate {rep.total_bps / 1e6:8.1f} Mbps")
