"""Dual connectivity: channel assignment as hypergraph coloring.

Run:  python demos/dualconn_coloring.py
"""

from hyperalloc import RadioParams, dualconn_allocate
from hyperalloc.scenarios import build_dualconn_instance, generate_dualconn_geometry

params = RadioParams()
geom = generate_dualconn_geometry(U=10, S=30, seed=2, params=params)
for K in (1, 2, 3, 4, 6):
    inst = build_dualconn_instance(geom, params, K)
    colors, viol, rep = dualconn_allocate(inst)
    print(f"K={K}: {inst.hypergraph.m} hyperedges, {viol.count} monochromatic,"
          f" {len(viol.hard_pair_violations)} same-user clashes, sum-rate {rep.total_bps / 1e6:8.1f} Mbps")
