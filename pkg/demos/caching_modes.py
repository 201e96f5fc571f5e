"""Proactive caching: who serves each request, a SAP or a nearby device?

Run:  python demos/caching_modes.py
"""

from hyperalloc import RadioParams, caching_allocate
from hyperalloc.pipelines import caching_cost
from hyperalloc.scenarios import build_caching_instance, generate_caching_scenario

geom, cat = generate_caching_scenario(U=12, S=4, K=4, num_contents=8, seed=3)
inst = build_caching_instance(geom, RadioParams(), cat)
print(f"{inst.hypergraph.m} feasible (user, provider, channel) edges;"
      f" {len(inst.caching_users)} devices act as D2D providers")

for policy in ("distributed", "centralized"):
    alloc, _ = caching_allocate(inst, policy, seed=0)
    t, unserved, _ = caching_cost(alloc, inst)
    modes = ["D2D" if inst.is_virtual(p) else "SAP" for p in alloc.server[alloc.assigned]]
    print(f"\n{policy}: total time {t:.3f} s, {unserved} unserved, "
          f"{modes.count('SAP')} via SAP, {modes.count('D2D')} via D2D")
    for u in alloc.assigned:
        p = alloc.server[u]
        src = f"device {inst.caching_users[p - inst.num_saps]}" if inst.is_virtual(p) else f"SAP {p}"
        print(f"  user {u:>2} <- {src:<9} ch {alloc.channel[u]}  {alloc.weight[u] * 1e3:7.2f} ms")
