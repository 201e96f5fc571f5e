"""Brute-force oracles and the self-check suite behind ``oracle-check``.

Each check draws seeded random instances, solves them with the library and
with an independent exhaustive method, and counts disagreements.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .game import new_game, potential, utility
from .hungarian import hungarian_assignment
from .hypergraph import (
    Hypergraph,
    build_hypergraph,
    format_hypergraph,
    from_incidence_matrix,
    incidence_matrix,
    parse_hypergraph,
)
from .matching import (
    UniformWeightedHypergraph,
    exact_matching,
    format_uniform,
    greedy_matching,
    local_search_matching,
    make_uniform,
    parse_uniform,
)

__all__ = [
    "CheckResult",
    "brute_force_matching",
    "brute_force_assignment",
    "random_uniform",
    "random_hypergraph",
    "run_oracle_suite",
    "DEFAULT_MINIMUMS",
]

DEFAULT_MINIMUMS = {
    "exact_matching": 200,
    "local_search_bounds": 200,
    "hungarian": 200,
    "potential_identity": 100,
    "incidence_roundtrip": 500,
}


def brute_force_matching(G: UniformWeightedHypergraph, exclusive_parts=None) -> tuple[tuple[int, ...], float]:
    """Best matching by enumerating every edge subset.

    Ties go to the lexicographically smallest sorted id tuple.
    """
    parts = range(G.r) if exclusive_parts is None else exclusive_parts
    best: tuple[float, tuple[int, ...]] = (-1.0, ())
    for size in range(G.m + 1):
        for ids in itertools.combinations(range(G.m), size):
            ok = all(
                len({int(G.vertices[e, p]) for e in ids}) == len(ids)
                for p in parts
            )
            if not ok:
                continue
            w = float(sum(G.weights[e] for e in ids))
            if w > best[0] or (w == best[0] and ids < best[1]):
                best = (w, ids)
    return best[1], best[0]


def brute_force_assignment(C: np.ndarray, sense: str = "maximize") -> float:
    n = C.shape[0]
    perms = np.array(list(itertools.permutations(range(n))), dtype=np.int64)
    vals = C[np.arange(n), perms].sum(axis=1)
    return float(vals.max() if sense == "maximize" else vals.min())


def random_uniform(rng: np.random.Generator, m_max: int = 12, r: int = 3, size: int = 4, integer: bool = False) -> UniformWeightedHypergraph:
    m = int(rng.integers(1, m_max + 1))
    V = rng.integers(0, size, (m, r))
    W = rng.integers(1, 10, m).astype(float) if integer else rng.uniform(0.0, 10.0, m)
    return make_uniform((size,) * r, V, W)


def random_hypergraph(rng: np.random.Generator, n_max: int = 10, m_max: int = 12) -> Hypergraph:
    n = int(rng.integers(1, n_max + 1))
    m = int(rng.integers(0, m_max + 1))
    family = []
    for _ in range(m):
        k = int(rng.integers(0, n + 1))
        family.append(rng.choice(n, k, replace=False).tolist())
    return build_hypergraph(n, family)


@dataclass
class CheckResult:
    name: str
    instances: int
    failures: int
    minimum: int

    @property
    def ok(self) -> bool:
        return self.failures == 0 and self.instances >= self.minimum

    def line(self) -> str:
        status = "PASS" if self.ok else "FAIL"
        return f"{status} {self.name}: {self.instances} instances (min {self.minimum}), {self.failures} failures"


def _check_exact(count: int, seed: int, corrupt: bool) -> int:
    rng = np.random.default_rng([seed, 1])
    bad = 0
    for _ in range(count):
        G = random_uniform(rng, m_max=10)
        ids, w = brute_force_matching(G)
        solved = G
        if corrupt:
            # negative control: the solver sees shifted weights, so its reported total drifts
            solved = G.with_weights(G.weights + 1.0)
        got = exact_matching(solved)
        if got.edge_ids != ids or abs(got.total_weight - w) > 1e-9:
            bad += 1
    return bad


def _check_local_search(count: int, seed: int) -> int:
    rng = np.random.default_rng([seed, 2])
    bad = 0
    for _ in range(count):
        G = random_uniform(rng, m_max=12)
        g = greedy_matching(G)
        ls = local_search_matching(G, g)
        opt = exact_matching(G)
        tol = 1e-9 * max(1.0, opt.total_weight)
        if not (ls.total_weight >= g.total_weight - tol and g.total_weight >= opt.total_weight / 3 - tol):
            bad += 1
        if ls.total_weight > opt.total_weight + tol:
            bad += 1
    return bad


def _check_hungarian(count: int, seed: int) -> int:
    rng = np.random.default_rng([seed, 3])
    bad = 0
    for i in range(count):
        if i % 2:
            C = rng.integers(-20, 21, (7, 7)).astype(float)
            tol = 0.0
        else:
            C = rng.normal(size=(7, 7))
            tol = 1e-9
        for sense in ("maximize", "minimize"):
            perm, val = hungarian_assignment(C, sense)
            if sorted(perm.tolist()) != list(range(7)) or abs(val - brute_force_assignment(C, sense)) > tol:
                bad += 1
    return bad


def _check_potential(count: int, seed: int) -> int:
    rng = np.random.default_rng([seed, 4])
    bad = 0
    for i in range(count):
        H = random_hypergraph(rng, n_max=12, m_max=15)
        K = int(rng.integers(2, 5))
        state = new_game(H, K, rng_seed=i)
        for _ in range(10):
            v = int(rng.integers(H.n))
            c = int(rng.integers(K))
            moved = state.with_profile(np.where(np.arange(H.n) == v, c, state.profile))
            du = utility(moved, v, c) - utility(state, v, int(state.profile[v]))
            if du != -(potential(moved) - potential(state)):
                bad += 1
    return bad


def _check_roundtrip(count: int, seed: int) -> int:
    rng = np.random.default_rng([seed, 5])
    bad = 0
    for _ in range(count):
        H = random_hypergraph(rng)
        if from_incidence_matrix(incidence_matrix(H)) != H:
            bad += 1
        if parse_hypergraph(format_hypergraph(H))[0] != H:
            bad += 1
        G = random_uniform(rng)
        if parse_uniform(format_uniform(G)) != G:
            bad += 1
    return bad


def run_oracle_suite(scale: float = 1.0, seed: int = 0, corrupt: bool = False, minimums=None) -> list[CheckResult]:
    """Run every check; ``scale`` multiplies the instance counts.

    With ``corrupt=True`` the exact-matching check feeds the solver
    perturbed weights, which must be reported as a failure.
    """
    mins = dict(DEFAULT_MINIMUMS if minimums is None else minimums)
    n = {k: max(1, int(round(v * scale))) for k, v in DEFAULT_MINIMUMS.items()}
    return [
        CheckResult("exact_matching", n["exact_matching"], _check_exact(n["exact_matching"], seed, corrupt), mins["exact_matching"]),
        CheckResult("local_search_bounds", n["local_search_bounds"], _check_local_search(n["local_search_bounds"], seed), mins["local_search_bounds"]),
        CheckResult("hungarian", n["hungarian"], _check_hungarian(n["hungarian"], seed), mins["hungarian"]),
        CheckResult("potential_identity", n["potential_identity"], _check_potential(n["potential_identity"], seed), mins["potential_identity"]),
        CheckResult("incidence_roundtrip", n["incidence_roundtrip"], _check_roundtrip(n["incidence_roundtrip"], seed), mins["incidence_roundtrip"]),
    ]
