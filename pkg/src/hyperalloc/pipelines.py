"""End-to-end allocators binding scenario instances to the solvers."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .coloring import ViolationReport, greedy_color
from .game import PotentialTrace, new_game, potential, run_to_convergence
from .hungarian import hungarian_assignment
from .matching import greedy_matching, local_search_matching, make_uniform
from .radio import RadioParams
from .scenarios import CachingInstance, CranInstance, D2DInstance, DualConnInstance

__all__ = [
    "AllocationError",
    "Allocation",
    "SumRateReport",
    "ChannelProfile",
    "cran_marginal_rates",
    "cran_iterative_matching",
    "cran_bipartite_baseline",
    "recompute_sum_rate",
    "link_rates",
    "dualconn_allocate",
    "d2d_allocate",
    "caching_allocate",
    "caching_cost",
    "unserved_penalty",
]


class AllocationError(ValueError):
    pass


@dataclass(eq=False)
class Allocation:
    """Per-user assignment; ``-1`` marks an unassigned user.

    ``server`` holds the RRH (CRAN) or provider (caching); ``iteration`` is the
    1-based round in which the user was assigned (0 when unassigned).
    """

    server: np.ndarray
    channel: np.ndarray
    iteration: np.ndarray
    exclusive_servers: bool = True
    weight: np.ndarray | None = None

    @classmethod
    def empty(cls, M: int, exclusive_servers: bool = True) -> "Allocation":
        neg = np.full(M, -1, dtype=np.int64)
        return cls(neg.copy(), neg.copy(), np.zeros(M, dtype=np.int64), exclusive_servers, np.zeros(M))

    @property
    def assigned(self) -> np.ndarray:
        return np.flatnonzero(self.server >= 0)

    @property
    def iterations(self) -> int:
        return int(self.iteration.max(initial=0))

    def upto(self, it: int) -> "Allocation":
        keep = (self.iteration >= 1) & (self.iteration <= it)
        return Allocation(
            np.where(keep, self.server, -1),
            np.where(keep, self.channel, -1),
            np.where(keep, self.iteration, 0),
            self.exclusive_servers,
            None if self.weight is None else np.where(keep, self.weight, 0.0),
        )

    def same_as(self, other: "Allocation") -> bool:
        return (
            np.array_equal(self.server, other.server)
            and np.array_equal(self.channel, other.channel)
            and np.array_equal(self.iteration, other.iteration)
        )


@dataclass
class SumRateReport:
    total_bps: float
    per_user_bps: np.ndarray
    solver_time_s: float = 0.0
    history: list[float] = field(default_factory=list)


@dataclass(eq=False)
class ChannelProfile:
    channels: np.ndarray
    potential: int | None = None
    violations: int | None = None


# -- CRAN ---------------------------------------------------------------------


def _validate(alloc: Allocation, M: int, num_servers: int, K: int) -> None:
    s, c, it = alloc.server, alloc.channel, alloc.iteration
    if not (s.shape == c.shape == it.shape == (M,)):
        raise AllocationError(f"allocation arrays must have length {M}")
    on = s >= 0
    if np.any(on != (c >= 0)) or np.any(on != (it >= 1)):
        raise AllocationError("server, channel and iteration disagree on which users are assigned")
    if np.any(s >= num_servers) or np.any(c >= K):
        raise AllocationError("server or channel index out of range")
    for t in np.unique(it[on]):
        idx = np.flatnonzero(it == t)
        if np.unique(c[idx]).size != idx.size:
            raise AllocationError(f"iteration {t} reuses a channel")
        if alloc.exclusive_servers and np.unique(s[idx]).size != idx.size:
            raise AllocationError(f"iteration {t} reuses a server")


def _shannon(x, B):
    return B * np.log2(1.0 + x)


def _unit_scaled(G):
    # Rates are ~1e8 bps; rescale so the absolute improvement tolerance of
    # the local search stays meaningful and float noise cannot cycle.
    top = float(G.weights.max()) if G.m else 0.0
    return G.with_weights(G.weights / top) if top > 0 else G


def cran_marginal_rates(inst: CranInstance, alloc: Allocation, users, rrhs, channels) -> np.ndarray:
    """Sum-rate change from adding each candidate ``(u, r, k)`` to ``alloc``.

    Counts the candidate's own rate under the current co-channel load plus
    the rate it takes away from the users already on channel ``k``.
    """
    users = np.asarray(users, dtype=np.int64)
    rrhs = np.asarray(rrhs, dtype=np.int64)
    channels = np.asarray(channels, dtype=np.int64)
    B, N0 = inst.params.bandwidth_hz, inst.params.noise_mw
    rx = inst.rx_mw
    out = np.empty(users.size)
    on = alloc.assigned
    for k in np.unique(channels):
        sel = channels == k
        au = on[alloc.channel[on] == k]
        ar = alloc.server[au]
        cu, cr = users[sel], rrhs[sel]
        if au.size == 0:
            out[sel] = _shannon(rx[cu, cr] / N0, B)
            continue
        i_user = rx[:, ar].sum(axis=1)
        s_a = rx[au, ar]
        i_a = rx[au][:, ar].sum(axis=1) - s_a
        cur = _shannon(s_a / (N0 + i_a), B)
        hit = _shannon(s_a[:, None] / (N0 + i_a[:, None] + rx[au]), B) - cur[:, None]
        out[sel] = _shannon(rx[cu, cr] / (N0 + i_user[cu]), B) + hit.sum(axis=0)[cr]
    return out


def recompute_sum_rate(alloc: Allocation, inst) -> SumRateReport:
    """Rates of all assigned users under the complete co-channel interference."""
    if isinstance(inst, CranInstance):
        _validate(alloc, inst.M, inst.N, inst.K)
        gain = inst.rx_mw
        noise = np.full(inst.K, inst.params.noise_mw)
        B = inst.params.bandwidth_hz
    elif isinstance(inst, CachingInstance):
        G = inst.hypergraph
        _validate(alloc, G.part_sizes[0], G.part_sizes[1], G.part_sizes[2])
        gain = inst.signal_mw
        noise = inst.noise_mw
        B = inst.params.bandwidth_hz
    else:
        raise TypeError(f"cannot evaluate sum-rate for {type(inst).__name__}")
    rates = np.zeros(alloc.server.shape[0])
    on = alloc.assigned
    for u in on:
        k = alloc.channel[u]
        others = on[(alloc.channel[on] == k) & (on != u)]
        interference = gain[u, alloc.server[others]].sum()
        rates[u] = _shannon(gain[u, alloc.server[u]] / (noise[k] + interference), B)
    return SumRateReport(float(rates.sum()), rates)


def cran_iterative_matching(
    inst: CranInstance,
    *,
    k_max: int = 3,
    best_improvement: bool = False,
    rrh_exclusive: bool = False,
) -> tuple[Allocation, SumRateReport]:
    """Iterative hypergraph matching for joint RRH association and channel assignment.

    Each iteration matches the remaining hyperedges by greedy start plus claw
    local search, commits the matched users, drops every other edge of those
    users, reweights the survivors by their exact sum-rate gain against
    everything committed so far, and discards edges whose gain is negative.
    It stops when no edge survives. Within an iteration users and channels
    must be disjoint while an RRH may serve several users; with
    ``rrh_exclusive=True`` each RRH also serves at most one user per
    iteration.
    """
    M, N, K = inst.M, inst.N, inst.K
    edges = inst.edge_index
    alloc = Allocation.empty(M, exclusive_servers=rrh_exclusive)
    t0 = time.perf_counter()
    w = inst.standalone_rate(edges[:, 0], edges[:, 1]) if edges.size else np.zeros(0)
    alive = np.ones(edges.shape[0], dtype=bool)
    parts = (0, 1, 2) if rrh_exclusive else (0, 2)
    it = 0
    while alive.any():
        it += 1
        idx = np.flatnonzero(alive)
        G = _unit_scaled(make_uniform((M, N, K), edges[idx], w[idx]))
        found = local_search_matching(
            G,
            greedy_matching(G, exclusive_parts=parts),
            k_max=min(k_max, G.r),
            best_improvement=best_improvement,
            exclusive_parts=parts,
        )
        for e in found.edge_ids:
            u, r, k = edges[idx[e]]
            alloc.server[u], alloc.channel[u], alloc.iteration[u] = r, k, it
            alloc.weight[u] = w[idx[e]]
        alive &= alloc.server[edges[:, 0]] < 0
        idx = np.flatnonzero(alive)
        if idx.size:
            w[idx] = cran_marginal_rates(inst, alloc, edges[idx, 0], edges[idx, 1], edges[idx, 2])
            alive[idx[w[idx] < 0]] = False
    elapsed = time.perf_counter() - t0
    report = recompute_sum_rate(alloc, inst)
    report.solver_time_s = elapsed
    report.history = [recompute_sum_rate(alloc.upto(t), inst).total_bps for t in range(1, it + 1)]
    return alloc, report


def cran_bipartite_baseline(inst: CranInstance) -> tuple[Allocation, SumRateReport]:
    """Nearest-RRH association plus rounds of Hungarian channel assignment.

    Each round matches the still unassigned users to the K channels so that
    the summed marginal rate is maximal; a user is only committed when its
    marginal rate is non-negative. Users that cannot meet the minimum rate
    from their nearest RRH are not admitted. RRH load is not capped.
    """
    M, K = inst.M, inst.K
    alloc = Allocation.empty(M, exclusive_servers=False)
    t0 = time.perf_counter()
    nearest = inst.nearest_rrh()
    eligible = inst.admission[np.arange(M), nearest]
    it = 0
    while True:
        pending = np.flatnonzero(eligible & (alloc.server < 0))
        if pending.size == 0:
            break
        uu = np.repeat(pending, K)
        kk = np.tile(np.arange(K), pending.size)
        gain = cran_marginal_rates(inst, alloc, uu, nearest[uu], kk).reshape(pending.size, K)
        n = max(pending.size, K)
        C = np.zeros((n, n))
        C[: pending.size, :K] = np.maximum(gain, 0.0)
        perm, _ = hungarian_assignment(C, "maximize")
        rows = np.arange(pending.size)
        cols = perm[: pending.size]
        keep = cols < K
        rows, cols = rows[keep], cols[keep]
        keep = gain[rows, cols] >= 0
        rows, cols = rows[keep], cols[keep]
        if rows.size == 0:
            break
        it += 1
        u = pending[rows]
        alloc.server[u], alloc.channel[u], alloc.iteration[u] = nearest[u], cols, it
        alloc.weight[u] = gain[rows, cols]
    elapsed = time.perf_counter() - t0
    report = recompute_sum_rate(alloc, inst)
    report.solver_time_s = elapsed
    report.history = [recompute_sum_rate(alloc.upto(t), inst).total_bps for t in range(1, it + 1)]
    return alloc, report


# -- link scenarios -------------------------------------------------------------


def link_rates(channels, gain_mw: np.ndarray, params: RadioParams) -> np.ndarray:
    """Rate of every link given its channel; ``gain_mw[a, b]`` is a's power at b's receiver."""
    ch = np.asarray(channels)
    same = ch[:, None] == ch[None, :]
    np.fill_diagonal(same, False)
    interference = np.where(same, gain_mw, 0.0).sum(axis=0)
    return _shannon(np.diag(gain_mw) / (params.noise_mw + interference), params.bandwidth_hz)


def dualconn_allocate(inst: DualConnInstance, seed: int | None = None) -> tuple[np.ndarray, ViolationReport, SumRateReport]:
    t0 = time.perf_counter()
    colors, report = greedy_color(inst.coloring, seed)
    elapsed = time.perf_counter() - t0
    rates = link_rates(colors, inst.gain_mw, inst.params)
    return colors, report, SumRateReport(float(rates.sum()), rates, elapsed)


def d2d_allocate(
    inst: D2DInstance,
    num_channels: int,
    mode: str = "best_response",
    seed: int = 0,
    *,
    beta: float = 1.0,
    max_rounds: int = 200,
    rule: str = "softmax",
) -> tuple[ChannelProfile, PotentialTrace, SumRateReport]:
    """Play the channel-selection game from a seeded random start."""
    state = new_game(inst.hypergraph, num_channels, rng_seed=seed)
    t0 = time.perf_counter()
    final, trace = run_to_convergence(state, mode, max_rounds, beta, rule)
    elapsed = time.perf_counter() - t0
    rates = link_rates(final.profile, inst.gain_mw, inst.params)
    profile = ChannelProfile(np.asarray(final.profile).copy(), potential(final))
    return profile, trace, SumRateReport(float(rates.sum()), rates, elapsed)


# -- caching ----------------------------------------------------------------------


def unserved_penalty(inst: CachingInstance) -> float:
    """Time charged per unserved user: more than all edge weights together,
    so serving one more user always beats any saving in transmission time."""
    return 1.0 + float(inst.hypergraph.weights.sum())


def caching_cost(alloc: Allocation, inst: CachingInstance) -> tuple[float, int, float]:
    """``(transmission_time_s, unserved_users, time + penalty * unserved)``."""
    served = alloc.server >= 0
    t = float(alloc.weight[served].sum())
    unserved = int(np.count_nonzero(~served))
    return t, unserved, t + unserved_penalty(inst) * unserved


def caching_allocate(
    inst: CachingInstance, policy: str = "centralized", seed: int = 0, *, k_max: int = 3
) -> tuple[Allocation, SumRateReport]:
    """Pick one (provider, channel) per user; providers and channels are used once.

    ``distributed``: users in a seeded random order each take their fastest
    edge whose provider and channel are still free. ``centralized``: claw
    local search maximizing ``penalty - time`` summed over chosen edges,
    which serves as many users as possible and then minimizes total time.
    """
    G = inst.hypergraph
    U = G.part_sizes[0]
    alloc = Allocation.empty(U)
    t0 = time.perf_counter()
    if policy == "distributed":
        used_p = np.zeros(G.part_sizes[1], dtype=bool)
        used_k = np.zeros(G.part_sizes[2], dtype=bool)
        by_user = np.lexsort((np.arange(G.m), G.weights, G.vertices[:, 0]))
        starts = np.searchsorted(G.vertices[by_user, 0], np.arange(U + 1))
        for u in np.random.default_rng(seed).permutation(U):
            for e in by_user[starts[u] : starts[u + 1]]:
                _, p, k = G.vertices[e]
                if not used_p[p] and not used_k[k]:
                    used_p[p] = used_k[k] = True
                    alloc.server[u], alloc.channel[u], alloc.iteration[u] = p, k, 1
                    alloc.weight[u] = G.weights[e]
                    break
    elif policy == "centralized":
        shifted = _unit_scaled(G.with_weights(unserved_penalty(inst) - G.weights))
        found = local_search_matching(shifted, greedy_matching(shifted), k_max=min(k_max, G.r))
        for e in found.edge_ids:
            u, p, k = G.vertices[e]
            alloc.server[u], alloc.channel[u], alloc.iteration[u] = p, k, 1
            alloc.weight[u] = G.weights[e]
    else:
        raise ValueError(f"unknown caching policy {policy!r}")
    elapsed = time.perf_counter() - t0
    report = recompute_sum_rate(alloc, inst)
    report.solver_time_s = elapsed
    return alloc, report
