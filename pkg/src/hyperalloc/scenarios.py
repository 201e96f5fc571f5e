"""Synthetic HUDN instances and the hyperedge rules for each densification scheme.

All generators are pure functions of ``(sizes, seed, params)``. Downlink is
assumed throughout: transmitters are RRHs, SAPs, the macro BS or D2D
transmitters, receivers are user devices.
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field

import numpy as np

from .coloring import ColoringInstance, make_coloring_instance
from .hypergraph import Hypergraph, build_hypergraph
from .matching import UniformWeightedHypergraph, make_uniform
from .radio import RadioParams, dbm_to_mw, pathloss_db, rate_bps

__all__ = [
    "CranGeometry",
    "CranInstance",
    "generate_cran_geometry",
    "build_cran_instance",
    "LinkGeometry",
    "DualConnInstance",
    "generate_dualconn_geometry",
    "build_dualconn_instance",
    "D2DInstance",
    "generate_d2d_geometry",
    "build_d2d_instance",
    "ContentCatalog",
    "CachingGeometry",
    "CachingInstance",
    "generate_caching_scenario",
    "build_caching_instance",
    "minimal_interference_sets",
    "distances",
]


def distances(a, b) -> np.ndarray:
    a = np.asarray(a, dtype=np.float64).reshape(-1, 2)
    b = np.asarray(b, dtype=np.float64).reshape(-1, 2)
    return np.linalg.norm(a[:, None, :] - b[None, :, :], axis=2)


def _gain_mw(power_dbm, d, params: RadioParams) -> np.ndarray:
    return dbm_to_mw(np.asarray(power_dbm, dtype=np.float64) - pathloss_db(d, params))


# -- CRAN ---------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CranGeometry:
    area: float
    users: np.ndarray
    rrhs: np.ndarray
    seed: int | None = None

    @property
    def M(self) -> int:
        return len(self.users)

    @property
    def N(self) -> int:
        return len(self.rrhs)


def generate_cran_geometry(M: int, N: int, seed: int, area: float = 500.0) -> CranGeometry:
    """Users and RRHs dropped uniformly in an ``area`` x ``area`` square."""
    rng = np.random.default_rng([seed, M, N])
    users = rng.uniform(0.0, area, (M, 2))
    rrhs = rng.uniform(0.0, area, (N, 2))
    return CranGeometry(float(area), users, rrhs, seed)


@dataclass(eq=False)
class CranInstance:
    """Joint RRH association and channel assignment.

    ``rx_mw[u, r]`` is the power user ``u`` receives from RRH ``r``; it is
    both the useful signal when ``r`` serves ``u`` and the interference when
    ``r`` serves someone else on ``u``'s channel.
    """

    geometry: CranGeometry
    params: RadioParams
    K: int
    rx_mw: np.ndarray
    admission: np.ndarray
    edge_index: np.ndarray  # (m, 3) rows (user, rrh, channel)
    degenerate: bool = False

    @property
    def M(self) -> int:
        return self.geometry.M

    @property
    def N(self) -> int:
        return self.geometry.N

    def standalone_rate(self, u=None, r=None):
        s = self.rx_mw / self.params.noise_mw
        if u is not None:
            s = s[u, r]
        return rate_bps(s, self.params.bandwidth_hz)

    def nearest_rrh(self) -> np.ndarray:
        return np.argmin(distances(self.geometry.users, self.geometry.rrhs), axis=1)


def build_cran_instance(
    geometry: CranGeometry, params: RadioParams, num_channels: int
) -> tuple[CranInstance, UniformWeightedHypergraph]:
    """3-uniform hypergraph over (users, RRHs, channels).

    Edge ``(u, r, k)`` exists iff ``u`` gets at least ``min_rate_bps`` from
    ``r`` with the channel to itself; its weight is that standalone rate.
    """
    M, N, K = geometry.M, geometry.N, int(num_channels)
    if M < 1 or N < 1 or K < 1:
        raise ValueError(f"need M, N, K >= 1, got {M}, {N}, {K}")
    rx = _gain_mw(params.rrh_power_dbm, distances(geometry.users, geometry.rrhs), params)
    standalone = rate_bps(rx / params.noise_mw, params.bandwidth_hz)
    admission = standalone >= params.min_rate_bps
    us, rs = np.nonzero(admission)
    edges = np.stack(
        [np.repeat(us, K), np.repeat(rs, K), np.tile(np.arange(K), us.size)], axis=1
    ).astype(np.int64).reshape(-1, 3)
    weights = standalone[edges[:, 0], edges[:, 1]] if edges.size else np.zeros(0)
    degenerate = not admission.any()
    if degenerate:
        warnings.warn("no user meets the minimum rate; CRAN instance has no hyperedges", RuntimeWarning)
    inst = CranInstance(geometry, params, K, rx, admission, edges, degenerate)
    return inst, make_uniform((M, N, K), edges, weights)


# -- interference hyperedges ----------------------------------------------------


def minimal_interference_sets(
    interference_mw: np.ndarray,
    threshold_mw: float,
    max_set_size: int,
    exclude=None,
) -> list[tuple[int, ...]]:
    """Minimal harmful interferer sets, each returned together with its victim.

    ``interference_mw[a, b]`` is the power link ``a`` injects at the receiver
    of link ``b``. For victim ``v`` an interferer set ``S`` qualifies when its
    summed power exceeds the threshold while no proper subset does, and
    ``|S| + 1 <= max_set_size``. Powers are positive, so a set is minimal iff
    dropping its weakest member falls back to or below the threshold.
    ``exclude[v]`` optionally lists links never counted against ``v``.
    Duplicates across victims are merged; output is sorted by (size, ids).
    """
    I = np.asarray(interference_mw, dtype=np.float64)
    L = I.shape[0]
    found: set[tuple[int, ...]] = set()
    for v in range(L):
        skip = {v} | set(exclude[v] if exclude is not None else ())
        cand = [a for a in range(L) if a not in skip]
        strong = [a for a in cand if I[a, v] > threshold_mw]
        weak = [a for a in cand if I[a, v] <= threshold_mw]
        for a in strong:
            found.add(tuple(sorted((a, v))))
        weak.sort(key=lambda a: -I[a, v])
        pw = np.array([I[a, v] for a in weak])
        for s in range(2, max_set_size):
            if len(weak) < s:
                break
            if pw[:s].sum() <= threshold_mw:
                continue
            for combo in itertools.combinations(range(len(weak)), s):
                vals = pw[list(combo)]
                total = vals.sum()
                if total > threshold_mw and total - vals.min() <= threshold_mw:
                    found.add(tuple(sorted([weak[i] for i in combo] + [v])))
    return sorted(found, key=lambda t: (len(t), t))


# -- dual connectivity ---------------------------------------------------------


@dataclass(frozen=True, eq=False)
class LinkGeometry:
    """Point-to-point links: transmitter and receiver positions plus tx power."""

    area: float
    tx: np.ndarray
    rx: np.ndarray
    power_dbm: np.ndarray
    seed: int | None = None

    @property
    def L(self) -> int:
        return len(self.tx)

    def cross_gain_mw(self, params: RadioParams) -> np.ndarray:
        """``G[a, b]``: power from link a's transmitter at link b's receiver."""
        d = distances(self.tx, self.rx)
        return _gain_mw(self.power_dbm[:, None], d, params)


def generate_dualconn_geometry(U: int, S: int, seed: int, area: float = 500.0, params: RadioParams = RadioParams()) -> LinkGeometry:
    """``U`` users, ``S`` SAPs and a central macro BS.

    Link ``2i`` is user ``i``'s primary (macro) link, ``2i + 1`` its
    secondary link from the nearest SAP.
    """
    rng = np.random.default_rng([seed, U, S, 2])
    users = rng.uniform(0.0, area, (U, 2))
    saps = rng.uniform(0.0, area, (S, 2))
    macro = np.array([area / 2, area / 2])
    nearest = np.argmin(distances(users, saps), axis=1)
    tx = np.empty((2 * U, 2))
    tx[0::2] = macro
    tx[1::2] = saps[nearest]
    rx = np.repeat(users, 2, axis=0)
    power = np.empty(2 * U)
    power[0::2] = params.macro_power_dbm
    power[1::2] = params.rrh_power_dbm
    return LinkGeometry(float(area), tx, rx, power, seed)


@dataclass(eq=False)
class DualConnInstance:
    geometry: LinkGeometry
    params: RadioParams
    coloring: ColoringInstance
    gain_mw: np.ndarray

    @property
    def hypergraph(self) -> Hypergraph:
        return self.coloring.hypergraph


def build_dualconn_instance(geometry: LinkGeometry, params: RadioParams, num_channels: int) -> DualConnInstance:
    """Links become vertices; harmful interferer sets and same-user pairs become edges.

    A user's own two links are not scored as interferers of each other; the
    pair is instead added as a 2-vertex edge and a hard pair.
    """
    L = geometry.L
    if L % 2:
        raise ValueError("dual connectivity needs a primary and a secondary link per user")
    G = geometry.cross_gain_mw(params)
    partner = [[v ^ 1] for v in range(L)]
    family = minimal_interference_sets(
        G, float(dbm_to_mw(params.interference_threshold_dbm)), params.max_set_size, exclude=partner
    )
    hard = [(2 * i, 2 * i + 1) for i in range(L // 2)]
    H = build_hypergraph(L, [*family, *hard])
    return DualConnInstance(geometry, params, make_coloring_instance(H, num_channels, hard), G)


# -- D2D ------------------------------------------------------------------------


def generate_d2d_geometry(
    L: int, seed: int, area: float = 500.0, max_distance: float = 50.0, params: RadioParams = RadioParams()
) -> LinkGeometry:
    """``L`` D2D pairs; each receiver sits within ``max_distance`` of its transmitter."""
    rng = np.random.default_rng([seed, L, 3])
    tx = rng.uniform(0.0, area, (L, 2))
    rx = np.empty_like(tx)
    for i in range(L):
        while True:
            rad = rng.uniform(1.0, max_distance)
            ang = rng.uniform(0.0, 2 * np.pi)
            p = tx[i] + rad * np.array([np.cos(ang), np.sin(ang)])
            if np.all((p >= 0) & (p <= area)):
                rx[i] = p
                break
    return LinkGeometry(float(area), tx, rx, np.full(L, params.d2d_power_dbm), seed)


@dataclass(eq=False)
class D2DInstance:
    geometry: LinkGeometry
    params: RadioParams
    hypergraph: Hypergraph
    gain_mw: np.ndarray


def build_d2d_instance(geometry: LinkGeometry, params: RadioParams) -> D2DInstance:
    G = geometry.cross_gain_mw(params)
    family = minimal_interference_sets(G, float(dbm_to_mw(params.d2d_threshold_dbm)), params.max_set_size)
    return D2DInstance(geometry, params, build_hypergraph(geometry.L, family), G)


# -- proactive caching ----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ContentCatalog:
    length_bits: np.ndarray
    sinr_min_db: np.ndarray
    sap_cache: tuple[frozenset[int], ...]
    user_cache: tuple[frozenset[int], ...]
    requests: np.ndarray

    @property
    def size(self) -> int:
        return len(self.length_bits)


@dataclass(frozen=True, eq=False)
class CachingGeometry:
    area: float
    saps: np.ndarray
    users: np.ndarray
    channel_background_dbm: np.ndarray
    seed: int | None = None


def generate_caching_scenario(
    U: int,
    S: int,
    K: int,
    num_contents: int = 8,
    seed: int = 0,
    area: float = 200.0,
    cache_size: int = 2,
    zipf: float = 0.8,
) -> tuple[CachingGeometry, ContentCatalog]:
    """Random SAP/user drop with Zipf-popular requests and random caches.

    Every channel carries a fixed background interference level (standing in
    for macro-tier traffic), so SINR and rate depend on the channel.
    """
    rng = np.random.default_rng([seed, U, S, K, 4])
    saps = rng.uniform(0.0, area, (S, 2))
    users = rng.uniform(0.0, area, (U, 2))
    background = rng.uniform(-110.0, -95.0, K)
    popularity = 1.0 / np.arange(1, num_contents + 1) ** zipf
    popularity /= popularity.sum()
    lengths = rng.integers(1, 21, num_contents).astype(np.float64) * 1e6
    sinr_min = rng.choice([0.0, 5.0, 10.0], num_contents)
    requests = rng.choice(num_contents, U, p=popularity)
    cs = min(cache_size, num_contents)
    sap_cache = tuple(frozenset(rng.choice(num_contents, cs, replace=False, p=popularity).tolist()) for _ in range(S))
    user_cache = tuple(
        frozenset(rng.choice(num_contents, cs, replace=False, p=popularity).tolist()) if rng.random() < 0.5 else frozenset()
        for _ in range(U)
    )
    geom = CachingGeometry(float(area), saps, users, background, seed)
    cat = ContentCatalog(lengths, sinr_min, sap_cache, user_cache, requests.astype(np.int64))
    return geom, cat


@dataclass(eq=False)
class CachingInstance:
    """Users x providers x channels. Providers ``0..S-1`` are SAPs, then one
    virtual vertex per caching user (``caching_users[j]`` is provider ``S + j``)."""

    geometry: CachingGeometry
    catalog: ContentCatalog
    params: RadioParams
    hypergraph: UniformWeightedHypergraph
    provider_tx: np.ndarray
    provider_power_dbm: np.ndarray
    caching_users: np.ndarray
    signal_mw: np.ndarray  # (U, P) power of provider p at user u
    noise_mw: np.ndarray  # (K,) noise plus channel background
    sinr: np.ndarray  # (U, P, K) standalone SINR
    unservable: tuple[int, ...] = field(default=())

    @property
    def num_saps(self) -> int:
        return len(self.geometry.saps)

    def is_virtual(self, provider: int) -> bool:
        return provider >= self.num_saps


def build_caching_instance(geometry: CachingGeometry, params: RadioParams, catalog: ContentCatalog) -> CachingInstance:
    """Edge ``(u, p, k)`` iff ``p`` caches ``u``'s request and the SINR on ``k``
    meets that content's requirement. Weight: transmission time in seconds."""
    U, S, K = len(geometry.users), len(geometry.saps), len(geometry.channel_background_dbm)
    if len(catalog.requests) != U or len(catalog.user_cache) != U:
        raise ValueError("catalog must list a request and a cache for every user")
    if np.any((catalog.requests < 0) | (catalog.requests >= catalog.size)):
        raise ValueError("request for a content outside the catalog")
    caching_users = np.array([u for u in range(U) if catalog.user_cache[u]], dtype=np.int64)
    provider_tx = np.concatenate([geometry.saps, geometry.users[caching_users]]).reshape(-1, 2)
    power = np.concatenate([np.full(S, params.rrh_power_dbm), np.full(caching_users.size, params.d2d_power_dbm)])
    caches = list(_provider_caches(catalog, caching_users))
    P = len(caches)
    signal = _gain_mw(power[None, :], distances(geometry.users, provider_tx), params)  # (U, P)
    noise = params.noise_mw + dbm_to_mw(geometry.channel_background_dbm)  # (K,)
    sinr = signal[:, :, None] / noise[None, None, :]
    rows, weights, unservable = [], [], []
    for u in range(U):
        c = int(catalog.requests[u])
        need = float(dbm_to_mw(catalog.sinr_min_db[c]))
        has = False
        for p in range(P):
            if c not in caches[p] or (p >= S and caching_users[p - S] == u):
                continue
            has = True
            for k in range(K):
                if sinr[u, p, k] >= need:
                    rows.append((u, p, k))
                    weights.append(catalog.length_bits[c] / rate_bps(sinr[u, p, k], params.bandwidth_hz))
        if not has:
            unservable.append(u)
    G = make_uniform((U, P, K), np.asarray(rows, dtype=np.int64).reshape(-1, 3), weights)
    return CachingInstance(
        geometry, catalog, params, G, provider_tx, power, caching_users, signal, noise, sinr, tuple(unservable)
    )


def _provider_caches(catalog: ContentCatalog, caching_users: np.ndarray):
    yield from catalog.sap_cache
    for u in caching_users:
        yield catalog.user_cache[u]
