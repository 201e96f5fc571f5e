"""Weighted matching on r-partite (r-uniform) hypergraphs.

Solvers:

* :func:`greedy_matching` -- heaviest-first maximal matching.
* :func:`local_search_matching` -- claw-based improvement. A move picks up
  to ``k_max`` pairwise-disjoint unmatched edges (talons) that all meet a
  common edge (the claw center), inserts them and evicts every matched edge
  they collide with. It is accepted when the inserted weight beats the
  evicted weight by more than ``eps``.
* :func:`exact_matching` -- branch and bound, exponential, for checking.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .hypergraph import Hypergraph, build_hypergraph

__all__ = [
    "MatchingError",
    "UniformWeightedHypergraph",
    "Matching",
    "make_uniform",
    "greedy_matching",
    "local_search_matching",
    "exact_matching",
    "matching_from_ids",
    "format_uniform",
    "parse_uniform",
    "EPS",
    "EXACT_EDGE_CAP",
]

EPS = 1e-9
EXACT_EDGE_CAP = 20


class MatchingError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class UniformWeightedHypergraph:
    """Hypergraph whose vertices are split into ``r`` parts.

    ``vertices[e, p]`` is the vertex of edge ``e`` in part ``p`` (a local
    index in ``[0, part_sizes[p])``) and ``weights[e]`` its weight.
    """

    part_sizes: tuple[int, ...]
    vertices: np.ndarray
    weights: np.ndarray

    @property
    def r(self) -> int:
        return len(self.part_sizes)

    @property
    def m(self) -> int:
        return int(self.vertices.shape[0])

    def edge(self, e: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.vertices[e])

    def with_weights(self, weights) -> "UniformWeightedHypergraph":
        return make_uniform(self.part_sizes, self.vertices, weights)

    def subset(self, edge_ids) -> "UniformWeightedHypergraph":
        idx = np.asarray(edge_ids, dtype=np.int64)
        return make_uniform(self.part_sizes, self.vertices[idx], self.weights[idx])

    def to_hypergraph(self) -> Hypergraph:
        """Plain hypergraph with parts laid out consecutively."""
        offsets = np.concatenate([[0], np.cumsum(self.part_sizes)[:-1]]).astype(np.int64)
        family = [(self.vertices[e] + offsets).tolist() for e in range(self.m)]
        return build_hypergraph(int(sum(self.part_sizes)), family)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, UniformWeightedHypergraph):
            return NotImplemented
        return (
            self.part_sizes == other.part_sizes
            and np.array_equal(self.vertices, other.vertices)
            and np.array_equal(self.weights, other.weights)
        )


def make_uniform(part_sizes: Sequence[int], vertices, weights) -> UniformWeightedHypergraph:
    """Validate and freeze a uniform weighted hypergraph."""
    part_sizes = tuple(int(s) for s in part_sizes)
    r = len(part_sizes)
    if r < 2:
        raise MatchingError(f"need at least 2 parts, got {r}")
    if any(s < 0 for s in part_sizes):
        raise MatchingError(f"part sizes must be non-negative: {part_sizes}")
    V = np.asarray(vertices, dtype=np.int64)
    if V.size == 0:
        V = V.reshape(0, r)
    W = np.asarray(weights, dtype=np.float64).reshape(-1)
    if V.ndim != 2 or V.shape[1] != r:
        raise MatchingError(f"vertices must have shape (m, {r}), got {V.shape}")
    if W.shape[0] != V.shape[0]:
        raise MatchingError(f"{V.shape[0]} edges but {W.shape[0]} weights")
    if V.shape[0]:
        bad = (V < 0) | (V >= np.asarray(part_sizes))
        if bad.any():
            e = int(np.argwhere(bad)[0, 0])
            raise MatchingError(f"edge {e} = {V[e].tolist()} has a vertex outside its part")
        if not np.all(np.isfinite(W)) or np.any(W < 0):
            e = int(np.flatnonzero(~np.isfinite(W) | (W < 0))[0])
            raise MatchingError(f"edge {e} has invalid weight {W[e]!r}; weights must be finite and >= 0")
    V = V.copy()
    W = W.copy()
    V.setflags(write=False)
    W.setflags(write=False)
    return UniformWeightedHypergraph(part_sizes, V, W)


@dataclass(frozen=True)
class Matching:
    edge_ids: tuple[int, ...]
    total_weight: float
    moves: int = field(default=0, compare=False)

    def __len__(self) -> int:
        return len(self.edge_ids)


def _exclusive(G: UniformWeightedHypergraph, exclusive_parts) -> tuple[int, ...]:
    if exclusive_parts is None:
        return tuple(range(G.r))
    parts = tuple(sorted({int(p) for p in exclusive_parts}))
    if not parts or parts[0] < 0 or parts[-1] >= G.r:
        raise MatchingError(f"exclusive_parts must be a non-empty subset of 0..{G.r - 1}, got {exclusive_parts}")
    return parts


def _validate_matching(G: UniformWeightedHypergraph, ids: Iterable[int], parts=None) -> tuple[int, ...]:
    parts = _exclusive(G, parts)
    ids = tuple(sorted(int(i) for i in ids))
    if len(set(ids)) != len(ids):
        raise MatchingError(f"repeated edge id in {ids}")
    used = [set() for _ in range(G.r)]
    for e in ids:
        if e < 0 or e >= G.m:
            raise MatchingError(f"edge id {e} outside [0, {G.m})")
        for p in parts:
            v = int(G.vertices[e, p])
            if v in used[p]:
                raise MatchingError(f"edges in {ids} are not disjoint (part {p}, vertex {v})")
            used[p].add(v)
    return ids


def matching_from_ids(G: UniformWeightedHypergraph, ids: Iterable[int], moves: int = 0, *, exclusive_parts=None) -> Matching:
    """Validated :class:`Matching`; edges must be disjoint on ``exclusive_parts`` (default all)."""
    ids = _validate_matching(G, ids, exclusive_parts)
    return Matching(ids, float(sum(G.weights[e] for e in ids)), moves)


def greedy_matching(G: UniformWeightedHypergraph, *, exclusive_parts=None) -> Matching:
    """Take edges by descending weight (ties: lower id), skipping conflicts."""
    parts = _exclusive(G, exclusive_parts)
    order = np.lexsort((np.arange(G.m), -G.weights))
    used = [np.zeros(s, dtype=bool) for s in G.part_sizes]
    chosen = []
    for e in order:
        row = G.vertices[e]
        if any(used[p][row[p]] for p in parts):
            continue
        for p in parts:
            used[p][row[p]] = True
        chosen.append(int(e))
    return matching_from_ids(G, chosen, exclusive_parts=parts)


# -- local search -------------------------------------------------------------


class _ClawSearch:
    """Mutable search state for :func:`local_search_matching`.

    A claw center is adjacent to its talons when they share a vertex in any
    part; talons must be pairwise disjoint, and collisions with the matching
    counted, on the exclusive parts only.
    """

    def __init__(self, G: UniformWeightedHypergraph, init: Sequence[int], k_max: int, eps: float, parts=None):
        self.G = G
        self.parts = _exclusive(G, parts)
        self.V = G.vertices
        self.w = G.weights
        self.k_max = k_max
        self.eps = eps
        self.m = G.m
        self.r = G.r
        self.owner = [np.full(s, -1, dtype=np.int64) for s in G.part_sizes]
        self.in_match = np.zeros(self.m, dtype=bool)
        for e in init:
            self._insert(e)
        self._by_vertex = []
        for p, s in enumerate(G.part_sizes):
            order = np.argsort(self.V[:, p], kind="stable")
            bounds = np.searchsorted(self.V[order, p], np.arange(s + 1))
            self._by_vertex.append((order, bounds))
        self._nbr_cache: dict[int, np.ndarray] = {}
        self.moves = 0
        self._tables = None
        # (k, talons, their collisions) seen without an improving claw; the
        # outcome depends on nothing else, so it survives unrelated moves
        self._dead: set = set()
        self._cand: dict[int, tuple[int, np.ndarray | None]] = {}
        self._refresh()

    def _insert(self, e: int) -> None:
        self.in_match[e] = True
        for p in self.parts:
            self.owner[p][self.V[e, p]] = e

    def _remove(self, e: int) -> None:
        self.in_match[e] = False
        for p in self.parts:
            self.owner[p][self.V[e, p]] = -1

    def _refresh(self) -> None:
        # conf[e]: distinct matched edges colliding with e (-1 padded)
        conf = np.stack([self.owner[p][self.V[:, p]] for p in self.parts], axis=1)
        for j in range(1, conf.shape[1]):
            dup = (conf[:, j : j + 1] == conf[:, :j]).any(axis=1)
            conf[dup, j] = -1
        self.conf = conf
        self.conf_weight = np.where(conf >= 0, self.w[np.maximum(conf, 0)], 0.0).sum(axis=1)

    def neighbors(self, c: int) -> np.ndarray:
        nb = self._nbr_cache.get(c)
        if nb is None:
            parts = []
            for p in range(self.r):
                order, bounds = self._by_vertex[p]
                v = self.V[c, p]
                parts.append(order[bounds[v] : bounds[v + 1]])
            nb = np.unique(np.concatenate(parts))
            nb = nb[nb != c]
            self._nbr_cache[c] = nb
        return nb

    def apply(self, talons: Sequence[int]) -> None:
        evict = set()
        for t in talons:
            evict.update(int(x) for x in self.conf[t] if x >= 0)
        for e in evict:
            self._remove(e)
        for t in talons:
            self._insert(int(t))
        self.moves += 1
        self._refresh()

    # single-edge moves (k = 1): swap one unmatched edge for its collisions
    def single_moves(self) -> np.ndarray:
        gain = self.w - self.conf_weight
        gain[self.in_match] = -np.inf
        return gain

    def claw_gains(self, c: int, k: int) -> tuple[np.ndarray, np.ndarray]:
        """All improving k-claws at center ``c`` as (talon tuples, gains).

        Tuples come out in lexicographic order of talon ids.
        """
        nb = self.neighbors(c)
        nb = nb[~self.in_match[nb]]
        cand = self._candidates(k)
        if cand is not None:
            nb = nb[cand[nb]]
        empty = (np.zeros((0, k), dtype=np.int64), np.zeros(0))
        if nb.size < k:
            return empty
        key = (k, nb.tobytes(), self.conf[nb].tobytes())
        if key in self._dead:
            return empty
        if k in (2, 3):
            talons = self._small_claws(nb, k)
        else:
            talons = self._generic_claws(nb, k)
        gains = self._exact_gain(talons) if talons.shape[0] else np.zeros(0)
        good = gains > self.eps
        if not good.any():
            self._dead.add(key)
            return empty
        return talons[good], gains[good]

    def _candidates(self, k: int) -> np.ndarray | None:
        """Mask of unmatched edges that can sit in some improving k-claw.

        Edges are grouped by which matched edge they hit on each exclusive
        part. Two talons hitting the same matched edge on the same part share
        a vertex, so such groups never combine. For every other multiset of
        k groups the heaviest members bound the claw weight, and the claw
        loses the union of the hit edges. ``None`` means the tuples got too many
        to list and every edge stays in play.
        """
        hit = self._cand.get(k)
        if hit is not None and hit[0] == self.moves:
            return hit[1]
        free = np.flatnonzero(~self.in_match)
        rows = np.stack([self.owner[p][self.V[free, p]] for p in self.parts], axis=1)
        keys, grp = np.unique(rows, axis=0, return_inverse=True)
        grp = grp.ravel()
        g = keys.shape[0]
        if g == 0:
            self._cand[k] = (self.moves, None)
            return None
        matched = np.flatnonzero(self.in_match)
        col = np.full(self.m, matched.size, dtype=np.int64)
        col[matched] = np.arange(matched.size)
        B = np.zeros((g, matched.size + 1), dtype=bool)
        B[np.repeat(np.arange(g), keys.shape[1]), np.where(keys >= 0, col[keys], matched.size).ravel()] = True
        wm = np.append(self.w[matched], 0.0)
        # top[i, j]: j-th heaviest weight in group i
        w = self.w[free]
        top = np.full((g, k), -np.inf)
        order = np.lexsort((-w, grp))
        rank = np.arange(free.size) - np.searchsorted(grp[order], grp[order])
        keep = rank < k
        top[grp[order][keep], rank[keep]] = w[order][keep]
        # two groups combine unless they hit the same matched edge on a part;
        # one group combines with itself only when it hits nothing
        hits = keys >= 0
        compat = ~((keys[:, None, :] == keys[None, :, :]) & hits[:, None, :]).any(axis=2)
        # grow group tuples slot by slot; slots not yet filled are credited
        # with the heaviest member anywhere, so no profitable tuple is dropped
        heavy = float(top[:, 0].max())
        Bw = B @ wm
        BwT = (B * wm).T
        combo = np.arange(g)[:, None]
        tw = top[:, :1].copy()
        U = B.copy()
        allowed = compat.copy()
        for level in range(1, k):
            # best case for each extension: union weight is |U| + |B| - |U & B|
            gain = tw.sum(axis=1)[:, None] + top[None, :, 0] - (U @ wm)[:, None] - Bw[None, :] + U @ BwT
            last = combo[:, -1]
            rank = (combo == last[:, None]).sum(axis=1)
            rows = np.arange(combo.shape[0])
            gain[rows, last] += top[last, np.minimum(rank, k - 1)] - top[last, 0]
            ext = allowed & (np.arange(g)[None, :] >= last[:, None]) & (gain + (k - level - 1) * heavy > self.eps)
            t, l = np.nonzero(ext)
            if t.size > 5_000_000:
                self._cand[k] = (self.moves, None)
                return None
            rank = (combo[t] == l[:, None]).sum(axis=1)
            combo = np.concatenate([combo[t], l[:, None]], axis=1)
            tw = np.concatenate([tw[t], top[l, np.minimum(rank, k - 1)][:, None]], axis=1)
            U = U[t] | B[l]
            allowed = allowed[t] & compat[l]
        bound = tw.sum(axis=1)
        union = U @ wm
        slack = union - bound + self.eps
        live = np.isfinite(bound) & (slack < 0)
        need = np.full(g, np.inf)
        if live.any():
            # a member joins if it beats the lightest pick of its group there
            low = np.empty(combo.shape)
            for j in range(k):
                low[:, j] = np.where(combo == combo[:, j : j + 1], tw, np.inf).min(axis=1)
            np.minimum.at(need, combo[live].ravel(), (slack[live, None] + low[live]).ravel())
        mask = np.zeros(self.m, dtype=bool)
        mask[free] = w > need[grp]
        self._cand[k] = (self.moves, mask)
        return mask

    def _exact_gain(self, talons: np.ndarray) -> np.ndarray:
        conf = np.sort(self.conf[talons].reshape(talons.shape[0], -1), axis=1)
        fresh = np.ones_like(conf, dtype=bool)
        fresh[:, 1:] = conf[:, 1:] != conf[:, :-1]
        fresh &= conf >= 0
        lost = np.where(fresh, self.w[np.maximum(conf, 0)], 0.0).sum(axis=1)
        return self.w[talons].sum(axis=1) - lost

    def _disjoint(self, nb: np.ndarray) -> np.ndarray:
        Vn = self.V[nb]
        D = np.ones((nb.size, nb.size), dtype=bool)
        for p in self.parts:
            D &= Vn[:, p, None] != Vn[None, :, p]
        return D

    def _pair_tables(self, nb: np.ndarray):
        # Cached per (neighborhood, matching state); k = 2 and k = 3 share it.
        key = (nb.tobytes(), self.moves)
        if self._tables is not None and self._tables[0] == key:
            return self._tables[1]
        n = nb.size
        matched = np.flatnonzero(self.in_match)
        col = np.full(self.m, -1, dtype=np.int64)
        col[matched] = np.arange(matched.size)
        cols = self.conf[nb].reshape(-1)
        hit = cols >= 0
        A = np.zeros((n, matched.size))
        A[np.repeat(np.arange(n), self.conf.shape[1])[hit], col[cols[hit]]] = 1.0
        shared = (A * self.w[matched]) @ A.T
        slack = self.conf_weight[nb] - self.w[nb]
        D = self._disjoint(nb)
        pair = shared - slack[:, None] - slack[None, :]
        upper = np.triu(D, 1)
        tables = (shared, slack, D, pair, upper)
        self._tables = (key, tables)
        return tables

    def _small_claws(self, nb: np.ndarray, k: int) -> np.ndarray:
        # shared[a, b]: weight of matched edges colliding with both a and b.
        # With slack(t) = conf_weight(t) - w(t), a pair gains exactly
        # pair[a, b] = shared[a, b] - slack(a) - slack(b), and a triple gains
        # at most pair[b, c] + shared[a, b] + shared[a, c] - slack(a) for each
        # choice of a. So with pmax the best pair gain here, every talon a of
        # an improving triple needs shared[a, b] + shared[a, c] > thr(a) =
        # slack(a) + eps - pmax.
        shared, slack, D, pair, upper = self._pair_tables(nb)
        if k == 2:
            a, b = np.nonzero(upper & (pair > self.eps))
            return nb[np.stack([a, b], axis=1)]
        empty = np.zeros((0, 3), dtype=np.int64)
        pmax = pair[upper].max(initial=-np.inf)
        if not np.isfinite(pmax):
            return empty
        thr = slack + self.eps - pmax
        S = np.where(D, shared, -np.inf)
        top = -np.partition(-S, 1, axis=1)[:, :2] if nb.size > 2 else S
        live = top.sum(axis=1) > thr
        if live.sum() < 3:
            return empty
        idx = np.flatnonzero(live)
        nb, shared, D, thr = nb[idx], shared[np.ix_(idx, idx)], D[np.ix_(idx, idx)], thr[idx]
        upper = np.triu(D, 1)
        best = np.where(D, shared, -np.inf).max(axis=1)
        ok = upper & (shared + best[:, None] > thr[:, None]) & (shared + best[None, :] > thr[None, :])
        a, b = np.nonzero(ok)
        if a.size == 0:
            return empty
        sab = shared[a, b][:, None]
        ok = D[a] & D[b] & (np.arange(nb.size)[None, :] > b[:, None])
        ok &= sab + shared[a] > thr[a][:, None]
        ok &= sab + shared[b] > thr[b][:, None]
        ok &= shared[a] + shared[b] > thr[None, :]
        i, c = np.nonzero(ok)
        return nb[np.stack([a[i], b[i], c], axis=1)]

    def _generic_claws(self, nb: np.ndarray, k: int) -> np.ndarray:
        # Each matched edge collides with at most min(k, r) talons, so
        # gain(T) <= sum over T of w(t) - conf_weight(t) / min(k, r).
        bound = self.w[nb] - self.conf_weight[nb] / min(k, self.r)
        top = np.sort(bound)[::-1][: k - 1].sum()
        keep = bound + top > self.eps
        nb, bound = nb[keep], bound[keep]
        if nb.size < k:
            return np.zeros((0, k), dtype=np.int64)
        D = self._disjoint(nb)
        tuples = np.arange(nb.size)[:, None]
        for _ in range(k - 1):
            ok = np.arange(nb.size)[None, :] > tuples[:, -1][:, None]
            for j in range(tuples.shape[1]):
                ok &= D[tuples[:, j]]
            rows, cols = np.nonzero(ok)
            tuples = np.concatenate([tuples[rows], cols[:, None]], axis=1)
        tuples = tuples[bound[tuples].sum(axis=1) > self.eps]
        return nb[tuples]


def local_search_matching(
    G: UniformWeightedHypergraph,
    init: Matching | Iterable[int] | None = None,
    k_max: int | None = None,
    *,
    eps: float = EPS,
    best_improvement: bool = False,
    max_moves: int | None = None,
    exclusive_parts: Sequence[int] | None = None,
) -> Matching:
    """Improve a matching with claw moves until none is profitable.

    Parameters
    ----------
    G : UniformWeightedHypergraph
    init : Matching or iterable of edge ids, optional
        Starting matching; defaults to :func:`greedy_matching`.
    k_max : int, optional
        Largest claw examined, at most ``G.r``. Defaults to ``min(G.r, 3)``.
    eps : float
        A move must raise the total weight by more than this.
    best_improvement : bool
        Apply the best move of each round instead of the first one found.
    max_moves : int, optional
        Safety cap on accepted moves.
    exclusive_parts : sequence of int, optional
        Parts on which matched edges (and claw talons) must be disjoint
        (default: all). A claw center still reaches every edge that shares
        a vertex with it in any part.

    Returns
    -------
    Matching
        ``moves`` counts the accepted moves.

    Notes
    -----
    Single-edge moves (one talon, including plain additions of a disjoint
    edge) are exhausted first, in ascending edge id. Claws of size
    ``2..k_max`` are then scanned round-robin over centers in ascending id,
    ``k`` ascending, talon tuples in lexicographic order. After any accepted
    claw the scan returns to single-edge moves and resumes at the same
    center; it stops after a full sweep of centers without a move.
    """
    parts = _exclusive(G, exclusive_parts)
    if init is None:
        init = greedy_matching(G, exclusive_parts=parts)
    ids = init.edge_ids if isinstance(init, Matching) else init
    ids = _validate_matching(G, ids, parts)
    if k_max is None:
        k_max = min(G.r, 3)
    if k_max < 1 or k_max > G.r:
        raise MatchingError(f"k_max={k_max} outside [1, r={G.r}]")
    S = _ClawSearch(G, ids, k_max, eps, parts)
    limit = math.inf if max_moves is None else max_moves

    def singles() -> bool:
        gain = S.single_moves()
        if best_improvement:
            t = int(np.argmax(gain)) if gain.size else -1
        else:
            hits = np.flatnonzero(gain > eps)
            t = int(hits[0]) if hits.size else -1
        if t >= 0 and gain[t] > eps:
            S.apply([t])
            return True
        return False

    if best_improvement:
        while S.moves < limit:
            if singles():
                continue
            best = None
            for c in range(S.m):
                for k in range(2, k_max + 1):
                    talons, gains = S.claw_gains(c, k)
                    if gains.size:
                        i = int(np.argmax(gains))
                        if best is None or gains[i] > best[0]:
                            best = (gains[i], talons[i])
            if best is None:
                break
            S.apply(best[1].tolist())
    else:
        while S.moves < limit and singles():
            pass
        c, idle = 0, 0
        while S.m and idle < S.m and S.moves < limit:
            moved = False
            for k in range(2, k_max + 1):
                talons, _ = S.claw_gains(c, k)
                if talons.shape[0]:
                    S.apply(talons[0].tolist())
                    moved = True
                    break
            if moved:
                while S.moves < limit and singles():
                    pass
                idle = 0
            else:
                idle += 1
                c = (c + 1) % S.m
    return matching_from_ids(G, np.flatnonzero(S.in_match), S.moves, exclusive_parts=parts)


# -- exact --------------------------------------------------------------------


def exact_matching(G: UniformWeightedHypergraph, cap: int = EXACT_EDGE_CAP, *, exclusive_parts=None) -> Matching:
    """Maximum-weight matching by branch and bound.

    Among optimal matchings the lexicographically smallest sorted id tuple
    is returned. Refuses instances with more than ``cap`` edges.
    """
    if G.m > cap:
        raise MatchingError(f"exact_matching refuses {G.m} edges (cap {cap})")
    parts = _exclusive(G, exclusive_parts)
    m = G.m
    V = G.vertices.tolist()
    w = G.weights.tolist()
    clash = [[any(V[a][p] == V[b][p] for p in parts) for b in range(m)] for a in range(m)]
    best_w = -1.0
    best_ids: tuple[int, ...] = ()
    chosen: list[int] = []

    def bound(i: int) -> float:
        return sum(w[j] for j in range(i, m) if not any(clash[j][c] for c in chosen))

    def visit(i: int, cur: float) -> None:
        nonlocal best_w, best_ids
        if i == m:
            ids = tuple(chosen)
            if cur > best_w or (cur == best_w and ids < best_ids):
                best_w, best_ids = cur, ids
            return
        if cur + bound(i) < best_w:
            return
        if not any(clash[i][c] for c in chosen):
            chosen.append(i)
            visit(i + 1, cur + w[i])
            chosen.pop()
        visit(i + 1, cur)

    visit(0, 0.0)
    return matching_from_ids(G, best_ids, exclusive_parts=parts)


# -- text format --------------------------------------------------------------


def format_uniform(G: UniformWeightedHypergraph) -> str:
    """Header ``r s_1 .. s_r m`` then ``v_1 .. v_r weight`` per edge."""
    lines = [" ".join(str(x) for x in (G.r, *G.part_sizes, G.m))]
    for e in range(G.m):
        lines.append(" ".join([*(str(int(v)) for v in G.vertices[e]), repr(float(G.weights[e]))]))
    return "\n".join(lines) + "\n"


def parse_uniform(text: str) -> UniformWeightedHypergraph:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    if not lines:
        raise MatchingError("empty uniform-instance file")
    try:
        head = [int(x) for x in lines[0].split()]
    except ValueError as exc:
        raise MatchingError(f"bad header {lines[0]!r}") from exc
    if not head or len(head) != head[0] + 2:
        raise MatchingError(f"header must read 'r s_1 .. s_r m', got {lines[0]!r}")
    r, sizes, m = head[0], head[1:-1], head[-1]
    if len(lines) != m + 1:
        raise MatchingError(f"header announces {m} edges, file has {len(lines) - 1}")
    verts, weights = [], []
    for j, line in enumerate(lines[1:]):
        tok = line.split()
        if len(tok) != r + 1:
            raise MatchingError(f"edge {j}: expected {r} vertices and a weight, got {line!r}")
        try:
            verts.append([int(x) for x in tok[:r]])
            weights.append(float(tok[r]))
        except ValueError as exc:
            raise MatchingError(f"edge {j}: bad line {line!r}") from exc
    return make_uniform(sizes, np.asarray(verts, dtype=np.int64).reshape(m, r), weights)
