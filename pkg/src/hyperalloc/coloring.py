"""Channel assignment as non-monochromatic hypergraph coloring.

Vertices are links, colors are channels. An edge with two or more vertices
is violated when all of its vertices share one color. Hard pairs (the two
links of one dual-connectivity user) must always differ.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .hypergraph import Hypergraph, HypergraphError, format_hypergraph, parse_hypergraph

__all__ = [
    "ColoringError",
    "ColoringInstance",
    "ViolationReport",
    "make_coloring_instance",
    "check_coloring",
    "greedy_color",
    "format_coloring_instance",
    "parse_coloring_instance",
]


class ColoringError(ValueError):
    pass


@dataclass(frozen=True)
class ColoringInstance:
    hypergraph: Hypergraph
    num_colors: int
    hard_pairs: tuple[tuple[int, int], ...] = ()

    @property
    def n(self) -> int:
        return self.hypergraph.vertex_count


def make_coloring_instance(H: Hypergraph, num_colors: int, hard_pairs=()) -> ColoringInstance:
    if num_colors < 1:
        raise ColoringError(f"num_colors must be >= 1, got {num_colors}")
    pairs = []
    two_sets = {e for e in H.edges if len(e) == 2}
    for a, b in hard_pairs:
        a, b = int(a), int(b)
        if a == b or not (0 <= a < H.n and 0 <= b < H.n):
            raise ColoringError(f"invalid hard pair ({a}, {b}) for {H.n} vertices")
        if frozenset((a, b)) not in two_sets:
            raise ColoringError(f"hard pair ({a}, {b}) is not also a 2-vertex hyperedge")
        pairs.append((min(a, b), max(a, b)))
    return ColoringInstance(H, int(num_colors), tuple(pairs))


@dataclass
class ViolationReport:
    monochromatic_edges: list[int] = field(default_factory=list)
    hard_pair_violations: list[tuple[int, int]] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.monochromatic_edges)

    @property
    def ok(self) -> bool:
        return not self.monochromatic_edges and not self.hard_pair_violations


def _as_coloring(inst: ColoringInstance, coloring) -> np.ndarray:
    c = np.asarray(coloring)
    if c.shape != (inst.n,):
        raise ColoringError(f"coloring must assign all {inst.n} vertices, got shape {c.shape}")
    if c.size and (not np.issubdtype(c.dtype, np.integer) or c.min() < 0 or c.max() >= inst.num_colors):
        raise ColoringError(f"colors must be integers in [0, {inst.num_colors})")
    return c.astype(np.int64)


def check_coloring(inst: ColoringInstance, coloring) -> ViolationReport:
    c = _as_coloring(inst, coloring)
    mono = []
    for j, e in enumerate(inst.hypergraph.edges):
        if len(e) >= 2:
            cols = c[list(e)]
            if np.all(cols == cols[0]):
                mono.append(j)
    bad_pairs = [(a, b) for a, b in inst.hard_pairs if c[a] == c[b]]
    return ViolationReport(mono, bad_pairs)


def greedy_color(inst: ColoringInstance, seed: int | None = None) -> tuple[np.ndarray, ViolationReport]:
    """Most-constrained-first greedy coloring.

    Vertices go in descending edge degree; each takes the color that closes
    the fewest monochromatic edges, never a color already held by a hard-pair
    partner (unless every color is), lowest color on ties. Equal-degree
    vertices are ordered by id, or shuffled by ``seed`` when one is given.
    """
    H = inst.hypergraph
    n, K = H.n, inst.num_colors
    incident: list[list[int]] = [[] for _ in range(n)]
    for j, e in enumerate(H.edges):
        for v in e:
            incident[v].append(j)
    degree = np.array([len(x) for x in incident], dtype=np.int64)
    tiebreak = np.arange(n) if seed is None else np.random.default_rng(seed).permutation(n)
    order = np.lexsort((tiebreak, -degree))

    partners: list[list[int]] = [[] for _ in range(n)]
    for a, b in inst.hard_pairs:
        partners[a].append(b)
        partners[b].append(a)

    remaining = np.array([len(e) for e in H.edges], dtype=np.int64)
    # -1: nothing colored yet, -2: already two colors, else the shared color
    shared = np.full(H.m, -1, dtype=np.int64)
    color = np.full(n, -1, dtype=np.int64)
    for v in order:
        cost = np.zeros(K)
        for j in incident[v]:
            if remaining[j] == 1 and shared[j] >= 0:
                cost[shared[j]] += 1
        for u in partners[v]:
            if color[u] >= 0:
                cost[color[u]] = np.inf
        c = int(np.argmin(cost))
        color[v] = c
        for j in incident[v]:
            remaining[j] -= 1
            if shared[j] == -1:
                shared[j] = c
            elif shared[j] != c:
                shared[j] = -2
    return color, check_coloring(inst, color)


def format_coloring_instance(inst: ColoringInstance) -> str:
    """Hypergraph text with header ``n m K h`` and ``h`` hard-pair lines appended."""
    body = format_hypergraph(inst.hypergraph, (inst.num_colors, len(inst.hard_pairs)))
    return body + "".join(f"{a} {b}\n" for a, b in inst.hard_pairs)


def parse_coloring_instance(text: str) -> ColoringInstance:
    try:
        H, (K, h), rest = parse_hypergraph(text, header_fields=4)
    except HypergraphError as exc:
        raise ColoringError(str(exc)) from exc
    if len(rest) != h:
        raise ColoringError(f"header announces {h} hard pairs, file has {len(rest)}")
    pairs = []
    for line in rest:
        tok = line.split()
        if len(tok) != 2:
            raise ColoringError(f"bad hard-pair line {line!r}")
        pairs.append((int(tok[0]), int(tok[1])))
    return make_coloring_instance(H, K, pairs)
