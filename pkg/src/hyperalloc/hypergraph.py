"""General hypergraphs: incidence matrices, adjacency, line graphs and claws.

A hypergraph here is a vertex count ``n`` plus an ordered family of vertex
subsets. Edge ids are positions in that family, so duplicated and empty
edges are legal and keep their own ids.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

__all__ = [
    "HypergraphError",
    "Hypergraph",
    "RepresentativeGraph",
    "Claw",
    "build_hypergraph",
    "incidence_matrix",
    "from_incidence_matrix",
    "adjacent_vertices",
    "adjacency_lists",
    "representative_graph",
    "enumerate_claws",
    "is_matching",
    "is_covering",
    "format_hypergraph",
    "parse_hypergraph",
    "DEFAULT_MAX_CLAW",
]

DEFAULT_MAX_CLAW = 3


class HypergraphError(ValueError):
    """Raised for malformed hypergraphs, matrices or text dumps."""


@dataclass(frozen=True)
class Hypergraph:
    vertex_count: int
    edges: tuple[frozenset[int], ...]

    @property
    def n(self) -> int:
        return self.vertex_count

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for e in self.edges if v in e)

    def sorted_edge(self, j: int) -> tuple[int, ...]:
        return tuple(sorted(self.edges[j]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.vertex_count == other.vertex_count and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.vertex_count, self.edges))


def build_hypergraph(vertex_count: int, edge_family: Iterable[Iterable[int]]) -> Hypergraph:
    """Build a hypergraph, keeping edge order, duplicates and empty edges.

    Raises
    ------
    HypergraphError
        If ``vertex_count`` is negative, or an edge lists a vertex outside
        ``[0, vertex_count)`` or lists the same vertex twice.
    """
    if vertex_count < 0:
        raise HypergraphError(f"vertex_count must be non-negative, got {vertex_count}")
    edges = []
    for j, members in enumerate(edge_family):
        members = [int(v) for v in members]
        for v in members:
            if v < 0 or v >= vertex_count:
                raise HypergraphError(
                    f"edge {j} contains vertex {v}, outside [0, {vertex_count})"
                )
        fs = frozenset(members)
        if len(fs) != len(members):
            raise HypergraphError(f"edge {j} lists a vertex more than once: {members}")
        edges.append(fs)
    return Hypergraph(int(vertex_count), tuple(edges))


def is_covering(H: Hypergraph) -> bool:
    """True when every vertex lies in at least one edge."""
    covered: set[int] = set()
    for e in H.edges:
        covered |= e
    return len(covered) == H.vertex_count


def incidence_matrix(H: Hypergraph) -> np.ndarray:
    """Return the ``n x m`` 0/1 vertex-edge incidence matrix (dtype uint8)."""
    M = np.zeros((H.vertex_count, H.m), dtype=np.uint8)
    for j, e in enumerate(H.edges):
        if e:
            M[list(e), j] = 1
    return M


def from_incidence_matrix(M) -> Hypergraph:
    M = np.asarray(M)
    if M.ndim != 2:
        raise HypergraphError(f"incidence matrix must be 2-D, got shape {M.shape}")
    if M.size and not np.all((M == 0) | (M == 1)):
        raise HypergraphError("incidence matrix entries must be 0 or 1")
    n, m = M.shape
    return Hypergraph(n, tuple(frozenset(np.flatnonzero(M[:, j]).tolist()) for j in range(m)))


def adjacent_vertices(H: Hypergraph, v: int) -> set[int]:
    """Vertices sharing at least one edge with ``v`` (``v`` itself excluded)."""
    if v < 0 or v >= H.vertex_count:
        raise HypergraphError(f"vertex {v} outside [0, {H.vertex_count})")
    out: set[int] = set()
    for e in H.edges:
        if v in e:
            out |= e
    out.discard(v)
    return out


def adjacency_lists(H: Hypergraph) -> list[list[int]]:
    """Sorted adjacency list for every vertex, computed in one pass."""
    adj: list[set[int]] = [set() for _ in range(H.vertex_count)]
    for e in H.edges:
        for v in e:
            adj[v] |= e
    for v, s in enumerate(adj):
        s.discard(v)
    return [sorted(s) for s in adj]


@dataclass(frozen=True)
class RepresentativeGraph:
    """Line graph of a hypergraph: one node per edge, adjacent iff they intersect."""

    node_count: int
    neighbors: tuple[frozenset[int], ...]

    def adjacent(self, a: int, b: int) -> bool:
        return b in self.neighbors[a]

    def edge_pairs(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.node_count) for b in sorted(self.neighbors[a]) if a < b]


def representative_graph(H: Hypergraph) -> RepresentativeGraph:
    by_vertex: list[list[int]] = [[] for _ in range(H.vertex_count)]
    for j, e in enumerate(H.edges):
        for v in e:
            by_vertex[v].append(j)
    nbrs: list[set[int]] = [set() for _ in range(H.m)]
    for ids in by_vertex:
        for j in ids:
            nbrs[j].update(ids)
    for j, s in enumerate(nbrs):
        s.discard(j)
    return RepresentativeGraph(H.m, tuple(frozenset(s) for s in nbrs))


@dataclass(frozen=True)
class Claw:
    center: int
    talons: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.talons)


def enumerate_claws(
    L: RepresentativeGraph, center: int, k: int, max_k: int = DEFAULT_MAX_CLAW
) -> Iterator[Claw]:
    """Yield every k-claw centred at ``center``, talons in ascending-id order.

    Talons are k neighbours of ``center`` that are pairwise non-adjacent in ``L``.
    """
    if center < 0 or center >= L.node_count:
        raise HypergraphError(f"claw center {center} outside [0, {L.node_count})")
    if k < 1 or k > max_k:
        raise HypergraphError(f"claw size k={k} outside [1, {max_k}]")
    nbrs = sorted(L.neighbors[center])

    def extend(chosen: list[int], start: int) -> Iterator[Claw]:
        if len(chosen) == k:
            yield Claw(center, tuple(chosen))
            return
        for i in range(start, len(nbrs)):
            t = nbrs[i]
            if all(t not in L.neighbors[c] for c in chosen):
                chosen.append(t)
                yield from extend(chosen, i + 1)
                chosen.pop()

    yield from extend([], 0)


def is_matching(H: Hypergraph, edge_ids: Iterable[int]) -> bool:
    """True iff the selected edges are pairwise vertex-disjoint."""
    seen: set[int] = set()
    for j in edge_ids:
        e = H.edges[j]
        if seen & e:
            return False
        seen |= e
    return True


# -- text interchange ---------------------------------------------------------


def format_hypergraph(H: Hypergraph, header_extra: Sequence[int] = ()) -> str:
    """Serialize as ``n m`` then one line of sorted vertex ids per edge."""
    head = " ".join(str(x) for x in (H.vertex_count, H.m, *header_extra))
    lines = [head]
    lines.extend(" ".join(map(str, H.sorted_edge(j))) for j in range(H.m))
    return "\n".join(lines) + "\n"


def _split_lines(text: str) -> list[str]:
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def parse_hypergraph(text: str, header_fields: int = 2) -> tuple[Hypergraph, list[int], list[str]]:
    """Parse the hypergraph text format.

    Returns the hypergraph, any header integers beyond ``n m``, and the
    unconsumed trailing lines (used by format extensions).
    """
    lines = _split_lines(text)
    if not lines:
        raise HypergraphError("empty hypergraph file")
    try:
        head = [int(x) for x in lines[0].split()]
    except ValueError as exc:
        raise HypergraphError(f"bad header line {lines[0]!r}") from exc
    if len(head) != header_fields:
        raise HypergraphError(f"expected {header_fields} header fields, got {lines[0]!r}")
    n, m = head[0], head[1]
    if len(lines) < 1 + m:
        raise HypergraphError(f"header announces {m} edges but only {len(lines) - 1} lines follow")
    family = []
    for j, line in enumerate(lines[1 : 1 + m]):
        try:
            family.append([int(x) for x in line.split()])
        except ValueError as exc:
            raise HypergraphError(f"edge {j}: bad line {line!r}") from exc
    return build_hypergraph(n, family), head[2:], lines[1 + m :]
