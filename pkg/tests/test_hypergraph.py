import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperalloc.hypergraph import (
    HypergraphError,
    adjacency_lists,
    adjacent_vertices,
    build_hypergraph,
    enumerate_claws,
    format_hypergraph,
    from_incidence_matrix,
    incidence_matrix,
    is_covering,
    is_matching,
    parse_hypergraph,
    representative_graph,
)


@st.composite
def hypergraphs(draw, max_n=8, max_m=8):
    n = draw(st.integers(0, max_n))
    m = draw(st.integers(0, max_m))
    fam = [draw(st.sets(st.integers(0, n - 1), max_size=n)) if n else set() for _ in range(m)]
    return build_hypergraph(n, fam)


def test_build_singleton_and_range_error():
    H = build_hypergraph(1, [[0]])
    assert H.n == 1 and H.m == 1 and is_covering(H)
    with pytest.raises(HypergraphError, match="vertex 3"):
        build_hypergraph(3, [[0, 3]])
    with pytest.raises(HypergraphError):
        build_hypergraph(3, [[1, 1]])


def test_build_keeps_order_duplicates_and_empties():
    H = build_hypergraph(3, [[2, 0], [], [0, 2]])
    assert H.edges == (frozenset({0, 2}), frozenset(), frozenset({0, 2}))
    assert not is_covering(H)


def test_incidence_empty_and_full_edges():
    H = build_hypergraph(4, [[0, 1], [], [0, 1, 2, 3]])
    M = incidence_matrix(H)
    assert M.shape == (4, 3)
    assert not M[:, 1].any()
    assert M[:, 2].all()


def test_incidence_column_sums_match_cardinalities():
    rng = np.random.default_rng(0)
    for _ in range(50):
        fam = [rng.choice(6, int(rng.integers(0, 7)), replace=False).tolist() for _ in range(4)]
        M = incidence_matrix(build_hypergraph(6, fam))
        assert M.sum(axis=0).tolist() == [len(e) for e in fam]
        assert M.sum(axis=1).tolist() == [sum(v in e for e in fam) for v in range(6)]


def test_from_incidence_examples():
    assert from_incidence_matrix(np.eye(2, dtype=int)).edges == (frozenset({0}), frozenset({1}))
    H = from_incidence_matrix(np.zeros((3, 2), dtype=int))
    assert H.n == 3 and H.edges == (frozenset(), frozenset())
    with pytest.raises(HypergraphError):
        from_incidence_matrix([[0, 2]])


def test_incidence_round_trip_random_matrices():
    rng = np.random.default_rng(1)
    for _ in range(100):
        M = (rng.random((int(rng.integers(0, 9)), int(rng.integers(0, 9)))) < 0.5).astype(np.uint8)
        assert np.array_equal(incidence_matrix(from_incidence_matrix(M)), M)


@given(hypergraphs())
@settings(max_examples=200, deadline=None)
def test_round_trips_property(H):
    assert from_incidence_matrix(incidence_matrix(H)) == H
    assert parse_hypergraph(format_hypergraph(H))[0] == H


def test_adjacent_vertices_examples():
    H = build_hypergraph(3, [[0, 1], [1, 2]])
    assert adjacent_vertices(H, 1) == {0, 2}
    assert adjacent_vertices(build_hypergraph(3, [[0, 1]]), 2) == set()
    with pytest.raises(HypergraphError):
        adjacent_vertices(H, 3)


def test_adjacent_counts_shared_neighbor_once():
    H = build_hypergraph(4, [[0, 1], [0, 1, 2], [1, 0, 3]])
    naive = []
    for e in H.edges:
        if 0 in e:
            naive.extend(u for u in e if u != 0)
    assert naive.count(1) == 3
    assert adjacent_vertices(H, 0) == set(naive) == {1, 2, 3}


@given(hypergraphs())
@settings(max_examples=100, deadline=None)
def test_adjacency_lists_match_per_vertex_queries(H):
    lists = adjacency_lists(H)
    for v in range(H.n):
        assert lists[v] == sorted(adjacent_vertices(H, v))
        for u in lists[v]:
            assert v in lists[u]


def test_representative_graph_examples():
    assert representative_graph(build_hypergraph(4, [[0, 1], [2, 3]])).edge_pairs() == []
    L = representative_graph(build_hypergraph(4, [[0, 1], [1, 2], [2, 3]]))
    assert L.edge_pairs() == [(0, 1), (1, 2)]
    L = representative_graph(build_hypergraph(2, [[0, 1], [], [1]]))
    assert L.neighbors[1] == frozenset()


@given(hypergraphs())
@settings(max_examples=100, deadline=None)
def test_representative_graph_vs_pairwise_intersection(H):
    L = representative_graph(H)
    assert L.node_count == H.m
    for a, b in itertools.product(range(H.m), repeat=2):
        want = a != b and bool(H.edges[a] & H.edges[b])
        assert L.adjacent(a, b) == want


def test_claws_star_and_clique():
    # center 0 = {0,1,2}, talons {0,3},{1,4},{2,5} pairwise disjoint
    star = representative_graph(build_hypergraph(6, [[0, 1, 2], [0, 3], [1, 4], [2, 5]]))
    claws = list(enumerate_claws(star, 0, 2))
    brute = [c for c in itertools.combinations(sorted(star.neighbors[0]), 2) if not star.adjacent(*c)]
    assert [c.talons for c in claws] == brute == [(1, 2), (1, 3), (2, 3)]
    assert [c.talons for c in enumerate_claws(star, 0, 1)] == [(1,), (2,), (3,)]
    clique = representative_graph(build_hypergraph(3, [[0, 1, 2], [0, 1], [1, 2], [0, 1, 2]]))
    assert list(enumerate_claws(clique, 0, 2)) == []
    with pytest.raises(HypergraphError):
        list(enumerate_claws(star, 9, 2))
    with pytest.raises(HypergraphError):
        list(enumerate_claws(star, 0, 4))


def test_is_matching_examples_and_oracle():
    H = build_hypergraph(4, [[0, 1], [1, 2], [3]])
    assert is_matching(H, [0]) and not is_matching(H, [0, 1]) and is_matching(H, [0, 2])
    rng = np.random.default_rng(2)
    for _ in range(100):
        fam = [rng.choice(8, int(rng.integers(0, 4)), replace=False).tolist() for _ in range(6)]
        H = build_hypergraph(8, fam)
        ids = [j for j in range(6) if rng.random() < 0.5]
        want = all(not (set(fam[a]) & set(fam[b])) for a, b in itertools.combinations(ids, 2))
        assert is_matching(H, ids) == want


def test_parse_errors():
    with pytest.raises(HypergraphError):
        parse_hypergraph("")
    with pytest.raises(HypergraphError):
        parse_hypergraph("3 2\n0 1\n")
    with pytest.raises(HypergraphError):
        parse_hypergraph("3 1\n0 x\n")
