import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperalloc.hypergraph import is_matching
from hyperalloc.matching import (
    MatchingError,
    exact_matching,
    format_uniform,
    greedy_matching,
    local_search_matching,
    make_uniform,
    matching_from_ids,
    parse_uniform,
)


def enumerate_best(G, parts=None):
    parts = range(G.r) if parts is None else parts
    best = 0.0
    for size in range(G.m + 1):
        for ids in itertools.combinations(range(G.m), size):
            if all(len({int(G.vertices[e, p]) for e in ids}) == size for p in parts):
                best = max(best, float(G.weights[list(ids)].sum()))
    return best


def no_improving_claw(G, M, k_max, eps=1e-9, parts=None):
    """Check the local-optimality postcondition by brute force."""
    parts = range(G.r) if parts is None else parts
    chosen = set(M.edge_ids)

    def clash(a, b):
        return any(G.vertices[a, p] == G.vertices[b, p] for p in parts)

    def touches(a, b):
        return any(G.vertices[a, p] == G.vertices[b, p] for p in range(G.r))

    free = [e for e in range(G.m) if e not in chosen]
    for k in range(1, k_max + 1):
        for talons in itertools.combinations(free, k):
            if any(clash(a, b) for a, b in itertools.combinations(talons, 2)):
                continue
            if k > 1 and not any(all(touches(c, t) for t in talons) for c in range(G.m) if c not in talons):
                continue
            lost = sum(G.weights[m] for m in chosen if any(clash(m, t) for t in talons))
            if G.weights[list(talons)].sum() - lost > eps:
                return False
    return True


@st.composite
def uniform_instances(draw, max_m=9):
    r = draw(st.integers(2, 3))
    sizes = draw(st.lists(st.integers(1, 4), min_size=r, max_size=r))
    m = draw(st.integers(0, max_m))
    V = [[draw(st.integers(0, s - 1)) for s in sizes] for _ in range(m)]
    W = [draw(st.floats(0, 10, allow_nan=False)) for _ in range(m)]
    return make_uniform(sizes, np.array(V, dtype=np.int64).reshape(m, r), W)


def test_make_uniform_validation():
    with pytest.raises(MatchingError):
        make_uniform([2], [[0]], [1.0])
    with pytest.raises(MatchingError):
        make_uniform([2, 2], [[0, 2]], [1.0])
    with pytest.raises(MatchingError):
        make_uniform([2, 2], [[0, 1]], [-1.0])
    with pytest.raises(MatchingError):
        make_uniform([2, 2], [[0, 1]], [1.0, 2.0])
    assert make_uniform([2, 2], [], []).m == 0


def test_greedy_examples():
    G = make_uniform([1, 1, 1], [[0, 0, 0]], [5.0])
    assert greedy_matching(G) == matching_from_ids(G, [0])
    assert greedy_matching(G).total_weight == 5.0
    G = make_uniform([1, 2, 2], [[0, 0, 0], [0, 1, 1]], [2.0, 3.0])
    assert greedy_matching(G).edge_ids == (1,)


def test_greedy_is_maximal_and_within_third():
    rng = np.random.default_rng(3)
    for _ in range(150):
        m = int(rng.integers(1, 13))
        G = make_uniform([4, 4, 4], rng.integers(0, 4, (m, 3)), rng.uniform(0, 10, m))
        g = greedy_matching(G)
        assert g.total_weight >= exact_matching(G).total_weight / 3 - 1e-12
        for e in range(G.m):
            if e not in g.edge_ids:
                assert any((G.vertices[e] == G.vertices[f]).any() for f in g.edge_ids)


def test_local_search_swaps_heavy_edge_for_two_lighter():
    G = make_uniform([3, 3, 3], [[0, 0, 0], [0, 1, 1], [1, 0, 2]], [5.0, 3.0, 3.0])
    assert greedy_matching(G).total_weight == 5.0
    ls = local_search_matching(G)
    assert ls.edge_ids == (1, 2) and ls.total_weight == 6.0 == enumerate_best(G)
    assert ls.moves == 1


def test_local_search_fixed_point_and_invalid_init():
    G = make_uniform([2, 2, 2], [[0, 0, 0], [1, 1, 1]], [1.0, 2.0])
    opt = matching_from_ids(G, [0, 1])
    assert local_search_matching(G, opt) == opt
    with pytest.raises(MatchingError):
        local_search_matching(G, [0, 0])
    with pytest.raises(MatchingError):
        local_search_matching(make_uniform([1, 1, 1], [[0, 0, 0], [0, 0, 0]], [1, 1]), [0, 1])
    with pytest.raises(MatchingError):
        local_search_matching(G, k_max=4)


def test_local_search_bounds_on_random_instances():
    rng = np.random.default_rng(4)
    for _ in range(200):
        m = int(rng.integers(1, 13))
        G = make_uniform(rng.integers(1, 5, 3), np.zeros((0, 3)), []) if m == 0 else None
        sizes = rng.integers(1, 5, 3)
        G = make_uniform(sizes, np.stack([rng.integers(0, s, m) for s in sizes], 1), rng.uniform(0, 10, m))
        g = greedy_matching(G)
        ls = local_search_matching(G, g)
        opt = exact_matching(G).total_weight
        assert g.total_weight - 1e-12 <= ls.total_weight <= opt + 1e-9
        assert ls.total_weight >= opt / 3 - 1e-12
        assert is_matching(G.to_hypergraph(), ls.edge_ids)


@given(uniform_instances())
@settings(max_examples=150, deadline=None)
def test_local_search_postcondition(G):
    ls = local_search_matching(G, k_max=min(3, G.r))
    assert no_improving_claw(G, ls, min(3, G.r))


@given(uniform_instances(), st.sampled_from([(0,), (0, 1), (1,)]), st.booleans())
@settings(max_examples=100, deadline=None)
def test_exclusive_parts(G, parts, best):
    g = greedy_matching(G, exclusive_parts=parts)
    ls = local_search_matching(G, g, k_max=min(3, G.r), exclusive_parts=parts, best_improvement=best)
    assert ls.total_weight >= g.total_weight - 1e-12
    assert ls.total_weight <= exact_matching(G, exclusive_parts=parts).total_weight + 1e-9
    assert exact_matching(G, exclusive_parts=parts).total_weight == pytest.approx(enumerate_best(G, parts), abs=1e-9)
    assert no_improving_claw(G, ls, min(3, G.r), parts=parts)


def test_best_improvement_and_move_cap():
    rng = np.random.default_rng(5)
    for _ in range(50):
        m = int(rng.integers(1, 12))
        G = make_uniform([3, 3, 3], rng.integers(0, 3, (m, 3)), rng.uniform(0, 10, m))
        a = local_search_matching(G, best_improvement=True)
        assert no_improving_claw(G, a, 3)
        capped = local_search_matching(G, max_moves=0)
        assert capped == greedy_matching(G)


def test_exact_examples_and_cap():
    G = make_uniform([2, 2], [], [])
    assert exact_matching(G).edge_ids == () and exact_matching(G).total_weight == 0
    G = make_uniform([1, 3], [[0, 0], [0, 1], [0, 2]], [1.0, 4.0, 2.0])
    assert exact_matching(G).edge_ids == (1,)
    # ties go to the lexicographically smallest id set
    G = make_uniform([2, 2], [[0, 0], [0, 1], [1, 1]], [1.0, 2.0, 1.0])
    assert exact_matching(G).edge_ids == (0, 2)
    big = make_uniform([30, 30], [[i, i] for i in range(21)], [1.0] * 21)
    with pytest.raises(MatchingError, match="refuses"):
        exact_matching(big)


def test_exact_vs_enumeration():
    rng = np.random.default_rng(6)
    for _ in range(100):
        m = int(rng.integers(0, 11))
        sizes = rng.integers(1, 5, 3)
        G = make_uniform(sizes, np.stack([rng.integers(0, s, m) for s in sizes], 1).reshape(m, 3), rng.uniform(0, 10, m))
        assert exact_matching(G).total_weight == pytest.approx(enumerate_best(G), abs=1e-9)


@given(uniform_instances())
@settings(max_examples=100, deadline=None)
def test_uniform_text_round_trip(G):
    back = parse_uniform(format_uniform(G))
    assert back == G and back.weights.tobytes() == G.weights.tobytes()


def test_parse_uniform_errors():
    with pytest.raises(MatchingError):
        parse_uniform("")
    with pytest.raises(MatchingError):
        parse_uniform("3 1 1 1 2\n0 0 0 1.0\n")
    with pytest.raises(MatchingError):
        parse_uniform("2 1 1 1\n0 0\n")


@pytest.mark.parametrize("parts", [None, (0, 2)])
def test_pruning_does_not_change_the_search(monkeypatch, parts):
    """The candidate filter and the k<=3 fast path are exact shortcuts."""
    from hyperalloc import matching

    rng = np.random.default_rng(13)
    cases = []
    for _ in range(25):
        m = int(rng.integers(20, 90))
        sizes = (8, 5, 4)
        V = np.stack([rng.integers(0, s, m) for s in sizes], 1)
        cases.append(make_uniform(sizes, V, rng.uniform(0.0, 1.0, m)))
    # starting empty makes the search take many moves
    fast = [local_search_matching(G, [], exclusive_parts=parts) for G in cases]
    assert sum(M.moves for M in fast) > 100
    monkeypatch.setattr(matching._ClawSearch, "_candidates", lambda self, k: None)
    monkeypatch.setattr(matching._ClawSearch, "_small_claws", matching._ClawSearch._generic_claws)
    slow = [local_search_matching(G, [], exclusive_parts=parts) for G in cases]
    for a, b in zip(fast, slow):
        assert a.edge_ids == b.edge_ids and a.moves == b.moves
