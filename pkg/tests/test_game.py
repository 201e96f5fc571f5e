import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperalloc.game import (
    access_probabilities,
    new_game,
    play_round_best_response,
    play_round_stochastic,
    potential,
    run_to_convergence,
    utility,
)
from hyperalloc.hypergraph import build_hypergraph


def naive_adjacent(H, v):
    return {u for e in H.edges if v in e for u in e if u != v}


def naive_potential(H, profile):
    return sum(
        1
        for u, v in itertools.combinations(range(H.n), 2)
        if v in naive_adjacent(H, u) and profile[u] == profile[v]
    )


@st.composite
def games(draw):
    n = draw(st.integers(1, 8))
    fam = draw(st.lists(st.sets(st.integers(0, n - 1), min_size=1, max_size=3), max_size=8))
    K = draw(st.integers(1, 4))
    prof = draw(st.lists(st.integers(0, K - 1), min_size=n, max_size=n))
    return new_game(build_hypergraph(n, fam), K, prof)


def test_utility_examples():
    H = build_hypergraph(5, [[0, 1], [0, 2, 3], [4]])
    s = new_game(H, 2, [1, 1, 1, 1, 0])
    assert utility(s, 0, 1) == -3 and utility(s, 0, 0) == 0
    assert utility(s, 4, 0) == utility(s, 4, 1) == 0
    with pytest.raises(ValueError):
        utility(s, 0, 2)


@given(games())
@settings(max_examples=150, deadline=None)
def test_utility_and_potential_vs_recount(s):
    H = s.hypergraph
    for v in range(H.n):
        for c in range(s.num_channels):
            assert utility(s, v, c) == -sum(s.profile[u] == c for u in naive_adjacent(H, v))
    assert potential(s) == naive_potential(H, s.profile)


@given(games(), st.data())
@settings(max_examples=150, deadline=None)
def test_exact_potential_identity(s, data):
    v = data.draw(st.integers(0, s.n - 1))
    c = data.draw(st.integers(0, s.num_channels - 1))
    prof = s.profile.copy()
    old = int(prof[v])
    prof[v] = c
    t = s.with_profile(prof)
    assert utility(t, v, c) - utility(s, v, old) == -(potential(t) - potential(s))


def test_access_probabilities():
    p = access_probabilities([0, -1])
    want = np.array([1.0, math.exp(-1)]) / (1 + math.exp(-1))
    assert np.allclose(p, want, atol=1e-12)
    assert p[0] == pytest.approx(0.7311, abs=1e-4) and p[1] == pytest.approx(0.2689, abs=1e-4)
    assert np.allclose(access_probabilities([-2, -2, -2]), 1 / 3)
    assert access_probabilities([0, -1e6])[0] == pytest.approx(1.0, abs=1e-12)
    u = np.array([-3.0, 0.0, -1.0, -1.0])
    assert np.allclose(access_probabilities(u, 0.7), access_probabilities(u + 5, 0.7))
    assert abs(access_probabilities(u, 0.3).sum() - 1) < 1e-12
    lin = access_probabilities(u, rule="linear")
    assert np.allclose(lin, [1, 4, 3, 3] / np.sum([1, 4, 3, 3]))
    for bad in (dict(beta=0), dict(rule="x")):
        with pytest.raises(ValueError):
            access_probabilities(u, **bad)
    with pytest.raises(ValueError):
        access_probabilities([])


def test_two_adjacent_players():
    s = new_game(build_hypergraph(2, [[0, 1]]), 2, [0, 0])
    assert potential(s) == 1
    t, improved = play_round_best_response(s)
    assert improved and t.profile.tolist() == [1, 0] and potential(t) == 0
    u, improved = play_round_best_response(t)
    assert not improved and u.profile.tolist() == [1, 0]


def test_triangle_reaches_zero_potential_from_every_start():
    H = build_hypergraph(3, [[0, 1], [1, 2], [0, 2]])
    for prof in itertools.product(range(3), repeat=3):
        final, trace = run_to_convergence(new_game(H, 3, prof))
        assert sorted(final.profile.tolist()) == [0, 1, 2]
        assert trace.potentials[-1] == 0


def test_clique_potential():
    H = build_hypergraph(4, [[0, 1, 2, 3]])
    assert potential(new_game(H, 3, [2, 2, 2, 2])) == 6
    assert potential(new_game(H, 4, [0, 1, 2, 3])) == 0


def test_best_response_bound_and_nash():
    rng = np.random.default_rng(9)
    for i in range(60):
        n = int(rng.integers(2, 15))
        fam = [rng.choice(n, int(rng.integers(2, min(3, n) + 1)), replace=False).tolist() for _ in range(int(rng.integers(1, 20)))]
        K = int(rng.integers(1, 5))
        s = new_game(build_hypergraph(n, fam), K, rng_seed=i)
        p0 = potential(s)
        final, trace = run_to_convergence(s, max_rounds=10_000)
        assert len(trace) - 1 <= p0 * n * K + 1
        assert all(a >= b for a, b in zip(trace.potentials, trace.potentials[1:]))
        for v in range(n):
            cur = utility(final, v, int(final.profile[v]))
            assert all(utility(final, v, c) <= cur for c in range(K))
        if K >= final.max_degree() + 1:
            assert trace.potentials[-1] == 0


def test_stochastic_rounds():
    H = build_hypergraph(5, [[0, 1, 2], [2, 3], [3, 4]])
    s = new_game(H, 1)
    assert play_round_stochastic(s).profile.tolist() == [0] * 5
    s = new_game(H, 3, rng_seed=4)
    a, ta = run_to_convergence(s, "stochastic", 20)
    b, tb = run_to_convergence(s, "stochastic", 20)
    assert np.array_equal(a.profile, b.profile) and ta.potentials == tb.potentials
    assert potential(a) == min(ta.potentials)
    # a very large beta acts as a best response with a unique best channel
    s = new_game(build_hypergraph(2, [[0, 1]]), 2, [0, 0], rng_seed=1)
    t = play_round_stochastic(s, beta=1e3)
    assert potential(t) == 0


def test_errors_and_trace_csv():
    H = build_hypergraph(2, [[0, 1]])
    with pytest.raises(ValueError):
        new_game(H, 0)
    with pytest.raises(ValueError):
        new_game(H, 2, [0, 2])
    with pytest.raises(ValueError):
        run_to_convergence(new_game(H, 2), max_rounds=0)
    with pytest.raises(ValueError):
        run_to_convergence(new_game(H, 2), mode="annealing")
    _, trace = run_to_convergence(new_game(H, 2, [0, 0]))
    assert trace.to_csv() == "round,potential\n0,1\n1,0\n2,0\n"
