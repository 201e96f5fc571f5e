import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hyperalloc.coloring import (
    ColoringError,
    check_coloring,
    format_coloring_instance,
    greedy_color,
    make_coloring_instance,
    parse_coloring_instance,
)
from hyperalloc.hypergraph import build_hypergraph


def naive_report(H, colors, pairs):
    mono = [j for j, e in enumerate(H.edges) if len(e) >= 2 and len({int(colors[v]) for v in e}) == 1]
    return mono, [(a, b) for a, b in pairs if colors[a] == colors[b]]


@st.composite
def instances(draw):
    n = draw(st.integers(1, 9))
    fam = draw(st.lists(st.sets(st.integers(0, n - 1), max_size=4), max_size=10))
    K = draw(st.integers(1, 4))
    colors = draw(st.lists(st.integers(0, K - 1), min_size=n, max_size=n))
    return build_hypergraph(n, fam), K, np.array(colors)


def test_check_examples():
    inst = make_coloring_instance(build_hypergraph(3, [[0, 1], [0, 1, 2], [2]]), 3)
    rep = check_coloring(inst, [2, 2, 1])
    assert rep.monochromatic_edges == [0] and rep.count == 1
    rep = check_coloring(inst, [0, 0, 1])
    assert rep.monochromatic_edges == [0]
    assert check_coloring(inst, [0, 1, 1]).ok


def test_check_rejects_partial_or_out_of_range():
    inst = make_coloring_instance(build_hypergraph(2, [[0, 1]]), 2)
    with pytest.raises(ColoringError):
        check_coloring(inst, [0])
    with pytest.raises(ColoringError):
        check_coloring(inst, [0, 2])
    with pytest.raises(ColoringError):
        check_coloring(inst, [0, -1])


def test_instance_validation():
    H = build_hypergraph(3, [[0, 1]])
    with pytest.raises(ColoringError):
        make_coloring_instance(H, 0)
    with pytest.raises(ColoringError, match="not also"):
        make_coloring_instance(H, 2, [(1, 2)])
    with pytest.raises(ColoringError):
        make_coloring_instance(H, 2, [(0, 0)])
    assert make_coloring_instance(H, 2, [(1, 0)]).hard_pairs == ((0, 1),)


@given(instances())
@settings(max_examples=200, deadline=None)
def test_check_vs_naive_scan(data):
    H, K, colors = data
    rep = check_coloring(make_coloring_instance(H, K), colors)
    assert rep.monochromatic_edges == naive_report(H, colors, [])[0]


def test_greedy_examples():
    inst = make_coloring_instance(build_hypergraph(2, [[0, 1]]), 2, [(0, 1)])
    c, rep = greedy_color(inst)
    assert c[0] != c[1] and rep.ok
    inst = make_coloring_instance(build_hypergraph(3, [[0, 1, 2]]), 1)
    c, rep = greedy_color(inst)
    assert c.tolist() == [0, 0, 0] and rep.monochromatic_edges == [0]


def test_greedy_report_matches_recheck_and_is_deterministic():
    rng = np.random.default_rng(7)
    for i in range(100):
        n = int(rng.integers(2, 12))
        fam = [rng.choice(n, int(rng.integers(2, min(4, n) + 1)), replace=False).tolist() for _ in range(int(rng.integers(0, 12)))]
        inst = make_coloring_instance(build_hypergraph(n, fam), int(rng.integers(1, 4)))
        for seed in (None, i):
            c, rep = greedy_color(inst, seed)
            assert rep == check_coloring(inst, c)
            assert np.array_equal(c, greedy_color(inst, seed)[0])


def test_greedy_never_breaks_hard_pairs_with_two_colors():
    rng = np.random.default_rng(8)
    for _ in range(200):
        users = int(rng.integers(1, 6))
        n = 2 * users
        pairs = [(2 * i, 2 * i + 1) for i in range(users)]
        fam = [rng.choice(n, int(rng.integers(2, min(3, n) + 1)), replace=False).tolist() for _ in range(int(rng.integers(0, 10)))]
        inst = make_coloring_instance(build_hypergraph(n, fam + pairs), int(rng.integers(2, 4)), pairs)
        _, rep = greedy_color(inst, int(rng.integers(100)))
        assert rep.hard_pair_violations == []


def test_text_round_trip_and_errors():
    H = build_hypergraph(4, [[0, 1], [1, 2, 3], [2, 3]])
    inst = make_coloring_instance(H, 3, [(2, 3)])
    text = format_coloring_instance(inst)
    assert text.splitlines()[0].split() == ["4", "3", "3", "1"]
    assert parse_coloring_instance(text) == inst
    with pytest.raises(ColoringError):
        parse_coloring_instance(text + "0 1\n")
    with pytest.raises(ColoringError):
        parse_coloring_instance("2 1 2 0\n0 5\n")
