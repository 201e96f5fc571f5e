import itertools

import numpy as np
import pytest

from hyperalloc.hungarian import hungarian_assignment


def brute(C, sense):
    n = C.shape[0]
    vals = [sum(C[i, p[i]] for i in range(n)) for p in itertools.permutations(range(n))]
    return max(vals) if sense == "maximize" else min(vals)


def test_identity_and_trivial_sizes():
    perm, val = hungarian_assignment(np.eye(4))
    assert perm.tolist() == [0, 1, 2, 3] and val == 4.0
    perm, val = hungarian_assignment([[3.5]], "minimize")
    assert perm.tolist() == [0] and val == 3.5
    perm, val = hungarian_assignment(np.zeros((0, 0)))
    assert perm.size == 0 and val == 0.0


def test_errors():
    with pytest.raises(ValueError, match="square"):
        hungarian_assignment(np.zeros((2, 3)))
    with pytest.raises(ValueError, match="non-finite"):
        hungarian_assignment([[0.0, np.inf], [1.0, 2.0]])
    with pytest.raises(ValueError):
        hungarian_assignment(np.eye(2), "best")


@pytest.mark.parametrize("n", [2, 3, 5, 6])
def test_random_vs_permutation_enumeration(n):
    rng = np.random.default_rng(n)
    for i in range(40):
        C = rng.integers(-9, 10, (n, n)).astype(float) if i % 2 else rng.normal(size=(n, n))
        for sense in ("maximize", "minimize"):
            perm, val = hungarian_assignment(C, sense)
            assert sorted(perm.tolist()) == list(range(n))
            assert val == C[np.arange(n), perm].sum()
            assert val == pytest.approx(brute(C, sense), abs=1e-9)


def test_ties_and_degenerate_matrices():
    perm, val = hungarian_assignment(np.ones((5, 5)))
    assert sorted(perm.tolist()) == list(range(5)) and val == 5.0
    C = np.zeros((4, 4))
    C[:, 0] = 10
    assert hungarian_assignment(C)[1] == 10.0
