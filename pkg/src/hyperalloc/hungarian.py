"""Linear assignment by the Hungarian method (shortest augmenting paths with potentials)."""

from __future__ import annotations

import numpy as np

__all__ = ["hungarian_assignment"]


def hungarian_assignment(cost, sense: str = "maximize") -> tuple[np.ndarray, float]:
    """Solve a square assignment problem.

    Parameters
    ----------
    cost : array_like, shape (n, n)
        Finite real matrix. Rectangular problems must be padded by the caller.
    sense : {"maximize", "minimize"}

    Returns
    -------
    perm : ndarray of int
        ``perm[i]`` is the column assigned to row ``i``.
    value : float
        ``sum(cost[i, perm[i]])`` accumulated in row order.
    """
    C = np.asarray(cost, dtype=np.float64)
    if C.ndim != 2 or C.shape[0] != C.shape[1]:
        raise ValueError(f"cost matrix must be square, got shape {C.shape}")
    if not np.all(np.isfinite(C)):
        raise ValueError("cost matrix contains non-finite entries")
    if sense not in ("maximize", "minimize"):
        raise ValueError(f"sense must be 'maximize' or 'minimize', got {sense!r}")
    n = C.shape[0]
    if n == 0:
        return np.zeros(0, dtype=np.int64), 0.0
    A = -C if sense == "maximize" else C

    # 1-based arrays; column 0 is a virtual root
    u = np.zeros(n + 1)
    v = np.zeros(n + 1)
    match_col = np.zeros(n + 1, dtype=np.int64)  # row matched to column j
    way = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        match_col[0] = i
        j0 = 0
        minv = np.full(n + 1, np.inf)
        used = np.zeros(n + 1, dtype=bool)
        while True:
            used[j0] = True
            i0 = match_col[j0]
            free = ~used[1:]
            cur = A[i0 - 1] - u[i0] - v[1:]
            better = free & (cur < minv[1:])
            minv[1:][better] = cur[better]
            way[1:][better] = j0
            cand = np.where(free, minv[1:], np.inf)
            j1 = int(np.argmin(cand)) + 1
            delta = cand[j1 - 1]
            u[match_col[used]] += delta
            v[used] -= delta
            minv[1:][free] -= delta
            j0 = j1
            if match_col[j0] == 0:
                break
        while True:
            j1 = way[j0]
            match_col[j0] = match_col[j1]
            j0 = j1
            if j0 == 0:
                break
    perm = np.zeros(n, dtype=np.int64)
    for j in range(1, n + 1):
        perm[match_col[j] - 1] = j - 1
    value = 0.0
    for i in range(n):
        value += C[i, perm[i]]
    return perm, float(value)
