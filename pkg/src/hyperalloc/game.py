"""Distributed channel selection as a game on a hypergraph.

A player's utility on a channel is minus the number of adjacent players
(sharing some edge with it) on that channel. The number of adjacent pairs
sharing a channel is an exact potential: a unilateral switch changes the
switcher's utility by exactly minus the change in that count.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace

import numpy as np

from .hypergraph import Hypergraph, adjacency_lists

__all__ = [
    "ChannelGameState",
    "PotentialTrace",
    "new_game",
    "utility",
    "access_probabilities",
    "play_round_stochastic",
    "play_round_best_response",
    "potential",
    "run_to_convergence",
]


@dataclass(frozen=True, eq=False)
class ChannelGameState:
    hypergraph: Hypergraph
    num_channels: int
    profile: np.ndarray
    rng_seed: int = 0
    round: int = 0
    adjacency: tuple[np.ndarray, ...] = field(default=(), repr=False)
    pairs: tuple[np.ndarray, np.ndarray] = field(default=(), repr=False)

    @property
    def n(self) -> int:
        return self.hypergraph.vertex_count

    def with_profile(self, profile, advance: int = 0) -> "ChannelGameState":
        p = np.asarray(profile, dtype=np.int64).copy()
        p.setflags(write=False)
        return replace(self, profile=p, round=self.round + advance)

    def max_degree(self) -> int:
        return max((a.size for a in self.adjacency), default=0)


def new_game(H: Hypergraph, num_channels: int, profile=None, rng_seed: int = 0) -> ChannelGameState:
    """Create a game state; without ``profile`` channels are drawn from ``rng_seed``."""
    if num_channels < 1:
        raise ValueError(f"num_channels must be >= 1, got {num_channels}")
    if profile is None:
        profile = np.random.default_rng([rng_seed, 0x5EED]).integers(0, num_channels, H.vertex_count)
    profile = np.asarray(profile, dtype=np.int64).copy()
    if profile.shape != (H.vertex_count,):
        raise ValueError(f"profile must have one channel per player ({H.vertex_count})")
    if profile.size and (profile.min() < 0 or profile.max() >= num_channels):
        raise ValueError(f"channels must lie in [0, {num_channels})")
    profile.setflags(write=False)
    adj = tuple(np.asarray(a, dtype=np.int64) for a in adjacency_lists(H))
    pu = [u for u, a in enumerate(adj) for v in a if u < v]
    pv = [v for u, a in enumerate(adj) for v in a if u < v]
    pairs = (np.asarray(pu, dtype=np.int64), np.asarray(pv, dtype=np.int64))
    return ChannelGameState(H, int(num_channels), profile, int(rng_seed), 0, adj, pairs)


def _channel_counts(state: ChannelGameState, player: int, profile: np.ndarray) -> np.ndarray:
    return np.bincount(profile[state.adjacency[player]], minlength=state.num_channels)


def utility(state: ChannelGameState, player: int, channel: int) -> int:
    if not 0 <= channel < state.num_channels:
        raise ValueError(f"channel {channel} outside [0, {state.num_channels})")
    return -int(np.count_nonzero(state.profile[state.adjacency[player]] == channel))


def access_probabilities(utilities, beta: float = 1.0, rule: str = "softmax") -> np.ndarray:
    """Channel access probabilities, increasing in utility.

    ``rule="softmax"`` gives ``exp(beta * u_k) / sum_j exp(beta * u_j)``;
    ``rule="linear"`` gives weights ``u_k - min(u) + 1``.
    """
    u = np.asarray(utilities, dtype=np.float64)
    if u.ndim != 1 or u.size == 0:
        raise ValueError("need at least one channel utility")
    if rule == "softmax":
        if not beta > 0:
            raise ValueError(f"beta must be > 0, got {beta}")
        z = np.exp(beta * (u - u.max()))
    elif rule == "linear":
        z = u - u.min() + 1.0
    else:
        raise ValueError(f"unknown probability rule {rule!r}")
    return z / z.sum()


def potential(state: ChannelGameState) -> int:
    """Number of adjacent player pairs on the same channel."""
    pu, pv = state.pairs
    return int(np.count_nonzero(state.profile[pu] == state.profile[pv]))


def play_round_stochastic(state: ChannelGameState, beta: float = 1.0, rule: str = "softmax") -> ChannelGameState:
    """Every player, in a seeded random order, resamples its channel."""
    rng = np.random.default_rng([state.rng_seed, state.round + 1])
    profile = state.profile.copy()
    K = state.num_channels
    for player in rng.permutation(state.n):
        u = -_channel_counts(state, player, profile)
        p = access_probabilities(u, beta, rule)
        profile[player] = rng.choice(K, p=p)
    return state.with_profile(profile, advance=1)


def play_round_best_response(state: ChannelGameState) -> tuple[ChannelGameState, bool]:
    """One ascending-id sweep of best responses; stay put when already optimal."""
    profile = state.profile.copy()
    improved = False
    for player in range(state.n):
        u = -_channel_counts(state, player, profile)
        cur = profile[player]
        if u[cur] < u.max():
            profile[player] = int(np.argmax(u))
            improved = True
    return state.with_profile(profile, advance=1), improved


@dataclass
class PotentialTrace:
    rounds: list[int] = field(default_factory=list)
    potentials: list[int] = field(default_factory=list)

    def append(self, rnd: int, phi: int) -> None:
        self.rounds.append(rnd)
        self.potentials.append(phi)

    def to_csv(self) -> str:
        return "round,potential\n" + "".join(f"{r},{p}\n" for r, p in zip(self.rounds, self.potentials))

    def __len__(self) -> int:
        return len(self.rounds)


def run_to_convergence(
    state: ChannelGameState,
    mode: str = "best_response",
    max_rounds: int = 200,
    beta: float = 1.0,
    rule: str = "softmax",
) -> tuple[ChannelGameState, PotentialTrace]:
    """Iterate rounds and record the potential after each one.

    ``best_response`` stops at the first round without a switch (a pure Nash
    equilibrium) or after ``max_rounds``. ``stochastic`` always plays
    ``max_rounds`` rounds and returns the lowest-potential profile seen
    (earliest on ties, the initial profile included).
    """
    if max_rounds < 1:
        raise ValueError(f"max_rounds must be >= 1, got {max_rounds}")
    trace = PotentialTrace()
    trace.append(0, potential(state))
    if mode == "best_response":
        for rnd in range(1, max_rounds + 1):
            state, improved = play_round_best_response(state)
            trace.append(rnd, potential(state))
            if not improved:
                break
        return state, trace
    if mode == "stochastic":
        best, best_phi = state, trace.potentials[0]
        for rnd in range(1, max_rounds + 1):
            state = play_round_stochastic(state, beta, rule)
            phi = potential(state)
            trace.append(rnd, phi)
            if phi < best_phi:
                best, best_phi = state, phi
        return best, trace
    raise ValueError(f"unknown mode {mode!r}; use 'best_response' or 'stochastic'")
