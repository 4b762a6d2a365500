"""Repeated prisoner's dilemma with reputation beliefs and network gossip.

Agent types are fixed for a run. Every agent keeps a belief about every
other agent (cooperator or cheater), starting from "cooperator". After a
game each side records the partner's observed action, so a single observed
cheat is never forgiven.

Conventions: boolean arrays use ``True`` for cheater / cheat, so
``state.cheater[i]`` is agent ``i``'s type and ``state.beliefs[i, j]`` is
``True`` when ``i`` believes ``j`` is a cheater.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import IntEnum

import numpy as np

from .errors import InvalidParameterError
from .graphs import Graph


class AgentType(IntEnum):
    COOPERATOR = 0
    CHEATER = 1


class Action(IntEnum):
    COOPERATE = 0
    CHEAT = 1


@dataclass(frozen=True)
class PayoffMatrix:
    """Symmetric 2x2 game; the first letter is the own move (c/d), the second the partner's."""

    cc: float = 1.0
    cd: float = -1.6
    dc: float = 1.5
    dd: float = 0.0

    def __post_init__(self):
        for name in ("cc", "cd", "dc", "dd"):
            if not np.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"payoff {name} must be finite")

    def table(self) -> np.ndarray:
        """``table[own_cheats, partner_cheats]``."""
        return np.array([[self.cc, self.cd], [self.dc, self.dd]], dtype=float)

    def payoff(self, own: Action, other: Action) -> float:
        return float(self.table()[int(own), int(other)])

    def dilemma_violations(self) -> list[str]:
        """Which of the default matrix's design inequalities this matrix breaks."""
        out = []
        if not self.cc < self.dc < 2 * self.cc:
            out.append("cc < dc < 2*cc")
        if not self.cd < self.dd < self.cc:
            out.append("cd < dd < cc")
        return out


DEFAULT_PAYOFFS = PayoffMatrix()


@dataclass
class SimulationState:
    cheater: np.ndarray
    beliefs: np.ndarray
    cumulative_payoff: np.ndarray
    interactions_played: np.ndarray
    steps_elapsed: int = 0
    history: list | None = field(default=None, repr=False)

    @property
    def n(self) -> int:
        return len(self.cheater)

    @property
    def types(self) -> list[AgentType]:
        return [AgentType(int(c)) for c in self.cheater]

    def believes_cheater(self, i: int, j: int) -> bool:
        if i == j:
            raise InvalidParameterError("agents hold no belief about themselves")
        return bool(self.beliefs[i, j])


def state_from_types(cheater, record_history: bool = False) -> SimulationState:
    cheater = np.asarray(cheater, dtype=bool).copy()
    n = len(cheater)
    return SimulationState(
        cheater=cheater,
        beliefs=np.zeros((n, n), dtype=bool),
        cumulative_payoff=np.zeros(n),
        interactions_played=np.zeros(n, dtype=np.int64),
        history=[] if record_history else None,
    )


def new_state(n: int, m: int, rng: np.random.Generator, record_history: bool = False) -> SimulationState:
    """Fresh state with ``m`` cheaters drawn uniformly without replacement."""
    if n < 1:
        raise InvalidParameterError(f"group size must be positive, got {n}")
    if not 0 <= m <= n:
        raise InvalidParameterError(f"cheater count must lie in 0..{n}, got {m}")
    cheater = np.zeros(n, dtype=bool)
    cheater[rng.choice(n, size=m, replace=False)] = True
    return state_from_types(cheater, record_history)


def _check_pair(i, j):
    if i == j:
        raise InvalidParameterError(f"an agent cannot play itself (i = j = {i})")


def vanilla_action(i: int, j: int, state: SimulationState) -> Action:
    _check_pair(i, j)
    if state.beliefs[i, j] or state.cheater[i]:
        return Action.CHEAT
    return Action.COOPERATE


def slander_votes(i: int, j: int, state: SimulationState, g: Graph) -> int:
    """Friends of ``i`` that ``i`` still trusts and that believe ``j`` cheats.

    ``j`` never votes on itself: ``beliefs[j, j]`` is always false.
    """
    trusted = g.adjacency[i] & ~state.beliefs[i]
    return int((trusted & state.beliefs[:, j]).sum())


def gossip_expectation(i: int, j: int, state: SimulationState, g: Graph) -> AgentType:
    _check_pair(i, j)
    if state.beliefs[i, j]:
        return AgentType.CHEATER
    k = int(g.adjacency[i].sum())
    # votes / (k + 1) >= 1/2, kept in integers
    if 2 * slander_votes(i, j, state, g) >= k + 1:
        return AgentType.CHEATER
    return AgentType.COOPERATOR


def gossip_action(i: int, j: int, state: SimulationState, g: Graph) -> Action:
    if gossip_expectation(i, j, state, g) is AgentType.CHEATER or state.cheater[i]:
        return Action.CHEAT
    return Action.COOPERATE


def play_pair(i, j, action_i, action_j, state: SimulationState, payoffs: PayoffMatrix = DEFAULT_PAYOFFS):
    _check_pair(i, j)
    table = payoffs.table()
    ai, aj = int(action_i), int(action_j)
    state.cumulative_payoff[i] += table[ai, aj]
    state.cumulative_payoff[j] += table[aj, ai]
    state.interactions_played[i] += 1
    state.interactions_played[j] += 1
    state.beliefs[i, j] = bool(aj)
    state.beliefs[j, i] = bool(ai)
    state.steps_elapsed += 1
    if state.history is not None:
        state.history.append((int(i), int(j), Action(ai), Action(aj)))
    return state


def all_pairs(n: int) -> np.ndarray:
    """Unordered pairs ``(i, j)``, ``i < j``, in row-major order."""
    i, j = np.triu_indices(n, 1)
    return np.stack([i, j], axis=1)


def _draw_pair(pairs, rng):
    if len(pairs) == 0:
        raise InvalidParameterError("no pair available to play")
    i, j = pairs[rng.integers(len(pairs))]
    return int(i), int(j)


def step_vanilla(state: SimulationState, payoffs: PayoffMatrix, rng: np.random.Generator, pairs=None):
    """One game between a uniformly drawn pair.

    ``pairs`` restricts the draw (for instance to a graph's edges); by
    default every unordered pair of agents is eligible.
    """
    if state.n < 2:
        raise InvalidParameterError("need at least two agents")
    if pairs is None:
        pairs = all_pairs(state.n)
    i, j = _draw_pair(pairs, rng)
    return play_pair(i, j, vanilla_action(i, j, state), vanilla_action(j, i, state), state, payoffs)


def step_gossip(state: SimulationState, g: Graph, payoffs: PayoffMatrix, rng: np.random.Generator):
    """One game across a uniformly drawn edge of ``g``, moves chosen with gossip."""
    if g.node_count != state.n:
        raise InvalidParameterError(f"graph has {g.node_count} nodes but state has {state.n} agents")
    if g.edge_count == 0:
        raise InvalidParameterError("graph has no edges")
    i, j = _draw_pair(g.edges, rng)
    return play_pair(i, j, gossip_action(i, j, state, g), gossip_action(j, i, state, g), state, payoffs)


def type_average_payoffs(state: SimulationState) -> tuple[float | None, float | None]:
    """Per-interaction payoff averaged over the agents of each type that have played.

    Returns ``(coop_mean, cheat_mean)``; a type none of whose agents has
    played yet gives ``None``.
    """
    played = state.interactions_played > 0
    ratio = state.cumulative_payoff / np.where(played, state.interactions_played, 1)
    out = []
    for mask in (~state.cheater & played, state.cheater & played):
        count = int(mask.sum())
        out.append(float((ratio * mask).sum() / count) if count else None)
    return out[0], out[1]
