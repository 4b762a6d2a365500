from fractions import Fraction

import pytest

from gossipnet.errors import CapacityError, InvalidParameterError
from gossipnet.game import DEFAULT_PAYOFFS
from gossipnet.graphs import Graph, complete_graph, cycle_graph
from gossipnet.oracle import exact_gossip_curves, exact_vanilla_curves

F = Fraction


def test_two_agents_closed_form():
    ex = exact_vanilla_curves(2, 1, 8, DEFAULT_PAYOFFS)
    assert ex.coop_mean == tuple(F(-8, 5) / t for t in range(1, 9))
    assert ex.cheat_mean == tuple(F(3, 2) / t for t in range(1, 9))


def test_two_agents_no_cheaters():
    ex = exact_vanilla_curves(2, 0, 5, DEFAULT_PAYOFFS)
    assert ex.coop_mean == (1,) * 5
    assert ex.cheat_mean == (None,) * 5
    assert ex.cheat_defined == (0,) * 5


def test_four_agents_first_step():
    ex = exact_vanilla_curves(4, 1, 1, DEFAULT_PAYOFFS)
    assert ex.coop_mean[0] == F(-3, 10)
    assert ex.cheat_mean[0] == F(3, 2)
    assert ex.cheat_defined[0] == F(1, 2)
    assert ex.coop_defined[0] == 1


def test_grid():
    ex = exact_vanilla_curves(4, 1, 3, DEFAULT_PAYOFFS)
    assert ex.r == (F(1, 2), F(1), F(3, 2))


def test_k4_no_cheaters():
    ex = exact_gossip_curves(complete_graph(4), 0, 6, DEFAULT_PAYOFFS)
    assert ex.coop_mean == (1,) * 6


def test_k4_first_contact_exploits():
    ex = exact_gossip_curves(complete_graph(4), 1, 1, DEFAULT_PAYOFFS)
    assert ex.cheat_mean[0] == F(3, 2)


def test_c4_collapse():
    c4 = cycle_graph(4)
    for m in range(5):
        assert exact_gossip_curves(c4, m, 8, DEFAULT_PAYOFFS) == exact_vanilla_curves(4, m, 8, DEFAULT_PAYOFFS, graph=c4)


def test_k4_gossip_differs_from_vanilla():
    # with triangles the friends' reports matter
    k4 = complete_graph(4)
    assert exact_gossip_curves(k4, 2, 6, DEFAULT_PAYOFFS) != exact_vanilla_curves(4, 2, 6, DEFAULT_PAYOFFS)


def test_k4_three_cheaters_first_step():
    # half the edges touch the lone cooperator (cheater mean 3/2), half join two cheaters (0)
    ex = exact_gossip_curves(complete_graph(4), 3, 1, DEFAULT_PAYOFFS)
    assert ex.cheat_mean[0] == F(3, 4)
    assert ex.coop_mean[0] == F(-8, 5)
    assert ex.coop_defined[0] == F(1, 2)


def test_all_cheaters():
    ex = exact_vanilla_curves(3, 3, 4, DEFAULT_PAYOFFS)
    assert ex.cheat_mean == (0,) * 4
    assert ex.coop_mean == (None,) * 4


@pytest.mark.parametrize("n,steps", [(5, 1), (4, 9)])
def test_capacity_guard(n, steps):
    with pytest.raises(CapacityError):
        exact_vanilla_curves(n, 1, steps, DEFAULT_PAYOFFS)


def test_gossip_capacity_guard():
    with pytest.raises(CapacityError):
        exact_gossip_curves(complete_graph(5), 1, 2, DEFAULT_PAYOFFS)


def test_invalid():
    with pytest.raises(InvalidParameterError):
        exact_vanilla_curves(3, 4, 2, DEFAULT_PAYOFFS)
    with pytest.raises(InvalidParameterError):
        exact_gossip_curves(Graph.from_edges(3, []), 1, 2, DEFAULT_PAYOFFS)
