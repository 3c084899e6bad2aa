from __future__ import annotations

import networkx as nx
import pytest

from orthoradial import check_conditions
from orthoradial.errors import CapExceeded
from orthoradial.oracle import (
    enumerate_essential_cycles,
    enumerate_simple_cycles,
    from_drawing,
    oracle_is_valid,
    random_instance,
)
from orthoradial.transform import mirror
from orthoradial import instance


def theta():
    # x and y joined by a short path above, a straight edge, and the wrap-around edge.
    coords = {"x": (0, 2), "y": (2, 2), "p": (0, 1), "q": (2, 1)}
    edges = [
        ("xp", "x", "p", "U"), ("pq", "p", "q", "R"), ("qy", "q", "y", "D"),
        ("xy", "x", "y", "R"), ("yx", "y", "x", "R"),
    ]
    return from_drawing(4, coords, edges, "pq")


def test_ring_one_cycle(ring):
    assert len(enumerate_essential_cycles(ring)) == 1


def test_theta():
    rep = theta()
    assert check_conditions(rep) == []
    assert len(enumerate_simple_cycles(rep.graph)) == 6
    # Of the three cycles only the two passing around the cylinder are essential.
    assert len(enumerate_essential_cycles(rep)) == 2


def _nx_cycle_count(g) -> int:
    dg = nx.DiGraph()
    for d in range(g.n_darts):
        dg.add_edge(g.tail[d], g.head[d])
    return sum(1 for c in nx.simple_cycles(dg) if len(c) >= 3)


@pytest.mark.parametrize("n,seed", [(10, 1), (8, 4), (12, 6), (11, 2)])
def test_enumeration_matches_networkx(n, seed):
    g = random_instance(n, seed).graph
    assert len(enumerate_simple_cycles(g)) == _nx_cycle_count(g)


def test_cap():
    rep = random_instance(60, 1)
    with pytest.raises(CapExceeded):
        enumerate_simple_cycles(rep.graph, cap=10)


def test_oracle_canonical(ring, spiral):
    assert oracle_is_valid(ring).valid
    v = oracle_is_valid(spiral)
    assert (len(v.decreasing), len(v.increasing)) == (1, 0)
    v = oracle_is_valid(mirror(spiral))
    assert (len(v.decreasing), len(v.increasing)) == (0, 1)


def test_generator_examples():
    rep = random_instance(4, 1, "valid")
    assert check_conditions(rep) == [] and oracle_is_valid(rep).valid
    assert check_conditions(random_instance(10, 7, "mutated")) == []


def test_generator_deterministic():
    for kind in ("valid", "mutated"):
        a = instance.dumps(random_instance(15, 9, kind))
        b = instance.dumps(random_instance(15, 9, kind))
        assert a == b


def test_generator_rejects_tiny():
    with pytest.raises(ValueError):
        random_instance(2, 1)


# Mutated instances that carry both kinds of monotone cycle.
BOTH_KINDS = [(8, 23), (11, 39), (12, 47), (12, 54), (14, 16), (14, 41), (15, 1), (15, 44)]


@pytest.mark.parametrize("n,seed", BOTH_KINDS)
def test_monotone_cycles_of_opposite_kind_are_disjoint(n, seed):
    rep = random_instance(n, seed, "mutated")
    v = oracle_is_valid(rep)
    assert v.decreasing and v.increasing
    g = rep.graph
    for dec in v.decreasing:
        a = {g.tail[d] for d in dec.cycle}
        for inc in v.increasing:
            assert not a & {g.tail[d] for d in inc.cycle}
