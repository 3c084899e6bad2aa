from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from orthoradial import (
    Direction,
    build,
    check_conditions,
    is_essential,
    labeling,
    path_rotation,
    rotation_turn,
)
from orthoradial.core import OrthoRadialRep, cycle_from_vertices, elementary_path, labels_along
from orthoradial.errors import DegreeExceeded, EulerViolation, NotConnected, NotEssential
from orthoradial.oracle import (
    any_elementary_path,
    enumerate_essential_cycles,
    enumerate_simple_cycles,
    random_drawing,
    random_instance,
)

from conftest import corpus


def test_ring_graph_shape(ring):
    g = ring.graph
    assert (g.n_vertices, g.n_darts, len(g.faces)) == (4, 8, 2)


def test_darts_pair_up(ring):
    g = ring.graph
    for d in range(g.n_darts):
        assert d ^ 1 ^ 1 == d
        assert g.tail[d] == g.head[d ^ 1]


def test_k5_is_not_planar():
    names = list("abcde")
    edges = [(f"{u}{v}", u, v) for u, v in combinations(names, 2)]
    rot = {v: [e for e, a, b in edges if v in (a, b)] for v in names}
    with pytest.raises(EulerViolation):
        build({"vertices": names, "edges": edges, "rotations": rot})


def test_degree_five_rejected():
    names = ["c", "a", "b", "d", "e", "f"]
    edges = [(f"c{x}", "c", x) for x in names[1:]]
    rot = {"c": [e for e, _, _ in edges], **{x: [f"c{x}"] for x in names[1:]}}
    with pytest.raises(DegreeExceeded):
        build({"vertices": names, "edges": edges, "rotations": rot})


def test_disconnected_rejected():
    spec = {
        "vertices": ["a", "b", "c", "d"],
        "edges": [("ab", "a", "b"), ("cd", "c", "d")],
        "rotations": {"a": ["ab"], "b": ["ab"], "c": ["cd"], "d": ["cd"]},
    }
    with pytest.raises(NotConnected):
        build(spec)


@pytest.mark.parametrize("n,seed", [(10, 1), (12, 4), (30, 2)])
def test_euler_on_generated(n, seed):
    g = random_instance(n, seed).graph
    assert len(g.faces) == len(g.ends) - g.n_vertices + 2
    darts = sorted(d for f in g.faces for d in f)
    assert darts == list(range(g.n_darts))


def test_turn_values(spiral):
    g = spiral.graph
    ab, bc, cd, da = cycle_from_vertices(g, "abcd")
    assert rotation_turn(spiral, ab, bc) == 1
    assert rotation_turn(spiral, bc, cd) == 0
    assert rotation_turn(spiral, cd, da) == -1
    assert rotation_turn(spiral, ab, ab ^ 1) == -2


def test_turns_from_both_sides_cancel():
    rep = random_instance(12, 3)
    g = rep.graph
    for a in range(g.n_darts):
        for b in g.rotation[g.head[a]]:
            if b != a ^ 1:
                assert rotation_turn(rep, a, b) + rotation_turn(rep, b ^ 1, a ^ 1) == 0


def test_path_rotation_basics():
    rep = random_instance(10, 1)
    g = rep.graph
    assert path_rotation(rep, [0]) == 0
    for f in range(len(g.faces)):
        if f not in (rep.outer, rep.central):
            assert path_rotation(rep, g.faces[f], cyclic=True) == 4
    rng = random.Random(0)
    for _ in range(50):
        path = [rng.randrange(g.n_darts)]
        for _ in range(5):
            nxt = [d for d in g.rotation[g.head[path[-1]]] if d != path[-1] ^ 1]
            if not nxt:
                break
            path.append(rng.choice(nxt))
        back = [d ^ 1 for d in reversed(path)]
        assert path_rotation(rep, back) == -path_rotation(rep, path)


def test_conditions_ring(ring):
    assert check_conditions(ring) == []
    assert set(ring.angle) == {180}


def test_conditions_vertex_sum(ring):
    angle = list(ring.angle)
    angle[0] = 90
    bad = OrthoRadialRep(ring.graph, angle, ring.outer, ring.central, ring.ref)
    kinds = {(v.kind, v.where) for v in check_conditions(bad)}
    assert ("vertex", ring.graph.names[ring.graph.head[0]]) in kinds


def test_conditions_single_face():
    # A tree has one face, which is outer and central at once.
    rep = random_instance(3, 0)
    assert rep.outer == rep.central
    assert rep.face_rotation(rep.outer) == -4
    assert check_conditions(rep) == []


def test_directions(spiral):
    g = spiral.graph
    dirs = spiral.directions
    assert dirs[spiral.ref] == Direction.RIGHT
    assert dirs[spiral.ref ^ 1] == Direction.LEFT
    ab, bc, cd, da = cycle_from_vertices(g, "abcd")
    assert dirs[bc] == Direction.DOWN and dirs[cd] == Direction.DOWN


def test_essential_ring(ring):
    g = ring.graph
    cyc = g.faces[ring.central]
    assert is_essential(ring, cyc)
    assert len(enumerate_essential_cycles(ring)) == 1


def test_regular_faces_not_essential():
    rep = random_instance(12, 2)
    g = rep.graph
    for f in range(len(g.faces)):
        if f not in (rep.outer, rep.central):
            assert not is_essential(rep, g.faces[f])


@pytest.mark.parametrize("n,seed", [(6, 0), (8, 1), (10, 1), (10, 5)])
def test_essential_matches_geometry(n, seed):
    dr = random_drawing(n, seed)
    rep = dr.rep()
    for cyc in enumerate_simple_cycles(rep.graph):
        try:
            ess = is_essential(rep, cyc)
        except Exception:
            continue
        assert ess == dr.geometric_essential(rep, cyc)


def test_elementary_path_empty_on_cycle(ring):
    assert elementary_path(ring, ring.graph.faces[ring.central]) == []


def test_labels_independent_of_path():
    rng = random.Random(5)
    for n, s, rep in corpus(10, 4):
        for cyc in enumerate_essential_cycles(rep)[:6]:
            ref = labeling(rep, cyc).labels
            for _ in range(3):
                p = any_elementary_path(rep, cyc, rng)
                assert labels_along(rep, cyc, p) == ref


def test_ring_labels_zero(ring):
    assert set(labeling(ring, ring.graph.faces[ring.central]).labels) == {0}


def test_spiral_labels(spiral):
    cyc = cycle_from_vertices(spiral.graph, "abcd")
    assert labeling(spiral, cyc).labels == (0, 1, 1, 0)


def test_labeling_rejects_face_walk():
    rep = random_instance(10, 1)
    f = next(f for f in range(len(rep.graph.faces)) if f not in (rep.outer, rep.central))
    with pytest.raises(NotEssential):
        labeling(rep, rep.graph.faces[f])


@settings(max_examples=40, deadline=None)
@given(st.integers(4, 14), st.integers(0, 10_000))
def test_labels_telescope(n, seed):
    rep = random_instance(n, seed)
    for cyc in enumerate_essential_cycles(rep, cap=5000)[:5]:
        lab = labeling(rep, cyc).labels
        k = len(cyc)
        for i in range(k):
            j = (i + 1) % k
            assert lab[j] - lab[i] == rotation_turn(rep, cyc[i], cyc[j])
        assert path_rotation(rep, cyc, cyclic=True) == 0
