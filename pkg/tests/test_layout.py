from __future__ import annotations

import xml.etree.ElementTree as ET

import pytest

from orthoradial.errors import NotRectangulated
from orthoradial.layout import (
    GridDrawing,
    Polyline,
    assign_coordinates,
    cycle_displacement,
    emit_svg,
    project_back,
    realize_check,
)
from orthoradial.oracle import enumerate_essential_cycles, enumerate_simple_cycles, from_drawing
from orthoradial.core import is_essential, labeling
from orthoradial.rectangulate import rectangulate
from orthoradial.validity import left_first_dfs

from conftest import DATA, load, valid_corpus

RIGHT, DOWN, LEFT, UP = range(4)


def pipeline(rep, mode="two_phase"):
    star, amap = rectangulate(rep, mode)
    grid = assign_coordinates(star)
    return star, amap, grid, project_back(grid, amap, star)


def test_ring_coordinates(ring):
    d = assign_coordinates(ring)
    assert d.width == 4
    assert sorted(d.coords.values()) == [(c, 1) for c in range(4)]


def test_requires_rectangles(g2):
    with pytest.raises(NotRectangulated):
        assign_coordinates(g2)


def test_l_face_realized(g2):
    star, amap, grid, drawing = pipeline(g2)
    assert realize_check(star, grid)
    for p in grid.routes.values():
        assert all(n >= 1 for _, n in p.moves)


def test_perturbed_row_rejected(g2):
    star, _, grid, _ = pipeline(g2)
    v = next(iter(grid.coords))
    c, r = grid.coords[v]
    bad = GridDrawing(grid.width, {**grid.coords, v: (c, r + 1)})
    assert not realize_check(star, bad)


def test_wide_ring_accepted(ring):
    names = [str(v) for v in ring.graph.names]
    coords = {v: (c, 1) for v, c in zip(names, (0, 2, 3, 5))}
    assert realize_check(ring, GridDrawing(7, coords))


def test_overlap_rejected():
    coords = {"a": (0, 1), "b": (1, 1), "c": (2, 1), "p": (0, 2), "q": (2, 2)}
    edges = [
        ("ab", "a", "b", "R"), ("bc", "b", "c", "R"), ("ca", "c", "a", "R"),
        ("ap", "a", "p", "D"), ("pq", "p", "q", "R"), ("qp", "q", "p", "R"), ("cq", "c", "q", "D"),
    ]
    rep = from_drawing(3, coords, edges, "ab")
    assert realize_check(rep, GridDrawing(3, coords))
    # Moving q onto p's row position makes two edges share grid points.
    squashed = {**coords, "q": (0, 2)}
    assert not realize_check(rep, GridDrawing(3, squashed))


def test_empty_map_is_identity(ring):
    _, amap, grid, drawing = pipeline(ring)
    assert amap.empty
    assert drawing.coords == grid.coords
    assert drawing.routes == grid.routes


def test_polyline_endpoints(g2):
    _, amap, _, drawing = pipeline(g2)
    W = drawing.width
    for name, (a, b) in amap.input_edges.items():
        pts = drawing.routes[name].points(W)
        assert pts[0] == drawing.coords[a]
        assert pts[-1] == (drawing.coords[b][0] % W, drawing.coords[b][1])
    assert realize_check(g2, drawing)


def test_pendant_edge_comes_back_straight():
    coords = {"a": (0, 1), "b": (1, 1), "c": (2, 1), "p": (0, 2)}
    edges = [("ab", "a", "b", "R"), ("bc", "b", "c", "R"), ("ca", "c", "a", "R"), ("ap", "a", "p", "D")]
    rep = from_drawing(3, coords, edges, "ab")
    _, amap, _, drawing = pipeline(rep)
    assert set(drawing.coords) == {"a", "b", "c", "p"}
    assert len(drawing.routes["ap"].moves) <= 2
    assert realize_check(rep, drawing)


def test_svg_ring(ring):
    doc = ET.fromstring(emit_svg(assign_coordinates(ring)))
    ns = "{http://www.w3.org/2000/svg}"
    vertices = [c for c in doc.iter(ns + "circle") if c.get("id", "").startswith("v-")]
    grid_rings = [c for c in doc.iter(ns + "circle") if "id" not in c.attrib]
    assert len(vertices) == 4 and len(grid_rings) == 1


def test_svg_golden(g2):
    *_, drawing = pipeline(g2)
    text = emit_svg(drawing)
    assert text == (DATA / "g2.svg").read_text()
    doc = ET.fromstring(text)
    ns = "{http://www.w3.org/2000/svg}"
    assert len(list(doc.iter(ns + "path"))) == len(g2.graph.ends)
    assert emit_svg(drawing) == text


def test_coords_json_roundtrip(g2):
    *_, drawing = pipeline(g2)
    again = GridDrawing.from_json(drawing.to_json())
    assert again.width == drawing.width
    assert again.coords == drawing.coords
    assert again.routes == drawing.routes


def test_polyline_points():
    p = Polyline((3, 1), ((RIGHT, 2), (DOWN, 1), (LEFT, 4)))
    assert p.points(5) == [(3, 1), (0, 1), (0, 2), (1, 2)]
    assert p.col_displacement() == -2


@pytest.mark.parametrize("name", ["g4_k5.json", "k4.json", "k4_left.json"])
def test_k_structure_cycle_winds_once(name):
    star, amap = rectangulate(load(name), "two_phase")
    grid = assign_coordinates(star)
    assert realize_check(star, grid)
    g = star.graph
    index = {str(v): i for i, v in enumerate(g.names)}
    inner = [index[v] for v, (_, role) in amap.vertices.items() if role in ("R2", "R3", "R4", "R5")]
    assert inner
    found = 0
    for v in inner:
        for d in g.rotation[v]:
            for start in (d, d ^ 1):
                hit = left_first_dfs(star, start)
                if hit is not None and is_essential(star, hit.cycle):
                    assert abs(cycle_displacement(star, grid, hit.cycle)) == grid.width
                    found += 1
    assert found


@pytest.mark.parametrize("mode", ["binary", "two_phase"])
def test_winding_on_corpus(mode):
    for n, s, rep in valid_corpus(10, 4):
        _, _, _, drawing = pipeline(rep, mode)
        assert realize_check(rep, drawing)
        W = drawing.width
        for cyc in enumerate_simple_cycles(rep.graph):
            try:
                ess = is_essential(rep, cyc)
            except Exception:
                continue
            disp = cycle_displacement(rep, drawing, cyc)
            if ess or is_essential(rep, [d ^ 1 for d in reversed(cyc)]):
                assert abs(disp) == W
            else:
                assert disp == 0
            if ess and any(labeling(rep, cyc).labels):
                dirs = {rep.directions[d] for d in cyc}
                assert UP in dirs and DOWN in dirs


def test_non_essential_face_walks_close():
    for n, s, rep in valid_corpus(10, 4):
        _, _, _, drawing = pipeline(rep)
        for f, walk in enumerate(rep.graph.faces):
            if f not in (rep.outer, rep.central):
                assert cycle_displacement(rep, drawing, walk) == 0
        for cyc in enumerate_essential_cycles(rep):
            assert abs(cycle_displacement(rep, drawing, cyc)) == drawing.width
