"""Degree-1 normalization and the flip and mirror symmetries."""

from __future__ import annotations

from dataclasses import dataclass, field

from .core import EmbeddedGraph, OrthoRadialRep, check_conditions, labeling
from .errors import CentralBoundaryMonotone, ConditionsViolated


@dataclass
class NormalizationMap:
    """How a normalized representation relates to its input.

    Dart ids of the input survive unchanged, so a cycle of the input that
    avoids pendant vertices is also a dart sequence of the output.  The
    pendant edge ``e`` becomes the path ``subdivided_edges[e]``.
    """

    original: OrthoRadialRep
    added_vertices: list = field(default_factory=list)
    subdivided_edges: dict = field(default_factory=dict)

    @property
    def identity(self) -> bool:
        return not self.added_vertices

    def restrict_cycle(self, cycle):
        """Map a cycle of the normalized graph back to input darts."""
        n_darts = self.original.graph.n_darts
        if any(d >= n_darts for d in cycle):
            raise ValueError("cycle uses gadget edges")
        return list(cycle)


def _fresh(taken: set, base: str) -> str:
    name = base
    i = 1
    while name in taken:
        i += 1
        name = f"{base}{i}"
    taken.add(name)
    return name


def normalize(rep: OrthoRadialRep) -> tuple[OrthoRadialRep, NormalizationMap]:
    """Replace every degree-1 vertex by a rectangle gadget."""
    g = rep.graph
    pendants = [v for v in range(g.n_vertices) if g.degree(v) == 1]
    nmap = NormalizationMap(rep)
    if not pendants:
        return rep, nmap
    if g.n_vertices == 2:
        raise ConditionsViolated("a single edge has no ortho-radial representation to normalize")

    names = list(g.names)
    ends = [list(e) for e in g.ends]
    edge_names = list(g.edge_names)
    rotation = [list(r) for r in g.rotation]
    angle = list(rep.angle)
    vtaken = {str(x) for x in names}
    etaken = {str(x) for x in edge_names}

    def add_vertex(base):
        names.append(_fresh(vtaken, base))
        rotation.append([])
        return len(names) - 1

    def add_edge(base, a, b):
        e = len(ends)
        ends.append([a, b])
        edge_names.append(_fresh(etaken, base))
        angle.extend((0, 0))
        return 2 * e, 2 * e + 1

    for v in pendants:
        out = g.rotation[v][0]  # v -> u
        k = out >> 1
        inn = out ^ 1  # u -> v, becomes u -> w
        w = add_vertex(f"{names[v]}.w")
        x = add_vertex(f"{names[v]}.x")
        y = add_vertex(f"{names[v]}.y")
        ends[k][ends[k].index(v)] = w
        wv, vw = add_edge(f"{edge_names[k]}.wv", w, v)
        vx, xv = add_edge(f"{edge_names[k]}.vx", v, x)
        xy, yx = add_edge(f"{edge_names[k]}.xy", x, y)
        yw, wy = add_edge(f"{edge_names[k]}.yw", y, w)
        # Offsets from the heading of u->v: w->v 0, w->y 1, w->u 2; v->x 1, v->w 2;
        # x->y 2, x->v 3; y->x 0, y->w 3.
        rotation[w] = [wv, wy, out]
        rotation[v] = [vx, vw]
        rotation[x] = [xy, xv]
        rotation[y] = [yx, yw]
        angle[inn] = 90
        for d in (wv, vx, xy, yw):
            angle[d] = 90
        angle[vw] = 180
        angle[xv] = 270
        angle[wy] = 270
        angle[yx] = 270
        nmap.added_vertices.extend(names[i] for i in (w, x, y))
        nmap.subdivided_edges[g.edge_names[k]] = [g.edge_names[k], edge_names[wv >> 1]]

    g2 = EmbeddedGraph(names, ends, rotation, edge_names)
    out_rep = OrthoRadialRep(
        g2,
        angle,
        g2.face_of[g.faces[rep.outer][0]],
        g2.face_of[g.faces[rep.central][0]],
        rep.ref,
    )
    return out_rep, nmap


def mirror(rep: OrthoRadialRep) -> OrthoRadialRep:
    """Reverse every rotation; cycle ``C`` maps to its reversal with negated labels."""
    g = rep.graph
    g2 = EmbeddedGraph(g.names, g.ends, [tuple(reversed(r)) for r in g.rotation], g.edge_names)
    angle = [0] * g.n_darts
    for d in range(g.n_darts):
        angle[g.succ[d] ^ 1] = rep.angle[d]
    outer = g2.face_of[g.faces[rep.outer][0] ^ 1]
    central = g2.face_of[g.faces[rep.central][0] ^ 1]
    return OrthoRadialRep(g2, angle, outer, central, rep.ref ^ 1)


def central_labels(rep: OrthoRadialRep) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Central face walk and its labels."""
    walk = rep.graph.faces[rep.central]
    lab = labeling(rep, walk)
    return lab.cycle, lab.labels


def flip(rep: OrthoRadialRep) -> OrthoRadialRep:
    """Exchange outer and central face, re-anchoring at a label-0 central edge."""
    if rep.outer == rep.central:
        raise CentralBoundaryMonotone("outer and central face coincide")
    walk, labels = central_labels(rep)
    if min(labels) >= 0 and max(labels) > 0 or max(labels) <= 0 and min(labels) < 0:
        raise CentralBoundaryMonotone("central face boundary is monotone")
    zero = [d for d, lab in zip(walk, labels) if lab == 0]
    if not zero:
        raise CentralBoundaryMonotone("central face boundary has no label-0 edge")
    return OrthoRadialRep(rep.graph, rep.angle, rep.central, rep.outer, min(zero) ^ 1)


def require_conditions(rep: OrthoRadialRep) -> None:
    bad = check_conditions(rep)
    if bad:
        raise ConditionsViolated("; ".join(str(v) for v in bad[:5]))
