"""Grid coordinates for rectangulated representations.

Rows come from a longest-path order on horizontal segments: every maximal
horizontal chain shares one row and each downward edge moves at least one
row towards the center.  Columns come from difference constraints on
vertical segments.  The cylinder is cut along a seam that runs from the
outer face to the central face through horizontal edges only; edges on the
seam are the ones that wrap from column ``W - 1`` back to column 0.
Because every regular face is a rectangle, opposite sides of a face share
their end segments and come out equally long without further constraints.
"""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass, field

from .core import OrthoRadialRep
from .errors import InconsistentMap, InfeasibleLengths, NotRectangulated

RIGHT, DOWN, LEFT, UP = range(4)
_STEP = {RIGHT: (1, 0), DOWN: (0, 1), LEFT: (-1, 0), UP: (0, -1)}
_NAMES = "RDLU"


@dataclass(frozen=True)
class Polyline:
    """Axis-parallel route: a start point and a list of ``(direction, length)`` moves."""

    start: tuple[int, int]
    moves: tuple[tuple[int, int], ...]

    def points(self, width: int) -> list[tuple[int, int]]:
        c, r = self.start
        pts = [(c, r)]
        for d, length in self.moves:
            dc, dr = _STEP[d]
            c, r = (c + dc * length) % width, r + dr * length
            pts.append((c, r))
        return pts

    def col_displacement(self) -> int:
        return sum(_STEP[d][0] * length for d, length in self.moves)


def _merge(moves) -> tuple[tuple[int, int], ...]:
    out: list[list[int]] = []
    for d, length in moves:
        if out and out[-1][0] == d:
            out[-1][1] += length
        else:
            out.append([d, length])
    return tuple((d, length) for d, length in out)


@dataclass
class GridDrawing:
    """Integer coordinates ``(col, row)`` on a cylinder of ``width`` columns.

    Rows grow towards the center.  ``routes`` gives the route of every edge
    from its first to its second endpoint; a horizontal edge on a cylinder
    can go either way round, so coordinates alone do not pin it down.
    """

    width: int
    coords: dict
    routes: dict = field(default_factory=dict)

    def polylines(self) -> dict:
        return dict(self.routes)

    def to_json(self) -> str:
        doc = {
            "width": self.width,
            "vertices": {str(v): list(p) for v, p in sorted(self.coords.items())},
            "edges": {
                str(e): {"start": list(p.start), "moves": [[_NAMES[d], n] for d, n in p.moves]}
                for e, p in sorted(self.routes.items())
            },
        }
        return json.dumps(doc, indent=1)

    @classmethod
    def from_json(cls, text: str) -> "GridDrawing":
        doc = json.loads(text)
        routes = {
            e: Polyline(tuple(x["start"]), tuple((_NAMES.index(d), n) for d, n in x["moves"]))
            for e, x in doc.get("edges", {}).items()
        }
        coords = {v: tuple(p) for v, p in doc["vertices"].items()}
        return cls(int(doc["width"]), coords, routes)


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        self.parent[self.find(a)] = self.find(b)


def require_rectangulated(rep: OrthoRadialRep) -> None:
    g = rep.graph
    for f, walk in enumerate(g.faces):
        bends = [t for d in walk if (t := 2 - rep.angle[d] // 90)]
        special = f in (rep.outer, rep.central)
        if (special and bends) or (not special and bends != [1, 1, 1, 1]):
            raise NotRectangulated(f"face {f} is not a rectangle")
    if rep.outer == rep.central:
        raise NotRectangulated("outer and central face coincide")


def _segments(rep: OrthoRadialRep, horizontal: bool) -> list[int]:
    g, dirs = rep.graph, rep.directions
    uf = _UnionFind(g.n_vertices)
    for d in range(0, g.n_darts, 2):
        if (dirs[d] in (RIGHT, LEFT)) == horizontal:
            uf.union(g.tail[d], g.head[d])
    return [uf.find(v) for v in range(g.n_vertices)]


def _longest_from_sources(nodes, arcs) -> dict:
    """Longest distances in a DAG given as ``(a, b, w)`` arcs."""
    succ: dict = {v: [] for v in nodes}
    indeg = dict.fromkeys(nodes, 0)
    for a, b, w in arcs:
        succ[a].append((b, w))
        indeg[b] += 1
    dist = dict.fromkeys(nodes, 0)
    queue = deque(v for v in nodes if indeg[v] == 0)
    seen = 0
    while queue:
        v = queue.popleft()
        seen += 1
        for b, w in succ[v]:
            dist[b] = max(dist[b], dist[v] + w)
            indeg[b] -= 1
            if indeg[b] == 0:
                queue.append(b)
    if seen != len(dist):
        raise InfeasibleLengths("cyclic order constraints")
    return dist


def _seam(rep: OrthoRadialRep) -> set[int]:
    """Edges crossed by a downward dual walk from the outer to the central face."""
    g, dirs = rep.graph, rep.directions
    crossed = set()
    f = rep.outer
    for _ in range(len(g.faces)):
        if f == rep.central:
            return crossed
        # The bottom side of a rectangle, and all of the outer face, points left.
        d = next(x for x in g.faces[f] if dirs[x] == LEFT)
        crossed.add(d >> 1)
        f = g.face_of[d ^ 1]
    raise InfeasibleLengths("seam does not reach the central face")


def _columns(nodes, arcs, seam_arcs, width: int):
    """Feasible columns for ``width`` or None, by longest paths with cycle detection."""
    src = object()
    adj: dict = {v: [] for v in nodes}
    adj[src] = [(v, 0) for v in nodes]
    for a, b, w in arcs:
        adj[a].append((b, w))
    for a, b in seam_arcs:
        adj[a].append((b, 1 - width))
        adj[b].append((a, 1))
    for v in nodes:
        adj[v].append((src, 1 - width))
    dist = {v: -math.inf for v in adj}
    dist[src] = 0
    count = dict.fromkeys(adj, 0)
    queue = deque([src])
    queued = {src}
    limit = len(adj) + 1
    while queue:
        v = queue.popleft()
        queued.discard(v)
        for b, w in adj[v]:
            if dist[v] + w > dist[b]:
                dist[b] = dist[v] + w
                if b is src:
                    return None
                if b not in queued:
                    count[b] += 1
                    if count[b] > limit:
                        return None
                    queue.append(b)
                    queued.add(b)
    return {v: dist[v] for v in nodes}


def assign_coordinates(rep: OrthoRadialRep) -> GridDrawing:
    """Grid drawing of a valid rectangulated representation."""
    require_rectangulated(rep)
    g, dirs = rep.graph, rep.directions

    hseg = _segments(rep, horizontal=True)
    down_arcs = []
    for d in range(g.n_darts):
        if dirs[d] == DOWN:
            down_arcs.append((hseg[g.tail[d]], hseg[g.head[d]], 1))
    depth = _longest_from_sources(set(hseg), down_arcs)

    vseg = _segments(rep, horizontal=False)
    seam = _seam(rep)
    arcs, seam_arcs = [], []
    for d in range(g.n_darts):
        if dirs[d] != RIGHT:
            continue
        a, b = vseg[g.tail[d]], vseg[g.head[d]]
        (seam_arcs.append((a, b)) if d >> 1 in seam else arcs.append((a, b, 1)))
    nodes = set(vseg)
    # Widths are monotone: a solution for W also works for W + 1.
    hi = 1
    while (cols := _columns(nodes, arcs, seam_arcs, hi)) is None:
        hi *= 2
        if hi > 4 * len(nodes) + 4:
            raise InfeasibleLengths("no column assignment found")
    lo = hi // 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _columns(nodes, arcs, seam_arcs, mid) is None:
            lo = mid
        else:
            hi = mid
    width = hi
    cols = _columns(nodes, arcs, seam_arcs, width)

    # Rotate so that the reference edge starts in column 0.
    shift = cols[vseg[g.tail[rep.ref]]]
    names = [str(v) for v in g.names]
    coords = {
        names[v]: (int(cols[vseg[v]] - shift) % width, 1 + depth[hseg[v]]) for v in range(g.n_vertices)
    }
    routes = {}
    for e in range(len(g.ends)):
        d = 2 * e
        (c1, r1), (c2, r2) = coords[names[g.tail[d]]], coords[names[g.head[d]]]
        if dirs[d] in (UP, DOWN):
            length = abs(r2 - r1)
        else:
            length = (c2 - c1) % width if dirs[d] == RIGHT else (c1 - c2) % width
        routes[str(g.edge_names[e])] = Polyline((c1, r1), ((dirs[d], length),))
    drawing = GridDrawing(width, coords, routes)
    if not realize_check(rep, drawing):
        raise InfeasibleLengths("computed coordinates do not realize the representation")
    return drawing


def _route(drawing: GridDrawing, name: str, tail, head, direction: int) -> Polyline | None:
    route = drawing.routes.get(name)
    if route is not None:
        return route
    (c1, r1), (c2, r2) = drawing.coords[tail], drawing.coords[head]
    W = drawing.width
    if direction in (UP, DOWN):
        return Polyline((c1, r1), ((direction, abs(r2 - r1)),))
    length = (c2 - c1) % W if direction == RIGHT else (c1 - c2) % W
    return Polyline((c1, r1), ((direction, length),))


def realize_check(rep: OrthoRadialRep, drawing: GridDrawing) -> bool:
    """Whether ``drawing`` realizes ``rep`` on the cylinder grid.

    Edges follow their routes, or run straight when no route is given.  Each
    route must leave its tail in the edge's direction, end at its head, and
    touch no other vertex or edge.  Regular faces must close up and the two
    special faces must wind once around the cylinder.
    """
    g, dirs, W = rep.graph, rep.directions, drawing.width
    names = [str(v) for v in g.names]
    if W < 1 or any(n not in drawing.coords for n in names):
        return False
    if dirs[rep.ref] != RIGHT:
        return False
    owner: dict = {}
    for n in names:
        c, r = drawing.coords[n]
        key = (2 * (c % W), 2 * r)
        if key in owner:
            return False
        owner[key] = n
    disp = [0] * g.n_darts
    for e in range(len(g.ends)):
        d = 2 * e
        tail, head = names[g.tail[d]], names[g.head[d]]
        route = _route(drawing, str(g.edge_names[e]), tail, head, dirs[d])
        if not route.moves or route.moves[0][0] != dirs[d]:
            return False
        c1, r1 = drawing.coords[tail]
        c2, r2 = drawing.coords[head]
        end = (2 * (c2 % W), 2 * r2)
        if tuple(route.start) != (c1, r1):
            return False
        c, r = 2 * (c1 % W), 2 * r1
        prev = None
        for direction, length in route.moves:
            if length < 1 or (prev is not None and (direction - prev) % 2 == 0):
                return False
            prev = direction
            dc, dr = _STEP[direction]
            disp[d] += dc * length
            # Half steps; every interior point must be unused.
            for _ in range(2 * length):
                c, r = (c + dc) % (2 * W), r + dr
                if (c, r) == end:
                    continue
                if (c, r) in owner:
                    return False
                owner[(c, r)] = e
        if (c, r) != end:
            return False
        # The route must enter the head against the direction of the twin dart.
        if route.moves[-1][0] != (dirs[d ^ 1] + 2) & 3:
            return False
        disp[d ^ 1] = -disp[d]
    for f, walk in enumerate(g.faces):
        total = sum(disp[d] for d in walk)
        if rep.outer == rep.central == f:
            # One face wrapping once each way: outer and central at once.
            if total != 0:
                return False
        elif f in (rep.outer, rep.central):
            if abs(total) != W:
                return False
        elif total != 0:
            return False
    return True


def cycle_displacement(rep: OrthoRadialRep, drawing: GridDrawing, cycle) -> int:
    """Signed number of columns swept while walking ``cycle`` in ``drawing``."""
    g = rep.graph
    names = [str(v) for v in g.names]
    total = 0
    for d in cycle:
        e = d >> 1
        route = _route(drawing, str(g.edge_names[e]), names[g.tail[2 * e]], names[g.head[2 * e]], rep.directions[2 * e])
        total += route.col_displacement() * (1 if d == 2 * e else -1)
    return total


def project_back(drawing: GridDrawing, amap, rep_star: OrthoRadialRep) -> GridDrawing:
    """Drop helpers and merge subdivided edges back into polylines."""
    g = rep_star.graph
    index = {str(v): i for i, v in enumerate(g.names)}
    edge_index = {str(e): i for i, e in enumerate(g.edge_names)}
    pieces: dict = {}
    for e, origin in amap.edges.items():
        if origin is not None:
            pieces.setdefault(origin, []).append(e)
    coords = {v: drawing.coords[v] for v in amap.input_vertices}
    routes = {}
    for name, (tail, head) in amap.input_edges.items():
        parts = pieces.get(name)
        if not parts:
            raise InconsistentMap(f"edge {name} has no pieces")
        by_vertex: dict = {}
        for p in parts:
            a, b = g.ends[edge_index[p]]
            by_vertex.setdefault(a, []).append((p, b))
            by_vertex.setdefault(b, []).append((p, a))
        moves = []
        x, used = index[tail], set()
        while x != index[head] or not used:
            step = [(p, y) for p, y in by_vertex.get(x, []) if p not in used]
            if len(step) != 1 and not (x == index[tail] and len(step) >= 1):
                raise InconsistentMap(f"pieces of {name} do not form a path")
            p, y = step[0]
            used.add(p)
            route = drawing.routes[p]
            if g.ends[edge_index[p]][0] == x:
                moves.extend(route.moves)
            else:
                moves.extend(((d + 2) & 3, n) for d, n in reversed(route.moves))
            x = y
        if len(used) != len(parts):
            raise InconsistentMap(f"pieces of {name} do not form a path")
        routes[name] = Polyline(drawing.coords[tail], _merge(moves))
    return GridDrawing(drawing.width, coords, routes)


def emit_svg(drawing: GridDrawing, ring: float = 24.0, margin: float = 16.0) -> str:
    """Render on concentric circles (rows) and spokes (columns)."""
    W = drawing.width
    rows = [r for _, r in drawing.coords.values()] or [1]
    for p in drawing.routes.values():
        rows.extend(r for _, r in p.points(W))
    depth = max(rows)
    outer = ring * (depth + 1)
    size = 2 * (outer + margin)
    cx = cy = outer + margin

    def radius(row):
        return ring * (depth + 1 - row)

    def at(col, row):
        t = 2 * math.pi * col / W
        rr = radius(row)
        return cx + rr * math.cos(t), cy + rr * math.sin(t)

    fmt = "{:.3f}".format
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{fmt(size)}" height="{fmt(size)}" '
        f'viewBox="0 0 {fmt(size)} {fmt(size)}">',
        '<g stroke="#ccc" stroke-width="0.5" fill="none">',
    ]
    for row in range(1, depth + 1):
        out.append(f'<circle cx="{fmt(cx)}" cy="{fmt(cy)}" r="{fmt(radius(row))}"/>')
    for col in range(W):
        (x1, y1), (x2, y2) = at(col, depth), at(col, 1)
        out.append(f'<line x1="{fmt(x1)}" y1="{fmt(y1)}" x2="{fmt(x2)}" y2="{fmt(y2)}"/>')
    out.append("</g>")
    out.append('<g stroke="black" stroke-width="1.5" fill="none">')
    half = max(1, W // 2)
    for name in sorted(drawing.routes):
        p = drawing.routes[name]
        c, r = p.start
        x, y = at(c, r)
        path = [f"M {fmt(x)} {fmt(y)}"]
        for d, length in p.moves:
            if d in (UP, DOWN):
                r += length * _STEP[d][1]
                x, y = at(c, r)
                path.append(f"L {fmt(x)} {fmt(y)}")
                continue
            sweep = 1 if d == RIGHT else 0
            left = length
            while left > 0:
                chunk = min(left, half)
                c += chunk * _STEP[d][0]
                left -= chunk
                x, y = at(c, r)
                rr = fmt(radius(r))
                path.append(f"A {rr} {rr} 0 0 {sweep} {fmt(x)} {fmt(y)}")
        out.append(f'<path id="e-{name}" d="{" ".join(path)}"/>')
    out.append("</g>")
    out.append('<g fill="black">')
    for name in sorted(drawing.coords):
        x, y = at(*drawing.coords[name])
        out.append(f'<circle id="v-{name}" cx="{fmt(x)}" cy="{fmt(y)}" r="3"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
