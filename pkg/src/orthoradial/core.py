"""Embedded planar 4-graphs with ortho-radial angle data.

Darts are integers: edge ``e`` owns darts ``2*e`` (its first endpoint to its
second) and ``2*e + 1`` (the reverse), so ``twin(d) == d ^ 1``.  Each vertex
stores its outgoing darts in clockwise order.  Faces are traced with the face
on the right: the successor of ``d`` is the outgoing dart at ``head(d)`` that
immediately precedes ``twin(d)`` in clockwise order.

An angle is stored per dart: ``angle[d]`` is the corner inside ``face(d)`` at
``head(d)`` between ``d`` and its face successor.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from enum import IntEnum
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DegreeExceeded,
    Disconnected,
    EulerViolation,
    InconsistentDirections,
    NotACycle,
    NotConnected,
    NotEssential,
    NotIncident,
    SelfCrossing,
    Unreachable,
)

ANGLES = (90, 180, 270, 360)


class Direction(IntEnum):
    """Edge direction on the cylinder; adding 1 is a clockwise quarter turn."""

    RIGHT = 0
    DOWN = 1
    LEFT = 2
    UP = 3

    def turned(self, quarters: int) -> "Direction":
        return Direction((self.value + quarters) % 4)

    @property
    def horizontal(self) -> bool:
        return self.value % 2 == 0


def twin(d: int) -> int:
    return d ^ 1


class EmbeddedGraph:
    """A connected planar 4-graph with a fixed rotation system.

    ``ends`` lists the endpoints of every edge as vertex indices and
    ``rotation[v]`` the clockwise cyclic order of darts leaving ``v``.
    """

    def __init__(
        self,
        names: Sequence,
        ends: Sequence[tuple[int, int]],
        rotation: Sequence[Sequence[int]],
        edge_names: Sequence | None = None,
    ):
        self.names = tuple(names)
        self.ends = tuple((int(u), int(v)) for u, v in ends)
        self.edge_names = tuple(edge_names) if edge_names is not None else tuple(range(len(self.ends)))
        n = len(self.names)
        m = len(self.ends)
        if len(rotation) != n:
            raise ValueError("rotation must list every vertex")
        tail = [0] * (2 * m)
        for e, (u, v) in enumerate(self.ends):
            if u == v:
                raise ValueError(f"edge {self.edge_names[e]!r} is a loop")
            tail[2 * e] = u
            tail[2 * e + 1] = v
        self.tail = tail
        self.head = [tail[d ^ 1] for d in range(2 * m)]

        self.rotation = tuple(tuple(r) for r in rotation)
        pos = [-1] * (2 * m)
        for v, darts in enumerate(self.rotation):
            if len(darts) > 4:
                raise DegreeExceeded(f"vertex {self.names[v]!r} has degree {len(darts)}")
            for i, d in enumerate(darts):
                if not 0 <= d < 2 * m or tail[d] != v or pos[d] != -1:
                    raise ValueError(f"rotation of vertex {self.names[v]!r} is inconsistent")
                pos[d] = i
        if -1 in pos:
            raise ValueError("rotation omits a dart")
        self.pos = pos

        if n and not self._connected():
            raise NotConnected("graph is not connected")

        succ = [0] * (2 * m)
        for d in range(2 * m):
            h = self.head[d]
            r = self.rotation[h]
            succ[d] = r[(pos[d ^ 1] - 1) % len(r)]
        self.succ = succ

        face_of = [-1] * (2 * m)
        faces: list[tuple[int, ...]] = []
        for d0 in range(2 * m):
            if face_of[d0] != -1:
                continue
            walk = []
            d = d0
            while face_of[d] == -1:
                face_of[d] = len(faces)
                walk.append(d)
                d = succ[d]
            faces.append(tuple(walk))
        self.faces = tuple(faces)
        self.face_of = face_of
        if n and n - m + len(faces) != 2:
            raise EulerViolation(
                f"|V| - |E| + |F| = {n} - {m} + {len(faces)} != 2; rotation system is not planar"
            )

    def _connected(self) -> bool:
        seen = [False] * len(self.names)
        seen[0] = True
        stack = [0]
        while stack:
            v = stack.pop()
            for d in self.rotation[v]:
                w = self.head[d]
                if not seen[w]:
                    seen[w] = True
                    stack.append(w)
        return all(seen)

    @property
    def n_vertices(self) -> int:
        return len(self.names)

    @property
    def n_edges(self) -> int:
        return len(self.ends)

    @property
    def n_darts(self) -> int:
        return 2 * len(self.ends)

    def degree(self, v: int) -> int:
        return len(self.rotation[v])

    def next_cw(self, d: int) -> int:
        r = self.rotation[self.tail[d]]
        return r[(self.pos[d] + 1) % len(r)]

    def vertex_index(self, name) -> int:
        return self.names.index(name)

    def dart_key(self, d: int) -> str:
        return f"{self.edge_names[d >> 1]}:{'-' if d & 1 else '+'}"

    def __repr__(self) -> str:
        return f"EmbeddedGraph(|V|={self.n_vertices}, |E|={self.n_edges}, |F|={len(self.faces)})"


def build(spec: dict) -> EmbeddedGraph:
    """Build an :class:`EmbeddedGraph` from a plain description.

    ``spec`` holds ``vertices`` (ids), ``edges`` (``[edge_id, u, v]``
    triples) and ``rotations`` (vertex id -> clockwise incident edge ids).
    """
    names = list(spec["vertices"])
    index = {name: i for i, name in enumerate(names)}
    if len(index) != len(names):
        raise ValueError("duplicate vertex id")
    edge_names = []
    ends = []
    eindex = {}
    for eid, u, v in spec["edges"]:
        if eid in eindex:
            raise ValueError(f"duplicate edge id {eid!r}")
        if u not in index or v not in index:
            raise ValueError(f"edge {eid!r} references an unknown vertex")
        eindex[eid] = len(ends)
        edge_names.append(eid)
        ends.append((index[u], index[v]))
    rotation = []
    for name in names:
        darts = []
        for eid in spec["rotations"].get(name, []):
            if eid not in eindex:
                raise ValueError(f"rotation of {name!r} names unknown edge {eid!r}")
            e = eindex[eid]
            u, v = ends[e]
            darts.append(2 * e if u == index[name] else 2 * e + 1)
            if index[name] not in (u, v):
                raise ValueError(f"edge {eid!r} is not incident to {name!r}")
        if len(darts) > 4:
            raise DegreeExceeded(f"vertex {name!r} has degree {len(darts)}")
        rotation.append(darts)
    return EmbeddedGraph(names, ends, rotation, edge_names)


@dataclass(frozen=True)
class Violation:
    kind: str  # "vertex", "face", "angle" or "reference"
    where: object
    observed: int
    expected: int | None = None

    def __str__(self) -> str:
        exp = "" if self.expected is None else f" (expected {self.expected})"
        return f"{self.kind} {self.where}: observed {self.observed}{exp}"


class OrthoRadialRep:
    """Angle assignment plus outer face, central face and reference dart."""

    def __init__(
        self,
        graph: EmbeddedGraph,
        angle: Sequence[int],
        outer: int,
        central: int,
        ref: int,
    ):
        if len(angle) != graph.n_darts:
            raise ValueError("one angle per dart required")
        self.graph = graph
        self.angle = tuple(int(a) for a in angle)
        self.outer = int(outer)
        self.central = int(central)
        self.ref = int(ref)

    # Sector angle clockwise from outgoing dart o to the next outgoing dart.
    @cached_property
    def sector(self) -> tuple[int, ...]:
        g = self.graph
        return tuple(self.angle[g.next_cw(o) ^ 1] for o in range(g.n_darts))

    @cached_property
    def directions(self) -> tuple[int, ...]:
        return tuple(directions(self))

    def face_rotation(self, f: int) -> int:
        return sum(2 - self.angle[d] // 90 for d in self.graph.faces[f])

    def turn_at(self, d: int) -> int:
        """Turn at ``head(d)`` along the face walk through ``d``."""
        return 2 - self.angle[d] // 90

    def __repr__(self) -> str:
        g = self.graph
        return f"OrthoRadialRep({g!r}, outer={self.outer}, central={self.central}, ref={g.dart_key(self.ref)})"


def rotation_turn(rep: OrthoRadialRep, d_in: int, d_out: int) -> int:
    """Turn value (+1 right, 0 straight, -1 left, -2 reversal) from ``d_in`` to ``d_out``."""
    g = rep.graph
    if g.head[d_in] != g.tail[d_out]:
        raise NotIncident(f"dart {g.dart_key(d_in)} does not end where {g.dart_key(d_out)} starts")
    r = g.rotation[g.tail[d_out]]
    k = len(r)
    i = g.pos[d_out]
    j = g.pos[d_in ^ 1]
    steps = (j - i) % k or k
    total = 0
    for s in range(steps):
        total += rep.sector[r[(i + s) % k]]
    return 2 - total // 90


def path_rotation(rep: OrthoRadialRep, path: Sequence[int], cyclic: bool = False) -> int:
    """Sum of turns at the internal vertices of ``path``.

    With ``cyclic=True`` the path is a closed walk and the turn at its
    start vertex counts as well.
    """
    g = rep.graph
    total = 0
    for a, b in zip(path, path[1:]):
        if g.head[a] != g.tail[b]:
            raise Disconnected(f"{g.dart_key(a)} and {g.dart_key(b)} are not consecutive")
        total += rotation_turn(rep, a, b)
    if cyclic and path:
        if g.head[path[-1]] != g.tail[path[0]]:
            raise Disconnected("walk is not closed")
        total += rotation_turn(rep, path[-1], path[0])
    return total


def check_conditions(rep: OrthoRadialRep) -> list[Violation]:
    g = rep.graph
    out: list[Violation] = []
    for d, a in enumerate(rep.angle):
        if a not in ANGLES or (a == 360 and g.degree(g.head[d]) != 1):
            out.append(Violation("angle", g.dart_key(d), a))
    sums = [0] * g.n_vertices
    for d, a in enumerate(rep.angle):
        sums[g.head[d]] += a
    for v, s in enumerate(sums):
        if s != 360:
            out.append(Violation("vertex", g.names[v], s, 360))
    for f in range(len(g.faces)):
        rot = rep.face_rotation(f)
        if f == rep.outer and f == rep.central:
            want = -4
        elif f in (rep.outer, rep.central):
            want = 0
        else:
            want = 4
        if rot != want:
            out.append(Violation("face", face_key(g, f), rot, want))
    if g.face_of[rep.ref ^ 1] != rep.outer:
        out.append(Violation("reference", g.dart_key(rep.ref), g.face_of[rep.ref ^ 1], rep.outer))
    return out


def face_key(g: EmbeddedGraph, f: int) -> str:
    return min(g.dart_key(d) for d in g.faces[f])


def directions(rep: OrthoRadialRep) -> list[int]:
    """Direction of every dart, with the reference dart pointing right."""
    g = rep.graph
    dirs = [-1] * g.n_darts
    seen = [False] * g.n_vertices

    def fan(d0: int, value: int) -> None:
        r = g.rotation[g.tail[d0]]
        k = len(r)
        i0 = g.pos[d0]
        for s in range(k):
            o = r[(i0 + s) % k]
            if dirs[o] != -1 and dirs[o] != value:
                raise InconsistentDirections(f"dart {g.dart_key(o)} gets {value} and {dirs[o]}")
            dirs[o] = value
            value = (value + rep.sector[o] // 90) % 4

    start = g.tail[rep.ref]
    seen[start] = True
    fan(rep.ref, 0)
    queue = deque([start])
    while queue:
        v = queue.popleft()
        for o in g.rotation[v]:
            w = g.head[o]
            want = (dirs[o] + 2) % 4
            if not seen[w]:
                seen[w] = True
                fan(o ^ 1, want)
                queue.append(w)
            elif dirs[o ^ 1] != want:
                raise InconsistentDirections(
                    f"dart {g.dart_key(o ^ 1)} points {dirs[o ^ 1]}, its twin implies {want}"
                )
    return dirs


def _check_walk(g: EmbeddedGraph, cycle: Sequence[int]) -> None:
    if not cycle:
        raise NotACycle("empty walk")
    for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
        if g.head[a] != g.tail[b]:
            raise NotACycle(f"{g.dart_key(a)} is not followed by {g.dart_key(b)}")


def _crossing_free(g: EmbeddedGraph, cycle: Sequence[int]) -> None:
    visits: dict[int, list[tuple[int, int]]] = {}
    k = len(cycle)
    for i in range(k):
        d_in, d_out = cycle[i - 1], cycle[i]
        visits.setdefault(g.tail[d_out], []).append((d_in ^ 1, d_out))
    for v, pairs in visits.items():
        if len(pairs) < 2:
            continue
        deg = g.degree(v)
        for i in range(len(pairs)):
            for j in range(i + 1, len(pairs)):
                a1, b1 = (g.pos[x] for x in pairs[i])
                a2, b2 = (g.pos[x] for x in pairs[j])
                if len({a1, b1, a2, b2}) < 4:
                    continue  # visits sharing a dart touch without crossing

                def between(x: int, lo: int, hi: int) -> bool:
                    return 0 < (x - lo) % deg < (hi - lo) % deg

                if between(a2, a1, b1) != between(b2, a1, b1):
                    raise SelfCrossing(f"walk crosses itself at {g.names[v]!r}")


def is_essential(rep: OrthoRadialRep, cycle: Sequence[int]) -> bool:
    """True iff the closed walk separates the central face (on its right) from the outer face."""
    g = rep.graph
    _check_walk(g, cycle)
    _crossing_free(g, cycle)
    if rep.outer == rep.central:
        return False
    cut = {d >> 1 for d in cycle}
    seen = {rep.central}
    queue = deque([rep.central])
    while queue:
        f = queue.popleft()
        for d in g.faces[f]:
            if d >> 1 in cut:
                continue
            h = g.face_of[d ^ 1]
            if h not in seen:
                seen.add(h)
                queue.append(h)
    if rep.outer in seen:
        return False
    return any(g.face_of[d] in seen for d in cycle)


def _bfs_path(g: EmbeddedGraph, start: int, targets: set, banned: int) -> list[int] | None:
    parent: dict[int, int] = {start: -1}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for d in sorted(g.rotation[x]):
            y = g.head[d]
            if y in parent or y == banned:
                continue
            parent[y] = d
            if y in targets:
                path = []
                while y != start:
                    path.append(parent[y])
                    y = g.tail[parent[y]]
                return path[::-1]
            queue.append(y)
    return None


def elementary_path(rep: OrthoRadialRep, cycle: Sequence[int]) -> list[int]:
    """Shortest dart path to the cycle meeting it only at its end.

    The path starts at ``head(ref)`` and avoids ``tail(ref)``, so that
    ``ref + path`` is a simple path.  When no such path exists it starts at
    ``tail(ref)`` instead; see :func:`labels_along` for how that is read.
    """
    g = rep.graph
    on_cycle = {g.tail[d] for d in cycle}
    s = g.head[rep.ref]
    t = g.tail[rep.ref]
    if s in on_cycle:
        return []
    path = _bfs_path(g, s, on_cycle, t)
    if path is not None:
        return path
    if t in on_cycle:
        return []
    path = _bfs_path(g, t, on_cycle, -1)
    if path is None:
        raise Unreachable("no path from the reference edge to the cycle")
    return path


def sweep(rep: OrthoRadialRep, a: int, b: int) -> int:
    """Quarter turns swept clockwise from outgoing dart ``a`` to ``b`` at their common tail."""
    g = rep.graph
    total = 0
    while a != b:
        total += rep.sector[a]
        a = g.next_cw(a)
    return total // 90


@dataclass(frozen=True)
class CycleLabeling:
    """Labels of an essential cycle; ``labels[i]`` belongs to ``cycle[i]``."""

    cycle: tuple[int, ...]
    labels: tuple[int, ...]
    witness_path: tuple[int, ...] = field(default=())

    def label_of(self, dart: int) -> int:
        return self.labels[self.cycle.index(dart)]

    @property
    def decreasing(self) -> bool:
        return min(self.labels) >= 0 and max(self.labels) > 0

    @property
    def increasing(self) -> bool:
        return max(self.labels) <= 0 and min(self.labels) < 0

    @property
    def monotone(self) -> bool:
        return min(self.labels) >= 0 or max(self.labels) <= 0


def labels_along(rep: OrthoRadialRep, cycle: Sequence[int], path: Sequence[int]) -> tuple[int, ...]:
    """Labels of ``cycle`` computed through ``path``.

    A path starting at ``head(ref)`` is read as ``ref + path``.  A path
    starting at ``tail(ref)`` (or an empty one when only ``tail(ref)`` lies
    on the cycle) is read as a walk entering ``tail(ref)`` from the outer
    face just left of ``ref``: its first dart ``q`` then contributes the
    clockwise sweep from ``ref`` to ``q``, which keeps the count free of
    ambiguous reversals at the ends of the reference edge.
    """
    g = rep.graph
    s, t = g.head[rep.ref], g.tail[rep.ref]
    on_cycle = {g.tail[d] for d in cycle}
    from_tail = (path and g.tail[path[0]] == t) or (not path and s not in on_cycle)
    if path:
        v = g.head[path[-1]]
    else:
        v = t if from_tail else s
    starts = [i for i, d in enumerate(cycle) if g.tail[d] == v]
    if not starts:
        raise NotIncident("path does not end on the cycle")
    i0 = starts[0]
    k = len(cycle)
    if from_tail:
        walk = [*path, cycle[i0]]
        cur = sweep(rep, rep.ref, walk[0]) + path_rotation(rep, walk)
    else:
        cur = path_rotation(rep, [rep.ref, *path, cycle[i0]])
    labels = [0] * k
    labels[i0] = cur
    for step in range(1, k):
        i = (i0 + step) % k
        cur += rotation_turn(rep, cycle[i - 1], cycle[i])
        labels[i] = cur
    return tuple(labels)


def labeling(rep: OrthoRadialRep, cycle: Sequence[int], check: bool = True) -> CycleLabeling:
    cycle = tuple(cycle)
    if check and not is_essential(rep, cycle):
        raise NotEssential("labels are defined for essential cycles only")
    path = elementary_path(rep, cycle)
    return CycleLabeling(cycle, labels_along(rep, cycle, path), tuple(path))


def cycle_from_vertices(g: EmbeddedGraph, vertices: Iterable) -> list[int]:
    """Dart sequence of the closed walk through the named vertices."""
    idx = [g.vertex_index(v) for v in vertices]
    out = []
    for a, b in zip(idx, idx[1:] + idx[:1]):
        for d in g.rotation[a]:
            if g.head[d] == b:
                out.append(d)
                break
        else:
            raise NotACycle(f"no edge {g.names[a]!r}-{g.names[b]!r}")
    return out
