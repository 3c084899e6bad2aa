"""Rectangulation of valid representations.

Work happens on a :class:`Workspace`, a mutable copy of the representation
that stores a direction per dart instead of angles.  In a valid
representation every vertex has at most one outgoing dart per direction,
the clockwise rotation is the order by direction, and every angle follows
from the directions of the two darts bounding it.  An augmentation then
amounts to subdividing an edge and adding an edge with a prescribed
direction, and both can be undone cheaply.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from . import SearchKernel
from .core import EmbeddedGraph, OrthoRadialRep, check_conditions
from .errors import (
    InconsistentMap,
    NoCandidates,
    NotACandidate,
    NotValid,
    PreconditionUnmet,
)
from .transform import normalize
from .validity import is_valid

RIGHT, DOWN, LEFT, UP = range(4)


def _turn(dirs, a: int, b: int) -> int:
    if b == a ^ 1:
        return -2
    return ((dirs[b] - dirs[a] + 1) & 3) - 1


class Workspace:
    """Mutable direction-based representation with an undo log."""

    def __init__(self, rep: OrthoRadialRep):
        g = rep.graph
        bad = check_conditions(rep)
        if bad:
            raise PreconditionUnmet(f"conditions violated: {bad[0]}")
        self.names = [str(v) for v in g.names]
        self.edge_names = [str(e) for e in g.edge_names]
        self.tail = list(g.tail)
        self.head = list(g.head)
        self.dirs = list(rep.directions)
        self.out = [[-1] * 4 for _ in self.names]
        for d in range(g.n_darts):
            slot = self.out[self.tail[d]]
            if slot[self.dirs[d]] != -1:
                raise PreconditionUnmet("two darts leave a vertex in the same direction")
            slot[self.dirs[d]] = d
        self.ref = rep.ref
        self.central_dart = g.faces[rep.central][0]
        self.n_input_vertices = len(self.names)
        self.n_input_edges = len(self.edge_names)
        # Input edge each edge is a piece of, or -1 for added edges.
        self.origin = list(range(len(self.edge_names)))
        self.vertex_kind = ["original"] * len(self.names)
        self.role: dict[int, str] = {}
        self.log: list = []
        self._vnames = set(self.names)
        self._enames = set(self.edge_names)
        self._counter = 0

    # -- basic queries -----------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.names)

    @property
    def n_darts(self) -> int:
        return len(self.tail)

    def rotation(self, v: int) -> list[int]:
        return [d for d in self.out[v] if d != -1]

    def succ(self, d: int) -> int:
        slot = self.out[self.head[d]]
        k = self.dirs[d ^ 1]
        for s in (1, 2, 3, 4):
            o = slot[(k - s) & 3]
            if o != -1:
                return o
        raise AssertionError("isolated vertex")

    def angle(self, d: int) -> int:
        q = (self.dirs[d ^ 1] - self.dirs[self.succ(d)]) & 3
        return 90 * (q or 4)

    def turn_at(self, d: int) -> int:
        """Turn at ``head(d)`` along the face walk through ``d``."""
        return 2 - self.angle(d) // 90

    def face(self, d: int) -> list[int]:
        walk = [d]
        x = self.succ(d)
        while x != d:
            walk.append(x)
            x = self.succ(x)
        return walk

    def face_rotation(self, d: int) -> int:
        return sum(self.turn_at(x) for x in self.face(d))

    def is_rectangle(self, d: int) -> bool:
        turns = [self.turn_at(x) for x in self.face(d)]
        nonzero = [t for t in turns if t]
        if d in self.face(self.ref ^ 1) or d in self.face(self.central_dart):
            return not nonzero
        return nonzero == [1, 1, 1, 1]

    def all_faces(self) -> list[list[int]]:
        seen = [False] * self.n_darts
        faces = []
        for d0 in range(self.n_darts):
            if seen[d0]:
                continue
            walk = self.face(d0)
            for x in walk:
                seen[x] = True
            faces.append(walk)
        return faces

    # -- mutation ------------------------------------------------------------

    def _fresh(self, taken: set, base: str) -> str:
        while True:
            self._counter += 1
            name = f"{base}{self._counter}"
            if name not in taken:
                taken.add(name)
                return name

    def add_vertex(self, kind: str = "helper", role: str | None = None) -> int:
        if role is not None:
            self.role[len(self.names)] = role
        self.names.append(self._fresh(self._vnames, "z"))
        self.out.append([-1] * 4)
        self.vertex_kind.append(kind)
        self.log.append(("vertex",))
        return len(self.names) - 1

    def corner_dart(self, a: int, direction: int) -> int:
        """Dart entering ``a`` whose corner contains the free slot ``direction``."""
        slot = self.out[a]
        for s in (1, 2, 3):
            o = slot[(direction + s) & 3]
            if o != -1:
                return o ^ 1
        raise AssertionError("isolated vertex")

    def add_edge(self, a: int, b: int, direction: int, origin: int = -1, track: bool = True) -> int:
        """Add edge ``a -> b`` pointing in ``direction``; returns the dart ``a -> b``.

        Joining two vertices that do not share the face around the chosen
        slots would break planarity and raises :class:`PreconditionUnmet`.
        """
        back = (direction + 2) & 3
        if self.out[a][direction] != -1 or self.out[b][back] != -1:
            raise PreconditionUnmet("direction slot already taken")
        splits = track and any(x != -1 for x in self.out[a]) and any(x != -1 for x in self.out[b])
        if splits:
            was_outer, was_central = self.face_flags(self.corner_dart(a, direction))
        d = len(self.tail)
        self.tail += [a, b]
        self.head += [b, a]
        self.dirs += [direction, back]
        self.out[a][direction] = d
        self.out[b][back] = d + 1
        self.edge_names.append(self._fresh(self._enames, "a"))
        self.origin.append(origin)
        self.log.append(("edge", self.central_dart, d))
        if splits:
            if d + 1 in self.face(d):
                self.rollback(len(self.log) - 1)
                raise PreconditionUnmet("edge would join two different faces")
            self._after_split(d, was_outer, was_central)
        return d

    def subdivide(self, d: int) -> tuple[int, int]:
        """Split the edge of ``d = v -> w`` at a new vertex ``z``.

        ``d`` becomes ``v -> z`` and the returned dart ``nd`` runs ``z -> w``;
        all other dart ids are unchanged.
        """
        w = self.head[d]
        z = self.add_vertex("subdivision")
        nd = len(self.tail)
        dr = self.dirs[d]
        self.tail += [z, w]
        self.head += [w, z]
        self.dirs += [dr, (dr + 2) & 3]
        self.edge_names.append(self._fresh(self._enames, "a"))
        self.origin.append(self.origin[d >> 1])
        # d keeps v -> z; twin(d) becomes z -> v; nd^1 is w -> z.
        self.head[d] = z
        self.tail[d ^ 1] = z
        self.out[w][(dr + 2) & 3] = nd ^ 1
        self.out[z][dr] = nd
        self.out[z][(dr + 2) & 3] = d ^ 1
        self.log.append(("split", d, nd))
        return z, nd

    def mark(self) -> int:
        return len(self.log)

    def edges_since(self, mark: int) -> list[int]:
        """Darts ``a -> b`` of the edges added after ``mark``."""
        return [op[2] for op in self.log[mark:] if op[0] == "edge"]

    def rollback(self, mark: int) -> None:
        while len(self.log) > mark:
            op = self.log.pop()
            if op[0] == "vertex":
                self.role.pop(len(self.names) - 1, None)
                self._vnames.discard(self.names.pop())
                self.out.pop()
                self.vertex_kind.pop()
            elif op[0] == "edge":
                self.central_dart = op[1]
                d = len(self.tail) - 2
                a, b = self.tail[d], self.head[d]
                self.out[a][self.dirs[d]] = -1
                self.out[b][self.dirs[d + 1]] = -1
                del self.tail[d:], self.head[d:], self.dirs[d:]
                self._enames.discard(self.edge_names.pop())
                self.origin.pop()
            else:
                _, d, nd = op
                z, w = self.tail[nd], self.head[nd]
                dr = self.dirs[d]
                self.head[d] = w
                self.tail[d ^ 1] = w
                self.out[w][(dr + 2) & 3] = d ^ 1
                self.out[z][dr] = -1
                self.out[z][(dr + 2) & 3] = -1
                del self.tail[nd:], self.head[nd:], self.dirs[nd:]
                self._enames.discard(self.edge_names.pop())
                self.origin.pop()

    # -- special faces -------------------------------------------------------

    def _after_split(self, d: int, was_outer: bool, was_central: bool) -> None:
        """Re-anchor the central face after new edge ``d`` cut a face in two."""
        if was_outer and self.face_rotation(self.ref ^ 1) not in (0, -4):
            raise InconsistentMap("outer face lost its rotation")
        if not was_central:
            return
        pieces = [(self.face_rotation(p), p) for p in (d, d ^ 1)]
        both = [p for r, p in pieces if r == -4]
        if both:
            self.central_dart = both[0]
            return
        outer_walk = set(self.face(self.ref ^ 1))
        keep = [p for r, p in pieces if r == 0 and p not in outer_walk]
        if not keep:
            raise InconsistentMap("central face has no piece with rotation 0")
        self.central_dart = keep[0]

    def face_flags(self, d: int) -> tuple[bool, bool]:
        walk = set(self.face(d))
        return (self.ref ^ 1) in walk, self.central_dart in walk

    def corner_slots(self, d: int) -> list[int]:
        """Free directions inside the corner at ``head(d)`` in the face of ``d``."""
        p, q = self.dirs[d ^ 1], self.dirs[self.succ(d)]
        width = (p - q) & 3 or 4
        return [(q + i) & 3 for i in range(1, width)]

    def _ring(self, anchor: int, side: int, role: str) -> int:
        """Hang a turn-free three-vertex ring off ``anchor`` towards ``side``.

        Returns the closing ring dart; it points right and has the region
        below the ring on its right.
        """
        ring = [self.add_vertex(role=role) for _ in range(3)]
        self.add_edge(anchor, ring[0], side)
        self.add_edge(ring[0], ring[1], RIGHT)
        self.add_edge(ring[1], ring[2], RIGHT)
        return self.add_edge(ring[2], ring[0], RIGHT, track=False)

    def add_rings(self) -> None:
        """Make outer and central face turn-free by adding helper rings.

        A horizontal ray inside a regular face never wraps around the
        cylinder, but one inside the outer or central face may, and then
        the candidate order around a port loses its meaning.  A ring above
        the outer face, hung from a subdivision of the reference edge,
        takes over as reference without changing any label.  A ring below
        the central face is kept only where its labels come out 0, which
        keeps the representation valid.
        """
        shared = self.central_dart in self.face(self.ref ^ 1)
        if shared or any(self.turn_at(x) for x in self.face(self.ref ^ 1)):
            s, _ = self.subdivide(self.ref)
            d = self._ring(s, UP, "outer-ring")
            self.ref = d
            if shared:
                self.central_dart = d
        if not any(self.turn_at(x) for x in self.face(self.central_dart)):
            return
        for c in self.face(self.central_dart):
            if self.dirs[c] != RIGHT:
                continue
            mark = self.mark()
            t, _ = self.subdivide(c)
            d = self._ring(t, DOWN, "inner-ring")
            self.central_dart = d
            if not any(self.kernel().labels([d - 4, d - 2, d])):
                return
            self.rollback(mark)
        raise InconsistentMap("no place for a ring around the center")

    # -- export --------------------------------------------------------------

    def arrays(self):
        n = self.n_vertices
        rot_ptr = [0]
        rot = []
        for v in range(n):
            rot.extend(self.rotation(v))
            rot_ptr.append(len(rot))
        faces = self.all_faces()
        face_of = [0] * self.n_darts
        face_ptr = [0]
        face_darts = []
        for i, walk in enumerate(faces):
            for x in walk:
                face_of[x] = i
            face_darts.extend(walk)
            face_ptr.append(len(face_darts))
        pos = [0] * self.n_darts
        for v in range(n):
            lo = rot_ptr[v]
            for j in range(lo, rot_ptr[v + 1]):
                pos[rot[j]] = j - lo
        return n, rot_ptr, rot, pos, face_of, face_ptr, face_darts

    def kernel(self) -> SearchKernel:
        n, rot_ptr, rot, pos, face_of, face_ptr, face_darts = self.arrays()
        return SearchKernel(
            n, self.tail, self.head, rot_ptr, rot, pos, self.dirs, face_of, face_ptr, face_darts,
            face_of[self.ref ^ 1], face_of[self.central_dart], self.ref,
        )

    def to_rep(self) -> OrthoRadialRep:
        ends = [(self.tail[2 * e], self.head[2 * e]) for e in range(len(self.edge_names))]
        g = EmbeddedGraph(self.names, ends, [self.rotation(v) for v in range(self.n_vertices)], self.edge_names)
        angle = [self.angle(d) for d in range(self.n_darts)]
        return OrthoRadialRep(g, angle, g.face_of[self.ref ^ 1], g.face_of[self.central_dart], self.ref)


# -- ports, candidates and augmentations on a workspace -----------------------


def port_in_face(ws: Workspace, d0: int) -> int | None:
    """Entry dart of the first port of the face through ``d0``, or None.

    The face is read from its smallest dart id.
    """
    walk = ws.face(d0)
    i0 = walk.index(min(walk))
    walk = walk[i0:] + walk[:i0]
    bends = [(d, t) for d in walk if (t := ws.turn_at(d))]
    m = len(bends)
    for j, (d, t) in enumerate(bends):
        if t == -1 and m >= 3 and bends[(j + 1) % m][1] == 1 and bends[(j + 2) % m][1] == 1:
            return d
    return None


def candidate_darts(ws: Workspace, entry: int) -> list[int]:
    walk = ws.face(entry)
    found = []
    rot = 0
    for j in range(1, len(walk)):
        if j > 1:
            rot += ws.turn_at(walk[j - 1])
        if rot == 2:
            found.append(walk[j])
    if not found:
        raise NoCandidates(f"port at {ws.names[ws.head[entry]]} has no candidate edge")
    return found


def augment_at(ws: Workspace, entry: int, vw: int) -> tuple[int, int]:
    """Subdivide ``vw`` by ``z`` and connect the port to it; returns ``(z, uz)``."""
    D = ws.dirs[entry]
    if ws.dirs[vw] != (D + 1) & 3:
        raise NotACandidate(f"dart {vw} does not face the port")
    z, _ = ws.subdivide(vw)
    uz = ws.add_edge(ws.head[entry], z, D)
    return z, uz


def decreasing_through(ws: Workspace, uz: int) -> bool:
    """Whether a decreasing cycle uses ``uz`` forwards with label 0."""
    D = ws.dirs[uz]
    if D not in (RIGHT, LEFT):
        raise PreconditionUnmet("uz must be horizontal")
    # A left-pointing uz is handled in the flipped view, which amounts to
    # checking the reversed candidate cycle.
    return ws.kernel().search_from(uz, D == LEFT) is not None


def straight_run_reaches(ws: Workspace, start: int, target: int, direction: int) -> bool:
    x = start
    for _ in range(ws.n_vertices):
        d = ws.out[x][direction]
        if d == -1:
            return False
        x = ws.head[d]
        if x == target:
            return True
    return False


def on_straight_cycle(ws: Workspace, uz: int) -> bool:
    return straight_run_reaches(ws, ws.head[uz], ws.tail[uz], ws.dirs[uz])


def _probe(ws: Workspace, entry: int, vw: int) -> bool:
    mark = ws.mark()
    _, uz = augment_at(ws, entry, vw)
    try:
        return decreasing_through(ws, uz)
    finally:
        ws.rollback(mark)


@dataclass
class Resolution:
    """How a horizontal port was closed off."""

    kind: str  # "augment", "insert_w" or "insert_v"
    target: int  # candidate dart for "augment", vertex otherwise
    k: int = 1  # 1-based index of the candidate that settled the port
    uz: int = -1
    z: int = -1
    kstructure: "KStructure | None" = None


def resolve_pair(ws: Workspace, entry: int, ei: int, ej: int) -> Resolution:
    """Settle consecutive candidates where ``ei`` is decreasing and ``ej`` is not."""
    u, D = ws.head[entry], ws.dirs[entry]
    if D not in (RIGHT, LEFT):
        raise PreconditionUnmet("horizontal port expected")
    for kind, x in (("insert_w", ws.head[ei]), ("insert_v", ws.tail[ej])):
        # The run has to start at x, which leaves room for the closing edge.
        if ws.out[x][(D + 2) & 3] == -1 and straight_run_reaches(ws, x, u, D):
            uz = ws.add_edge(u, x, D)
            return Resolution(kind, x, uz=uz, z=x)
    z, uz = augment_at(ws, entry, ej)
    return Resolution("augment", ej, uz=uz, z=z)


def _first_candidate(ws: Workspace, entry: int) -> Resolution:
    vw = candidate_darts(ws, entry)[0]
    z, uz = augment_at(ws, entry, vw)
    return Resolution("augment", vw, uz=uz, z=z)


def _last_candidate(ws: Workspace, entry: int) -> Resolution:
    cands = candidate_darts(ws, entry)
    z, uz = augment_at(ws, entry, cands[-1])
    return Resolution("augment", cands[-1], k=len(cands), uz=uz, z=z)


def _is_vertical(ws: Workspace, entry: int) -> bool:
    return ws.dirs[entry] in (UP, DOWN)


def resolve_naive(ws: Workspace, entry: int) -> Resolution:
    """Try candidates in order with a full validity test each."""
    cands = candidate_darts(ws, entry)
    prev_decreasing = False
    for i, vw in enumerate(cands):
        mark = ws.mark()
        z, uz = augment_at(ws, entry, vw)
        verdict = is_valid(ws.to_rep()).verdict
        if verdict == "valid":
            return Resolution("augment", vw, k=i + 1, uz=uz, z=z)
        ws.rollback(mark)
        if verdict == "increasing" and prev_decreasing:
            res = resolve_pair(ws, entry, cands[i - 1], vw)
            if not is_valid(ws.to_rep()).valid:
                raise InconsistentMap("no valid way to close the port")
            res.k = i + 1
            return res
        prev_decreasing = verdict == "decreasing"
    raise NotValid("no candidate yields a valid augmentation")


def resolve_binary(ws: Workspace, entry: int) -> Resolution:
    if _is_vertical(ws, entry):
        return _first_candidate(ws, entry)
    cands = candidate_darts(ws, entry)
    if not _probe(ws, entry, cands[0]):
        z, uz = augment_at(ws, entry, cands[0])
        return Resolution("augment", cands[0], uz=uz, z=z)
    lo, hi = 0, len(cands) - 1
    if hi == 0:
        raise InconsistentMap("the only candidate closes a decreasing cycle")
    # Invariant: cands[lo] closes a decreasing cycle, cands[hi] does not.
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if _probe(ws, entry, cands[mid]):
            lo = mid
        else:
            hi = mid
    res = resolve_pair(ws, entry, cands[lo], cands[hi])
    res.k = hi + 1
    return res


def resolve_two_phase(ws: Workspace, entry: int) -> Resolution:
    if _is_vertical(ws, entry):
        return _first_candidate(ws, entry)
    cands = candidate_darts(ws, entry)
    i = 0
    while i < len(cands) - 1 and _probe(ws, entry, cands[i]):
        i += 1
    if i == 0:
        z, uz = augment_at(ws, entry, cands[0])
        res = Resolution("augment", cands[0], uz=uz, z=z)
    else:
        res = resolve_pair(ws, entry, cands[i - 1], cands[i])
    res.k = i + 1
    if res.kind == "augment" and res.k >= 4:
        res.kstructure = _phase_two(ws, entry, cands[: res.k], res.uz, res.z)
    return res


# -- the second phase -----------------------------------------------------------


@dataclass
class KStructure:
    """Paths R, T and B that replace ``uz`` when a port has many candidates.

    Directions are stated for a right-pointing ``uz``; for a left-pointing
    one every direction is turned by 180 degrees.

    ======  ==========================================
    R       r1 = u, ..., r6 = z, all right except r2r3
    r2r3    right if uz lies on an all-right cycle, else down
    T       t1 = r4, up, right, down, right, t5 on e1
    B       b1 = r5, up, right, down, right, b5 on e(k-1)
    ======  ==========================================

    Corner angles follow from these directions.  ``t5`` and ``b5`` are
    entered from the side of the candidate edge that faces the port.
    """

    R: tuple[int, ...]
    T: tuple[int, ...]
    B: tuple[int, ...]
    r2r3: int
    f1: int  # first dart of T; its face lies between T and B
    f2: int  # twin of that dart; its face lies left of T


_T_SHAPE = (UP, RIGHT, DOWN, RIGHT)


def _phase_two(ws: Workspace, entry: int, cands: list[int], uz: int, z: int) -> KStructure:
    D = ws.dirs[uz]
    turned = lambda x: (x + D) & 3  # noqa: E731
    u = ws.tail[uz]
    r2r3 = RIGHT if on_straight_cycle(ws, uz) else DOWN
    if ws.log[-1][0] != "edge" or len(ws.tail) - 2 != uz:
        raise PreconditionUnmet("uz must be the most recent edge")
    ws.rollback(len(ws.log) - 1)

    R = [u] + [ws.add_vertex(role=f"R{i}") for i in range(2, 6)] + [z]
    for a, b, d in zip(R, R[1:], (RIGHT, r2r3, RIGHT, RIGHT, RIGHT)):
        ws.add_edge(a, b, turned(d))

    def attach(start: int, target_dart: int, name: str) -> tuple[int, ...]:
        inner = [ws.add_vertex(role=f"{name}{i}") for i in range(2, 5)]
        end, _ = ws.subdivide(target_dart)
        path = [start, *inner, end]
        first = -1
        for a, b, d in zip(path, path[1:], _T_SHAPE):
            dart = ws.add_edge(a, b, turned(d))
            if first == -1:
                first = dart
        return tuple(path), first

    T, t_first = attach(R[3], cands[0], "T")
    B, _ = attach(R[4], cands[-2], "B")
    k = KStructure(tuple(R), T, B, r2r3, t_first, t_first ^ 1)

    _settle_region(ws, [k.f1], _greedy)
    _settle_region(ws, [k.f2], resolve_binary)
    return k


def _greedy(ws: Workspace, entry: int) -> Resolution:
    if _is_vertical(ws, entry):
        return _first_candidate(ws, entry)
    return _last_candidate(ws, entry)


# -- driving loop ---------------------------------------------------------------


def _settle_region(ws: Workspace, seeds, resolve) -> int:
    """Rectangulate every face reachable by splitting the faces of ``seeds``."""
    import heapq

    heap = sorted({min(ws.face(d)) for d in seeds})
    steps = 0
    while heap:
        d = heapq.heappop(heap)
        walk = ws.face(d)
        if min(walk) != d:
            continue
        entry = port_in_face(ws, d)
        if entry is None:
            if not ws.is_rectangle(d):
                raise InconsistentMap(f"face through dart {d} has no port but is not a rectangle")
            continue
        mark = ws.mark()
        resolve(ws, entry)
        steps += 1
        # Only the two sides of inserted edges lie inside the face; the far
        # side of a subdivided edge is untouched apart from a straight corner.
        fresh = {min(ws.face(x ^ side)) for x in ws.edges_since(mark) for side in (0, 1)}
        for x in fresh:
            heapq.heappush(heap, x)
    return steps


MODES = {"naive": resolve_naive, "binary": resolve_binary, "two_phase": resolve_two_phase}


@dataclass
class AugmentMap:
    """Relation between a rectangulated representation and its input.

    ``vertices`` maps every added vertex to ``(kind, origin)`` where kind is
    ``"subdivision"`` (origin names the input edge it lies on) or
    ``"helper"`` (origin is a structural role such as ``"T3"``, or None).
    ``edges`` maps every edge of the output to the input edge it is a piece
    of, or None for added edges.  ``input_vertices`` and ``input_edges``
    (name to ``(tail, head)``) describe the input so that drawings can be
    projected back onto it.
    """

    vertices: dict = field(default_factory=dict)
    edges: dict = field(default_factory=dict)
    input_vertices: list = field(default_factory=list)
    input_edges: dict = field(default_factory=dict)

    @property
    def empty(self) -> bool:
        return not self.vertices and all(k == v for k, v in self.edges.items())

    def pieces(self, edge) -> list:
        return [e for e, o in self.edges.items() if o == edge]

    def to_json(self) -> str:
        doc = {
            "vertices": {str(v): {"kind": k, "origin": o} for v, (k, o) in self.vertices.items()},
            "edges": {str(e): o for e, o in self.edges.items()},
            "input_vertices": list(self.input_vertices),
            "input_edges": {e: list(ab) for e, ab in self.input_edges.items()},
        }
        return json.dumps(doc, indent=1, sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "AugmentMap":
        doc = json.loads(text)
        return cls(
            {v: (x["kind"], x["origin"]) for v, x in doc["vertices"].items()},
            dict(doc["edges"]),
            list(doc.get("input_vertices", [])),
            {e: tuple(ab) for e, ab in doc.get("input_edges", {}).items()},
        )


def _augment_map(ws: Workspace, norm: OrthoRadialRep, nmap) -> AugmentMap:
    ng = norm.graph
    orig_edges = {str(e) for e in nmap.original.graph.edge_names}
    piece_of = {}
    for e, pieces in nmap.subdivided_edges.items():
        for p in pieces:
            piece_of[str(p)] = str(e)
    # Origin of each normalized edge in terms of input edges.
    norm_origin = []
    for e in ng.edge_names:
        e = str(e)
        norm_origin.append(piece_of.get(e, e if e in orig_edges else None))
    og = nmap.original.graph
    amap = AugmentMap(
        input_vertices=[str(v) for v in og.names],
        input_edges={str(e): (str(og.names[a]), str(og.names[b])) for e, (a, b) in zip(og.edge_names, og.ends)},
    )
    for i, name in enumerate(ws.edge_names):
        o = ws.origin[i]
        amap.edges[name] = norm_origin[o] if o >= 0 else None
    for e, pieces in nmap.subdivided_edges.items():
        ends = [set(ng.ends[ng.edge_names.index(p)]) for p in pieces]
        (mid,) = ends[0] & ends[1]
        amap.vertices[str(ng.names[mid])] = ("subdivision", str(e))
    for name in nmap.added_vertices:
        amap.vertices.setdefault(str(name), ("helper", None))
    for v in range(ws.n_input_vertices, ws.n_vertices):
        if ws.vertex_kind[v] == "subdivision":
            # The dart leaving a subdivision vertex in either direction names its edge.
            origin = norm_origin[ws.origin[ws.rotation(v)[0] >> 1]]
            amap.vertices[ws.names[v]] = ("subdivision", origin) if origin else ("helper", ws.role.get(v))
        else:
            amap.vertices[ws.names[v]] = ("helper", ws.role.get(v))
    return amap


def rectangulate(rep: OrthoRadialRep, mode: str = "two_phase", observe=None) -> tuple[OrthoRadialRep, AugmentMap]:
    """Augment a valid representation until every face is a rectangle.

    ``observe(ws, entry)``, if given, is called before each top-level port
    is resolved; it must leave the workspace as it found it.
    """
    if mode not in MODES:
        raise ValueError(f"unknown mode {mode!r}; pick one of {sorted(MODES)}")
    report = is_valid(rep)
    if not report.valid:
        raise NotValid(f"input has a {report.verdict} cycle")
    norm, nmap = normalize(rep)
    ws = Workspace(norm)
    ws.add_rings()
    resolve = MODES[mode]
    if observe is not None:
        inner = resolve

        def resolve(ws, entry):
            observe(ws, entry)
            return inner(ws, entry)

    _settle_region(ws, range(ws.n_darts), resolve)
    return ws.to_rep(), _augment_map(ws, norm, nmap)


# -- representation-level interface -------------------------------------------


@dataclass(frozen=True)
class Port:
    vertex: int
    face: int
    kind: str  # "vertical" or "horizontal"
    entry: int


@dataclass(frozen=True)
class CandidateList:
    port: Port
    edges: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class Augmentation:
    base: OrthoRadialRep
    port: Port
    target: int
    new_vertex: int
    new_edge: int
    result: OrthoRadialRep


def _port(ws: Workspace, rep: OrthoRadialRep, entry: int) -> Port:
    kind = "vertical" if _is_vertical(ws, entry) else "horizontal"
    return Port(ws.head[entry], rep.graph.face_of[entry], kind, entry)


def find_port(rep: OrthoRadialRep, f: int) -> Port | None:
    """First port of face ``f``, reading the face from its smallest dart."""
    ws = Workspace(rep)
    entry = port_in_face(ws, rep.graph.faces[f][0])
    return None if entry is None else _port(ws, rep, entry)


def candidates(rep: OrthoRadialRep, port: Port) -> CandidateList:
    return CandidateList(port, tuple(candidate_darts(Workspace(rep), port.entry)))


def augment(rep: OrthoRadialRep, port: Port, vw: int) -> Augmentation:
    ws = Workspace(rep)
    if vw not in candidate_darts(ws, port.entry):
        raise NotACandidate(f"dart {vw} is not a candidate of {rep.graph.names[port.vertex]}")
    z, uz = augment_at(ws, port.entry, vw)
    return Augmentation(rep, port, vw, z, uz, ws.to_rep())


def has_decreasing(rep_aug: OrthoRadialRep, uz: int) -> bool:
    """Whether the augmented representation has a decreasing cycle through ``uz``."""
    return decreasing_through(Workspace(rep_aug), uz)


def horizontal_path_resolution(rep: OrthoRadialRep, port: Port, ei: int, ej: int) -> tuple[str, int]:
    """Decide how to close ``port`` given consecutive candidates ``ei``, ``ej``.

    Returns ``("insert_w", w_i)``, ``("insert_v", v_j)`` for a horizontal
    edge from the port to that vertex, or ``("augment", ej)``.
    """
    if port.kind != "horizontal":
        raise PreconditionUnmet("horizontal port expected")
    ws = Workspace(rep)
    cands = candidate_darts(ws, port.entry)
    if ei not in cands or ej not in cands or cands.index(ej) != cands.index(ei) + 1:
        raise PreconditionUnmet("expected two consecutive candidates")
    res = resolve_pair(ws, port.entry, ei, ej)
    return res.kind, res.target


def resolve_port_binary(rep: OrthoRadialRep, port: Port) -> OrthoRadialRep:
    ws = Workspace(rep)
    resolve_binary(ws, port.entry)
    return ws.to_rep()


def lies_on_right_cycle(rep: OrthoRadialRep, uz: int) -> bool:
    ws = Workspace(rep)
    if ws.dirs[uz] != RIGHT:
        raise PreconditionUnmet("uz must point right")
    return on_straight_cycle(ws, uz)


def resolve_port_two_phase(rep: OrthoRadialRep, port: Port) -> tuple[OrthoRadialRep, Resolution]:
    """Close ``port`` with both phases; the resolution carries the K-structure if one was built."""
    if port.kind != "horizontal":
        raise PreconditionUnmet("horizontal port expected")
    ws = Workspace(rep)
    res = resolve_two_phase(ws, port.entry)
    return ws.to_rep(), res


def concave_corners(rep: OrthoRadialRep) -> dict[tuple[str, int], str]:
    """Every 270-degree corner, keyed by vertex name and incoming direction.

    The value is the kind of port the corner turns into once it is picked.
    """
    g = rep.graph
    dirs = rep.directions
    out = {}
    for d in range(g.n_darts):
        if rep.angle[d] == 270:
            kind = "vertical" if dirs[d] in (UP, DOWN) else "horizontal"
            out[(str(g.names[g.head[d]]), dirs[d])] = kind
    return out
