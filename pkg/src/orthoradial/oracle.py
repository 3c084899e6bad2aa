"""Brute-force ground truth and a generator that reads instances off cylinder drawings."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from .core import (
    CycleLabeling,
    EmbeddedGraph,
    OrthoRadialRep,
    Direction,
    is_essential,
    labels_along,
)
from .errors import CapExceeded, GenerationFailed, NotACycle, SelfCrossing
from .instance import rep_from_dict

LETTERS = {"R": 0, "D": 1, "L": 2, "U": 3}


@dataclass
class Drawing:
    """Vertices at cylinder grid points plus axis-aligned edges.

    ``edges`` holds ``(edge_id, u, v, direction)`` with the direction of
    ``u -> v`` as a :class:`Direction` value.
    """

    width: int
    coords: dict
    edges: list
    ref_edge: object = None

    def rep(self) -> OrthoRadialRep:
        return from_drawing(self.width, self.coords, self.edges, self.ref_edge)

    def col_displacement(self, rep: OrthoRadialRep, cycle) -> int:
        g = rep.graph
        total = 0
        for d in cycle:
            cu = self.coords[g.names[g.tail[d]]][0]
            cv = self.coords[g.names[g.head[d]]][0]
            dr = rep.directions[d]
            if dr == Direction.RIGHT:
                total += (cv - cu) % self.width
            elif dr == Direction.LEFT:
                total -= (cu - cv) % self.width
        return total

    def geometric_essential(self, rep: OrthoRadialRep, cycle) -> bool:
        return self.col_displacement(rep, cycle) == self.width


def from_drawing(width: int, coords: dict, edges, ref_edge=None) -> OrthoRadialRep:
    """Representation of a drawing; only edge directions and rows matter.

    The reference dart is ``ref_edge`` traversed rightwards, by default the
    lowest-id rightward dart on the topmost row carrying a horizontal edge.
    """
    names = list(coords)
    index = {v: i for i, v in enumerate(names)}
    ends = []
    edge_names = []
    dirs = []
    for eid, u, v, dr in edges:
        dr = LETTERS[dr] if isinstance(dr, str) else int(dr)
        ends.append((index[u], index[v]))
        edge_names.append(eid)
        dirs.extend((dr, (dr + 2) % 4))
    rotation = [[] for _ in names]
    for d in range(2 * len(ends)):
        rotation[ends[d >> 1][d & 1]].append(d)
    for r in rotation:
        r.sort(key=lambda d: dirs[d])
        for a, b in zip(r, r[1:]):
            if dirs[a] == dirs[b]:
                raise GenerationFailed("two edges leave a vertex in the same direction")
    g = EmbeddedGraph(names, ends, rotation, edge_names)
    angle = []
    for d in range(g.n_darts):
        q = (dirs[d ^ 1] - dirs[g.succ[d]]) % 4
        angle.append(90 * (q or 4))
    if ref_edge is None:
        right = [d for d in range(g.n_darts) if dirs[d] == 0]
        if not right:
            raise GenerationFailed("drawing has no horizontal edge")
        top = min(coords[names[g.tail[d]]][1] for d in right)
        ref = min(d for d in right if coords[names[g.tail[d]]][1] == top)
    else:
        e = edge_names.index(ref_edge)
        ref = 2 * e if dirs[2 * e] == 0 else 2 * e + 1
    outer = g.face_of[ref ^ 1]
    special = [f for f in range(len(g.faces)) if f != outer and _face_rot(g, angle, f) != 4]
    central = special[0] if special else outer
    return OrthoRadialRep(g, angle, outer, central, ref)


def _face_rot(g: EmbeddedGraph, angle, f: int) -> int:
    return sum(2 - angle[d] // 90 for d in g.faces[f])


def ring4() -> OrthoRadialRep:
    coords = {"v1": (0, 1), "v2": (1, 1), "v3": (2, 1), "v4": (3, 1)}
    edges = [("e1", "v1", "v2", "R"), ("e2", "v2", "v3", "R"), ("e3", "v3", "v4", "R"), ("e4", "v4", "v1", "R")]
    return from_drawing(4, coords, edges, "e1")


def spiral4() -> OrthoRadialRep:
    """The 4-cycle a,b,c,d turning +1, 0, -1, 0; its only essential cycle is decreasing."""
    return rep_from_dict({
        "vertices": ["a", "b", "c", "d"],
        "edges": [["ab", "a", "b"], ["bc", "b", "c"], ["cd", "c", "d"], ["da", "d", "a"]],
        "rotations": {"a": ["ab", "da"], "b": ["ab", "bc"], "c": ["bc", "cd"], "d": ["cd", "da"]},
        "angles": {
            "ab:+": 90, "bc:+": 180, "cd:+": 270, "da:+": 180,
            "ab:-": 180, "da:-": 90, "cd:-": 180, "bc:-": 270,
        },
        "outer": "ab:-",
        "central": "ab:+",
        "reference": "ab:+",
    })


def two_rings() -> OrthoRadialRep:
    """Two concentric rings joined by one radial edge."""
    coords = {
        "u": (0, 1), "p": (1, 1), "q": (2, 1), "v": (0, 2), "r": (1, 2), "s": (2, 2),
    }
    edges = [
        ("up", "u", "p", "R"), ("pq", "p", "q", "R"), ("qu", "q", "u", "R"),
        ("uv", "u", "v", "D"),
        ("vr", "v", "r", "R"), ("rs", "r", "s", "R"), ("sv", "s", "v", "R"),
    ]
    return from_drawing(3, coords, edges, "up")


# -- generator ---------------------------------------------------------------


def _grid_drawing(n: int, rng: random.Random) -> Drawing:
    W = rng.randint(3, max(3, int(math.sqrt(n)) + 2))
    H = max(2, math.ceil(1.4 * n / W))
    cells = [(c, r) for r in range(1, H + 1) for c in range(W)]
    cand = []
    for c, r in cells:
        cand.append(((c, r), ((c + 1) % W, r), 0))
        if r < H:
            cand.append(((c, r), (c, r + 1), 1))
    rng.shuffle(cand)
    parent = {x: x for x in cells}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    keep_extra = rng.uniform(0.15, 0.75)
    edges = []
    for a, b, dr in cand:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
            edges.append((a, b, dr))
        elif rng.random() < keep_extra:
            edges.append((a, b, dr))
    adj: dict = {x: {} for x in cells}  # vertex -> {neighbour: direction towards it}
    for a, b, dr in edges:
        adj[a][b] = dr
        adj[b][a] = (dr + 2) % 4

    def contract(v) -> bool:
        if len(adj[v]) != 2:
            return False
        (a, da), (b, db) = adj[v].items()
        if (da - db) % 4 != 2 or b in adj[a]:
            return False
        del adj[a][v], adj[b][v], adj[v]
        adj[a][b] = (da + 2) % 4
        adj[b][a] = da
        return True

    contract_p = rng.uniform(0.0, 0.6)
    for v in list(adj):
        if rng.random() < contract_p:
            contract(v)
    while len(adj) > n:
        leaves = [v for v in adj if len(adj[v]) == 1]
        if leaves:
            v = rng.choice(leaves)
            (a,) = adj[v]
            del adj[a][v], adj[v]
            continue
        straight = [v for v in adj if len(adj[v]) == 2]
        rng.shuffle(straight)
        if not any(contract(v) for v in straight):
            raise GenerationFailed("cannot shrink drawing")
    # Subdivisions need a free lattice point, so rows are refined first.
    scale = 2
    coords = {v: (v[0] * scale, v[1] * scale) for v in adj}
    W *= scale
    names = {v: f"v{i}" for i, v in enumerate(sorted(adj, key=lambda p: (p[1], p[0])))}
    out_edges = []
    seen = set()
    for a in adj:
        for b, dr in adj[a].items():
            if (b, a) in seen:
                continue
            seen.add((a, b))
            out_edges.append([names[a], names[b], dr])
    pos = {names[v]: coords[v] for v in adj}
    count = len(pos)
    taken = set(pos.values())
    tries = 0
    while count < n:
        tries += 1
        if tries > 50 * n:
            raise GenerationFailed("cannot subdivide to the requested size")
        i = rng.randrange(len(out_edges))
        a, b, dr = out_edges[i]
        (ca, ra), (cb, rb) = pos[a], pos[b]
        if dr in (0, 2):
            span = (cb - ca) % W if dr == 0 else (ca - cb) % W
            if span < 2:
                continue
            step = rng.randrange(1, span)
            c = (ca + step) % W if dr == 0 else (ca - step) % W
            pt = (c, ra)
        else:
            if abs(rb - ra) < 2:
                continue
            lo, hi = sorted((ra, rb))
            pt = (ca, rng.randrange(lo + 1, hi))
        if pt in taken:
            continue
        name = f"v{len(pos)}"
        while name in pos:
            name += "'"
        pos[name] = pt
        taken.add(pt)
        out_edges[i] = [a, name, dr]
        out_edges.append([name, b, dr])
        count += 1
    final = [(f"e{i}", a, b, dr) for i, (a, b, dr) in enumerate(out_edges)]
    return Drawing(W, pos, final)


def random_drawing(n: int, seed: int) -> Drawing:
    if n < 3:
        raise ValueError("n must be at least 3")
    rng = random.Random(f"orthoradial:{n}:{seed}")
    for _ in range(200):
        try:
            dr = _grid_drawing(n, rng)
            if len(dr.coords) != n or not any(e[3] in (0, 2) for e in dr.edges):
                continue
            dr.rep()
            return dr
        except GenerationFailed:
            continue
    raise GenerationFailed(f"no drawing with {n} vertices for seed {seed}")


def mutate(rep: OrthoRadialRep, rng: random.Random, moves: int = 2) -> OrthoRadialRep:
    """Shift 90 degrees between two faces at two vertices, in opposite senses.

    Vertex sums and face rotations are unchanged, so the conditions still hold.
    """
    g = rep.graph
    angle = list(rep.angle)
    corners: dict = {}
    for d in range(g.n_darts):
        v = g.head[d]
        if g.degree(v) >= 2:
            corners.setdefault(v, []).append(d)
    done = 0
    for _ in range(50 * moves):
        if done >= moves:
            break
        x = rng.choice(sorted(corners))
        dF, dG = rng.sample(corners[x], 2)
        F, G = g.face_of[dF], g.face_of[dG]
        if F == G:
            continue
        others = []
        for y, ds in corners.items():
            if y == x:
                continue
            for yF in ds:
                for yG in ds:
                    if yF != yG and g.face_of[yF] == F and g.face_of[yG] == G:
                        others.append((yF, yG))
        if not others:
            continue
        yF, yG = rng.choice(others)
        if angle[dF] + 90 > 270 or angle[dG] - 90 < 90 or angle[yF] - 90 < 90 or angle[yG] + 90 > 270:
            continue
        angle[dF] += 90
        angle[dG] -= 90
        angle[yF] -= 90
        angle[yG] += 90
        done += 1
    return OrthoRadialRep(g, angle, rep.outer, rep.central, rep.ref)


def random_instance(n: int, seed: int, kind: str = "valid") -> OrthoRadialRep:
    if kind not in ("valid", "mutated"):
        raise ValueError(f"unknown kind {kind!r}")
    rep = random_drawing(n, seed).rep()
    if kind == "mutated":
        rng = random.Random(f"mutate:{n}:{seed}")
        rep = mutate(rep, rng, rng.randint(1, 3))
    return rep


# -- enumeration -------------------------------------------------------------


def enumerate_simple_cycles(g: EmbeddedGraph, cap: int = 200_000) -> list[tuple[int, ...]]:
    """Directed simple cycles, each listed once starting at its smallest vertex."""
    out = []
    n = g.n_vertices
    on_path = [False] * n
    for s in range(n):
        path: list[int] = []
        on_path[s] = True
        stack = [iter(sorted(g.rotation[s]))]
        while stack:
            d = next(stack[-1], None)
            if d is None:
                stack.pop()
                if path:
                    on_path[g.head[path.pop()]] = False
                continue
            w = g.head[d]
            if w == s:
                # Two parallel edges also close a cycle; a dart and its twin do not.
                if len(path) >= 2 or (path and d != path[-1] ^ 1):
                    out.append(tuple(path + [d]))
                    if len(out) > cap:
                        raise CapExceeded(f"more than {cap} cycles")
                continue
            if w < s or on_path[w]:
                continue
            on_path[w] = True
            path.append(d)
            stack.append(iter(sorted(g.rotation[w])))
        on_path[s] = False
    return out


def enumerate_essential_cycles(rep: OrthoRadialRep, cap: int = 200_000) -> list[tuple[int, ...]]:
    out = []
    for cyc in enumerate_simple_cycles(rep.graph, cap):
        try:
            if is_essential(rep, cyc):
                out.append(cyc)
        except (NotACycle, SelfCrossing):
            continue
    return out


def any_elementary_path(rep: OrthoRadialRep, cycle, rng: random.Random | None = None) -> list[int]:
    """A path to ``cycle`` touching it only at its end, by (randomised) DFS.

    Follows the same rule as the fast path: start at ``head(ref)`` avoiding
    ``tail(ref)`` when possible, otherwise start at ``tail(ref)``.
    """
    g = rep.graph
    on = {g.tail[d] for d in cycle}
    s, t = g.head[rep.ref], g.tail[rep.ref]
    if s in on:
        return []

    def order(v):
        return sorted(g.rotation[v], key=(lambda d: rng.random()) if rng else None)

    def dfs(start, banned):
        seen = {start}
        path: list[int] = []
        stack = [iter(order(start))]
        while stack:
            d = next(stack[-1], None)
            if d is None:
                stack.pop()
                if path:
                    path.pop()
                continue
            w = g.head[d]
            if w == banned:
                continue
            if w in on:
                return path + [d]
            if w in seen:
                continue
            seen.add(w)
            path.append(d)
            stack.append(iter(order(w)))
        return None

    path = dfs(s, t)
    if path is None:
        path = [] if t in on else dfs(t, -1)
    if path is None:
        raise NotACycle("cycle unreachable from the reference edge")
    return path


def definitional_labeling(rep: OrthoRadialRep, cycle, rng: random.Random | None = None) -> CycleLabeling:
    path = any_elementary_path(rep, cycle, rng)
    return CycleLabeling(tuple(cycle), labels_along(rep, cycle, path), tuple(path))


@dataclass
class OracleVerdict:
    decreasing: list = field(default_factory=list)
    increasing: list = field(default_factory=list)

    @property
    def valid(self) -> bool:
        return not self.decreasing and not self.increasing


def oracle_is_valid(rep: OrthoRadialRep, cap: int = 200_000) -> OracleVerdict:
    verdict = OracleVerdict()
    for cyc in enumerate_essential_cycles(rep, cap):
        lab = definitional_labeling(rep, cyc)
        if lab.decreasing:
            verdict.decreasing.append(lab)
        elif lab.increasing:
            verdict.increasing.append(lab)
    return verdict
