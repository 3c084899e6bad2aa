"""JSON instance files.

Schema (all fields required, no others allowed)::

    {
      "vertices":  ["a", "b", ...],
      "edges":     [["e0", "a", "b"], ...],          # [edge id, u, v]
      "rotations": {"a": ["e0", "e3"], ...},          # clockwise incident edge ids
      "angles":    {"e0:+": 90, "e0:-": 270, ...},   # one per dart
      "outer":     "e0:-",                           # any dart on the face walk
      "central":   "e1:+",
      "reference": "e0:+"
    }

Dart ``"<edge>:+"`` runs from ``u`` to ``v``, ``"<edge>:-"`` from ``v`` to
``u``.  Writers emit the smallest dart key of a face walk as its key.
"""

from __future__ import annotations

import json
from pathlib import Path

from .core import EmbeddedGraph, OrthoRadialRep, build, face_key
from .errors import OrthoRadialError, ParseError

FIELDS = ("vertices", "edges", "rotations", "angles", "outer", "central", "reference")


def _dart(g: EmbeddedGraph, key) -> int:
    if not isinstance(key, str) or not key.endswith((":+", ":-")):
        raise ParseError(f"bad dart key {key!r}")
    eid, sign = key[:-2], key[-1]
    try:
        e = g.edge_names.index(eid)
    except ValueError:
        raise ParseError(f"unknown edge in dart key {key!r}") from None
    return 2 * e + (sign == "-")


def rep_from_dict(data: dict) -> OrthoRadialRep:
    if not isinstance(data, dict):
        raise ParseError("instance must be a JSON object")
    unknown = set(data) - set(FIELDS)
    if unknown:
        raise ParseError(f"unknown fields: {sorted(unknown)}")
    missing = [f for f in FIELDS if f not in data]
    if missing:
        raise ParseError(f"missing fields: {missing}")
    try:
        vertices = [str(v) for v in data["vertices"]]
        edges = [(str(e), str(u), str(v)) for e, u, v in data["edges"]]
        rotations = {str(k): [str(e) for e in v] for k, v in data["rotations"].items()}
        g = build({"vertices": vertices, "edges": edges, "rotations": rotations})
        angle = [None] * g.n_darts
        for key, a in data["angles"].items():
            angle[_dart(g, key)] = int(a)
        if None in angle:
            raise ParseError("angles must cover every dart")
        outer = g.face_of[_dart(g, data["outer"])]
        central = g.face_of[_dart(g, data["central"])]
        ref = _dart(g, data["reference"])
    except ParseError:
        raise
    except OrthoRadialError:
        raise
    except (TypeError, ValueError, KeyError, AttributeError) as exc:
        raise ParseError(str(exc)) from exc
    return OrthoRadialRep(g, angle, outer, central, ref)


def rep_to_dict(rep: OrthoRadialRep) -> dict:
    g = rep.graph
    names = [str(v) for v in g.names]
    return {
        "vertices": names,
        "edges": [[str(g.edge_names[e]), names[u], names[v]] for e, (u, v) in enumerate(g.ends)],
        "rotations": {names[v]: [str(g.edge_names[d >> 1]) for d in g.rotation[v]] for v in range(g.n_vertices)},
        "angles": {g.dart_key(d): rep.angle[d] for d in range(g.n_darts)},
        "outer": face_key(g, rep.outer),
        "central": face_key(g, rep.central),
        "reference": g.dart_key(rep.ref),
    }


def loads(text: str) -> OrthoRadialRep:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return rep_from_dict(data)


def dumps(rep: OrthoRadialRep) -> str:
    return json.dumps(rep_to_dict(rep), indent=1, sort_keys=False) + "\n"


def load(path) -> OrthoRadialRep:
    return loads(Path(path).read_text())


def dump(rep: OrthoRadialRep, path) -> None:
    Path(path).write_text(dumps(rep))
