from __future__ import annotations

import json
from functools import lru_cache
from pathlib import Path

import pytest

from orthoradial import instance
from orthoradial.oracle import random_instance, ring4, spiral4
from orthoradial.validity import is_valid

DATA = Path(__file__).parent / "data"


def load(name: str):
    return instance.load(DATA / name)


def planted() -> dict:
    return json.loads((DATA / "planted.json").read_text())


def planted_port(name: str):
    """Fixture instance plus the horizontal port recorded for it."""
    from orthoradial.rectangulate import find_port

    rep = load(name)
    key = planted()[name]["port_dart"]
    d = next(d for d in range(rep.graph.n_darts) if rep.graph.dart_key(d) == key)
    port = find_port(rep, rep.graph.face_of[d])
    assert port is not None and port.entry == d
    return rep, port


@lru_cache(maxsize=None)
def corpus(n_max: int, seeds: int, kind: str = "valid") -> tuple:
    """Generator instances ``(n, seed, rep)`` for 3 <= n <= n_max."""
    out = []
    for n in range(3, n_max + 1):
        for s in range(seeds):
            out.append((n, s, random_instance(n, s, kind)))
    return tuple(out)


@lru_cache(maxsize=None)
def valid_corpus(n_max: int, seeds: int) -> tuple:
    return tuple(x for x in corpus(n_max, seeds) if is_valid(x[2]).valid)


@pytest.fixture
def ring():
    return ring4()


@pytest.fixture
def spiral():
    return spiral4()


@pytest.fixture
def g2():
    return load("g2.json")


def encountered_ports(rep, mode: str = "binary") -> list:
    """``(snapshot, port)`` for every top-level port met while rectangulating ``rep``."""
    from orthoradial.rectangulate import _port, rectangulate

    seen = []

    def observe(ws, entry):
        snap = ws.to_rep()
        seen.append((snap, _port(ws, snap, entry)))

    rectangulate(rep, mode, observe=observe)
    return seen


@lru_cache(maxsize=None)
def corpus_ports(n_max: int, seeds: int) -> tuple:
    out = []
    for n, s, rep in valid_corpus(n_max, seeds):
        out.extend(encountered_ports(rep))
    return tuple(out)


# One line per acceptance criterion, repeated in the terminal summary.
CRITERIA: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if CRITERIA:
        terminalreporter.section("acceptance")
        for line in CRITERIA:
            terminalreporter.write_line(line)
