"""Acceptance criteria; each test prints one PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v`` or as a script.
"""

from __future__ import annotations

import random
import statistics
import sys
import time
from collections import Counter

import pytest

from orthoradial import check_conditions
from orthoradial.core import cycle_from_vertices, is_essential, labeling
from orthoradial.errors import CapExceeded, CentralBoundaryMonotone
from orthoradial.layout import assign_coordinates, cycle_displacement, project_back, realize_check
from orthoradial.oracle import (
    definitional_labeling,
    enumerate_essential_cycles,
    oracle_is_valid,
    random_instance,
    ring4,
    spiral4,
)
from orthoradial.rectangulate import (
    _is_vertical,
    augment_at,
    candidate_darts,
    candidates,
    concave_corners,
    rectangulate,
    resolve_pair,
    resolve_port_two_phase,
)
from orthoradial.transform import flip, mirror
from orthoradial.validity import find_decreasing, is_valid

from conftest import CRITERIA, encountered_ports, planted, planted_port

# Tolerances.
MINI_N, MINI_MIN = 8, 200
RANDOM_N, RANDOM_MIN = 12, 500
ORACLE_BUDGET_S = 300
SYMMETRY_N = 10
FACTS_N = 12
POST_N = 500
VERTEX_FACTOR = 25
FAST_MODES_BUDGET_S = 10
SCALING_SIZES = (250, 500, 1000)
SCALING_MAX_RATIO = 5.5
SPEEDUP_MIN = 10
SPEEDUP_N = 500
NEW_VERTICAL_MAX = 2

# Sizes of the valid corpus used by the postcondition and drawing criteria.
CORPUS_SIZES = list(range(3, 13)) + [20, 30, 50, 100, 250, 500]
CORPUS_SEEDS = {n: (6 if n <= 12 else 3 if n <= 100 else 2) for n in CORPUS_SIZES}


def record(number: int, ok: bool, detail: str) -> None:
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}"
    CRITERIA.append(line)
    print(line, file=sys.__stdout__, flush=True)
    assert ok, line


def valid_instances(max_n: int):
    for n in CORPUS_SIZES:
        if n > max_n:
            continue
        for s in range(CORPUS_SEEDS[n]):
            rep = random_instance(n, s)
            if is_valid(rep).valid:
                yield n, s, rep


def rectangle_scan(rep) -> bool:
    for f, walk in enumerate(rep.graph.faces):
        turns = [rep.turn_at(d) for d in walk if rep.turn_at(d)]
        if f in (rep.outer, rep.central):
            if turns or rep.face_rotation(f) != 0:
                return False
        elif turns != [1, 1, 1, 1]:
            return False
    return True


def test_oracle_equivalence():
    t0 = time.perf_counter()
    mini = [random_instance(n, s, kind) for n in range(3, MINI_N + 1) for s in range(20) for kind in ("valid", "mutated")]
    rng = random.Random(20240601)
    rand = [
        random_instance(rng.randint(3, RANDOM_N), rng.randrange(1_000_000), rng.choice(["valid", "mutated"]))
        for _ in range(RANDOM_MIN)
    ]
    mismatches = bad_witness = invalid = 0
    for rep in mini + rand:
        fast = is_valid(rep)
        slow = oracle_is_valid(rep)
        if fast.valid != slow.valid:
            mismatches += 1
        if not fast.valid:
            invalid += 1
            lab = definitional_labeling(rep, fast.witness.cycle)
            ok = lab.labels == fast.witness.labels and (lab.decreasing if fast.verdict == "decreasing" else lab.increasing)
            bad_witness += not ok
    elapsed = time.perf_counter() - t0
    ok = (
        len(mini) >= MINI_MIN and len(rand) >= RANDOM_MIN
        and mismatches == 0 and bad_witness == 0 and elapsed < ORACLE_BUDGET_S
    )
    record(1, ok, f"{len(mini)} mini + {len(rand)} random, {invalid} invalid, {mismatches} mismatches, "
                  f"{bad_witness} bad witnesses, {elapsed:.1f}s")


def _cyclic(seq, target) -> bool:
    seq = list(seq)
    return any(seq[i:] + seq[:i] == list(target) for i in range(len(seq)))


def test_canonical_instances():
    ring_ok = is_valid(ring4()).valid
    s = spiral4()
    r = is_valid(s)
    spiral_ok = r.verdict == "decreasing" and _cyclic(r.witness.labels, (0, 1, 1, 0))
    r = is_valid(mirror(s))
    mirror_ok = r.verdict == "increasing" and _cyclic(r.witness.labels, (0, -1, -1, 0))
    cyc = cycle_from_vertices(s.graph, "abcd")
    exact = labeling(s, cyc).labels == (0, 1, 1, 0)
    record(2, ring_ok and spiral_ok and mirror_ok and exact,
           f"ring-4 valid={ring_ok}, spiral-4 decreasing={spiral_ok}, mirror increasing={mirror_ok}")


def test_symmetry_identities():
    cycles = flips = violations = blocked = 0
    for n in range(3, SYMMETRY_N + 1):
        for s in range(10):
            for kind in ("valid", "mutated"):
                rep = random_instance(n, s, kind)
                m = mirror(rep)
                try:
                    f = flip(rep)
                except CentralBoundaryMonotone:
                    f = None
                    blocked += 1
                for cyc in enumerate_essential_cycles(rep):
                    cycles += 1
                    lab = labeling(rep, cyc).labels
                    rev = [d ^ 1 for d in reversed(cyc)]
                    if list(labeling(m, rev).labels) != [-x for x in reversed(lab)]:
                        violations += 1
                    if f is not None:
                        flips += 1
                        if list(labeling(f, rev).labels) != list(reversed(lab)):
                            violations += 1
    record(3, violations == 0 and cycles > 0,
           f"{cycles} cycles, {flips} flip checks ({blocked} instances blocked), {violations} violations")


def _verdicts(rep):
    try:
        v = oracle_is_valid(rep, cap=20_000)
        return bool(v.decreasing), bool(v.increasing)
    except CapExceeded:
        return find_decreasing(rep) is not None, find_decreasing(mirror(rep)) is not None


def test_facts_suite():
    stats = Counter()

    def observe(ws, entry):
        cands = candidate_darts(ws, entry)
        verd = []
        for c in cands:
            m = ws.mark()
            augment_at(ws, entry, c)
            verd.append(_verdicts(ws.to_rep()))
            ws.rollback(m)
        if _is_vertical(ws, entry):
            stats["vertical ports"] += 1
            stats["fact 1 violations"] += verd[0] != (False, False)
            return
        stats["horizontal ports"] += 1
        stats["fact 2 violations"] += verd[0][1] + verd[-1][0]
        for i in range(len(cands) - 1):
            if verd[i][0] and not verd[i + 1][0] and verd[i + 1][1]:
                stats["fact 3 patterns"] += 1
                m = ws.mark()
                res = resolve_pair(ws, entry, cands[i], cands[i + 1])
                ws.rollback(m)
                stats["fact 3 violations"] += res.kind == "augment"

    for n in range(3, FACTS_N + 1):
        for s in range(6):
            rep = random_instance(n, s)
            if is_valid(rep).valid:
                rectangulate(rep, "binary", observe=observe)
    bad = stats["fact 1 violations"] + stats["fact 2 violations"] + stats["fact 3 violations"]
    ok = bad == 0 and stats["vertical ports"] > 0 and stats["horizontal ports"] > 0
    record(4, ok, ", ".join(f"{k} {v}" for k, v in sorted(stats.items())))


def test_rectangulation_postconditions():
    runs = failures = 0
    slowest = 0.0
    failed = []
    for n, s, rep in valid_instances(POST_N):
        for mode in ("naive", "binary", "two_phase"):
            t = time.perf_counter()
            out, _ = rectangulate(rep, mode)
            dt = time.perf_counter() - t
            runs += 1
            ok = (
                check_conditions(out) == []
                and is_valid(out).valid
                and rectangle_scan(out)
                and out.graph.n_vertices <= VERTEX_FACTOR * n
            )
            if mode != "naive" and n == POST_N:
                slowest = max(slowest, dt)
                ok = ok and dt < FAST_MODES_BUDGET_S
            if not ok:
                failures += 1
                failed.append((n, s, mode))
    record(5, failures == 0,
           f"{runs} runs, {failures} failures {failed[:3]}, slowest binary/two_phase at n={POST_N}: {slowest:.2f}s")


def _best_of(fn, repeat=3) -> float:
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def test_scaling():
    medians = []
    for n in SCALING_SIZES:
        reps = [r for s in range(9) if is_valid(r := random_instance(n, s)).valid]
        medians.append(statistics.median(_best_of(lambda r=r: is_valid(r)) for r in reps))
    ratios = [b / a for a, b in zip(medians, medians[1:])]
    rep = next(r for s in range(10) if is_valid(r := random_instance(SPEEDUP_N, s)).valid)
    fast = _best_of(lambda: rectangulate(rep, "two_phase"), 2)
    slow = _best_of(lambda: rectangulate(rep, "naive"), 1)
    speedup = slow / fast
    ok = all(x <= SCALING_MAX_RATIO for x in ratios) and speedup >= SPEEDUP_MIN
    record(6, ok,
           "is_valid medians " + ", ".join(f"n={n}: {m * 1000:.1f}ms" for n, m in zip(SCALING_SIZES, medians))
           + f"; ratios {', '.join(f'{x:.2f}' for x in ratios)}; two_phase {fast:.2f}s vs naive {slow:.2f}s "
           f"({speedup:.0f}x)")


def test_drawing_realization():
    runs = failures = winding_checked = 0
    for n, s, rep in valid_instances(POST_N):
        star, amap = rectangulate(rep, "two_phase")
        grid = assign_coordinates(star)
        drawing = project_back(grid, amap, star)
        runs += 1
        ok = realize_check(star, grid) and realize_check(rep, drawing)
        if ok and n <= 10:
            for cyc in enumerate_essential_cycles(rep):
                winding_checked += 1
                ok = ok and abs(cycle_displacement(rep, drawing, cyc)) == drawing.width
        elif ok and rep.outer != rep.central:
            # Larger instances: the two face walks bounding the special faces.
            for f in (rep.outer, rep.central):
                walk = rep.graph.faces[f]
                if is_essential(rep, walk) or is_essential(rep, [d ^ 1 for d in reversed(walk)]):
                    winding_checked += 1
                    ok = ok and abs(cycle_displacement(rep, drawing, walk)) == drawing.width
        failures += not ok
    record(7, failures == 0, f"{runs} drawings, {winding_checked} essential cycles wound once, {failures} failures")


def _planted_cases():
    for name, meta in sorted(planted().items()):
        if meta["candidates"] >= 4:
            rep, port = planted_port(name)
            yield name, rep, port
    # More instances taken from ports met while rectangulating larger inputs.
    for n, s in [(40, 1), (60, 2), (80, 0), (120, 3)]:
        rep = random_instance(n, s)
        if not is_valid(rep).valid:
            continue
        for snap, port in encountered_ports(rep, "two_phase"):
            if port.kind == "horizontal" and len(candidates(snap, port)) >= 4:
                yield f"n{n}s{s}", snap, port


def test_two_phase_bookkeeping():
    cases = violations = 0
    worst = Counter()
    for name, rep, port in _planted_cases():
        cl = candidates(rep, port).edges
        before = concave_corners(rep)
        out, res = resolve_port_two_phase(rep, port)
        after = concave_corners(out)
        new = Counter(kind for key, kind in after.items() if key not in before)
        cases += 1
        bad = new["horizontal"] > 0 or new["vertical"] > NEW_VERTICAL_MAX
        if res.kstructure is not None:
            # Intermediate candidates must sit on rectangles.
            for vw in cl[1:res.k - 1]:
                walk = out.graph.faces[out.graph.face_of[vw]]
                bad = bad or [out.turn_at(d) for d in walk if out.turn_at(d)] != [1, 1, 1, 1]
        bad = bad or not is_valid(out).valid
        violations += bad
        worst["horizontal"] = max(worst["horizontal"], new["horizontal"])
        worst["vertical"] = max(worst["vertical"], new["vertical"])
    record(8, violations == 0 and cases > 0,
           f"{cases} planted ports, most new corners: horizontal {worst['horizontal']}, "
           f"vertical {worst['vertical']}; {violations} violations")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
