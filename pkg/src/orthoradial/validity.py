"""Monotone-cycle detection and the validity decision."""

from __future__ import annotations

import weakref
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Sequence

from . import SearchKernel
from .core import CycleLabeling, OrthoRadialRep, is_essential, labeling
from .errors import NotACycle, SelfCrossing
from .transform import mirror, normalize, require_conditions

_kernels: "weakref.WeakKeyDictionary[OrthoRadialRep, SearchKernel]" = weakref.WeakKeyDictionary()


def kernel(rep: OrthoRadialRep) -> SearchKernel:
    """Flat-array search kernel for ``rep``, built once per representation."""
    k = _kernels.get(rep)
    if k is None:
        g = rep.graph
        rot_ptr = [0]
        rot = []
        for r in g.rotation:
            rot.extend(r)
            rot_ptr.append(len(rot))
        face_ptr = [0]
        face_darts = []
        for f in g.faces:
            face_darts.extend(f)
            face_ptr.append(len(face_darts))
        k = SearchKernel(
            g.n_vertices, g.tail, g.head, rot_ptr, rot, g.pos, rep.directions,
            g.face_of, face_ptr, face_darts, rep.outer, rep.central, rep.ref,
        )
        _kernels[rep] = k
    return k


@dataclass(frozen=True)
class SearchState:
    """Outcome of one left-first search that closed a cycle."""

    start: int
    cycle: tuple[int, ...]
    search_labels: tuple[int, ...]


@dataclass(frozen=True)
class MonotoneReport:
    verdict: str  # "valid", "decreasing" or "increasing"
    witness: CycleLabeling | None = None

    @property
    def valid(self) -> bool:
        return self.verdict == "valid"


def left_first_dfs(rep: OrthoRadialRep, vw: int) -> SearchState | None:
    found = kernel(rep).dfs(vw)
    if found is None:
        return None
    return SearchState(vw, tuple(found[0]), tuple(found[1]))


def verify_decreasing(rep: OrthoRadialRep, cycle: Sequence[int]) -> bool:
    try:
        if not is_essential(rep, cycle):
            return False
    except (NotACycle, SelfCrossing):
        return False
    return labeling(rep, cycle, check=False).decreasing


def _first_in_range(rep: OrthoRadialRep, lo: int, hi: int):
    return kernel(rep).find_decreasing(range(lo, hi))


def find_decreasing(rep: OrthoRadialRep, jobs: int = 1) -> CycleLabeling | None:
    """Decreasing cycle found from the lowest start dart, or None."""
    m2 = rep.graph.n_darts
    if jobs <= 1 or m2 < 64:
        cyc = kernel(rep).find_decreasing()
    else:
        step = -(-m2 // (4 * jobs))
        bounds = [(lo, min(lo + step, m2)) for lo in range(0, m2, step)]
        cyc = None
        with ProcessPoolExecutor(jobs) as pool:
            futures = [pool.submit(_first_in_range, rep, lo, hi) for lo, hi in bounds]
            # Chunks are ordered by start dart, so the first hit is the lowest one.
            for fut in futures:
                cyc = fut.result()
                if cyc is not None:
                    for other in futures:
                        other.cancel()
                    break
    if cyc is None:
        return None
    return labeling(rep, cyc, check=False)


def is_valid(rep: OrthoRadialRep, jobs: int = 1) -> MonotoneReport:
    require_conditions(rep)
    norm, _ = normalize(rep)
    # Dart ids of rep survive normalization and gadget edges lie on no
    # essential cycle, so witnesses are already darts of rep.
    dec = find_decreasing(norm, jobs)
    if dec is not None:
        return MonotoneReport("decreasing", labeling(rep, dec.cycle))
    inc = find_decreasing(mirror(norm), jobs)
    if inc is not None:
        back = [d ^ 1 for d in reversed(inc.cycle)]
        return MonotoneReport("increasing", labeling(rep, back))
    return MonotoneReport("valid")
