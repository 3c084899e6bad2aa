"""Validity testing and rectangulation of ortho-radial representations."""

import os

from .core import (
    CycleLabeling,
    Direction,
    EmbeddedGraph,
    OrthoRadialRep,
    Violation,
    build,
    check_conditions,
    is_essential,
    labeling,
    path_rotation,
    rotation_turn,
)
from .errors import OrthoRadialError

if os.environ.get("ORTHORADIAL_PURE_PYTHON") == "1":
    from ._kernels_py import SearchKernel

    KERNEL = "python"
else:
    try:
        from ._kernels import SearchKernel

        KERNEL = "cython"
    except ImportError:
        from ._kernels_py import SearchKernel

        KERNEL = "python"

__all__ = [
    "KERNEL",
    "CycleLabeling",
    "Direction",
    "EmbeddedGraph",
    "OrthoRadialError",
    "OrthoRadialRep",
    "SearchKernel",
    "Violation",
    "build",
    "check_conditions",
    "is_essential",
    "labeling",
    "path_rotation",
    "rotation_turn",
]
