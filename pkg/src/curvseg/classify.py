"""Per-pixel convexity/concavity labeling from the second-derivative test.

A pixel is convex where det > 0 and fxx > 0 (a bowl-shaped depression when
intensity is read as height), concave where det > 0 and fxx < 0 (a peak),
and neither otherwise. The inequalities are strict with no tolerance band;
the scale-space smoothing upstream is what suppresses noise-level flips.
"""

from __future__ import annotations

import numpy as np

from .derivatives import DifferentialMaps

NEITHER = np.int8(0)
CONVEX = np.int8(1)
CONCAVE = np.int8(2)

REGION_MODES = ("convex", "concave", "combined")


def classify(maps: DifferentialMaps) -> np.ndarray:
    """Label every pixel NEITHER/CONVEX/CONCAVE as an int8 array."""
    labels = np.zeros(maps.det.shape, dtype=np.int8)
    elliptic = maps.det > 0
    labels[elliptic & (maps.fxx > 0)] = CONVEX
    labels[elliptic & (maps.fxx < 0)] = CONCAVE
    return labels


def region_mask(labels: np.ndarray, mode: str = "combined") -> np.ndarray:
    """Select labeled pixels as a boolean mask.

    ``combined`` selects convex and concave together, which is exactly the
    set of pixels with positive determinant (positive Gaussian curvature).
    """
    if mode == "convex":
        return labels == CONVEX
    if mode == "concave":
        return labels == CONCAVE
    if mode == "combined":
        return labels != NEITHER
    raise ValueError(f"mode must be one of {REGION_MODES}, got {mode!r}")
