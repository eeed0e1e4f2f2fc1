"""Gaussian scale-space smoothing by separable convolution.

The kernel is a sampled Gaussian truncated at radius ceil(2*sigma) and
renormalized to sum 1, applied as a horizontal then a vertical pass with
replicate (clamp-to-edge) borders. Mirror-image taps are summed pairwise
before weighting, which keeps the per-pixel cost at radius+1 multiplies
and makes the output bitwise symmetric under image flips.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class GaussianKernel:
    """One separable half of a 2-D Gaussian: symmetric, positive, sums to 1."""

    sigma: float
    radius: int
    weights: np.ndarray


def make_kernel(sigma: float) -> GaussianKernel:
    """Build the 1-D smoothing kernel for a given scale.

    radius = ceil(2*sigma), so the window has 2*ceil(2*sigma)+1 taps;
    weights are exp(-(i-radius)^2 / (2*sigma^2)) renormalized to sum 1.
    """
    if not (isinstance(sigma, (int, float)) and math.isfinite(sigma) and sigma > 0):
        raise ValueError(f"sigma must be a finite positive number, got {sigma!r}")
    radius = math.ceil(2.0 * sigma)
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    weights = np.exp(-(offsets**2) / (2.0 * sigma * sigma))
    weights /= weights.sum()
    weights.flags.writeable = False
    return GaussianKernel(sigma=float(sigma), radius=radius, weights=weights)


def _pass_symmetric(image: np.ndarray, weights: np.ndarray, axis: int) -> np.ndarray:
    radius = len(weights) // 2
    pad = [(0, 0), (0, 0)]
    pad[axis] = (radius, radius)
    padded = np.pad(image, pad, mode="edge")
    n = image.shape[axis]

    def window(k):
        if axis == 1:
            return padded[:, k : k + n]
        return padded[k : k + n, :]

    out = weights[radius] * window(radius)
    for k in range(1, radius + 1):
        out += weights[radius + k] * (window(radius - k) + window(radius + k))
    return out


def smooth(image: np.ndarray, kernel: GaussianKernel) -> np.ndarray:
    """Separable Gaussian smoothing with replicate borders.

    Output has the input's shape; since the weights are positive and sum
    to 1 each output sample is a convex combination of input samples, so
    constants are preserved and min f <= output <= max f.
    """
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2 or image.size == 0:
        raise ValueError(f"image must be a non-empty 2-D array, got shape {image.shape}")
    out = _pass_symmetric(image, kernel.weights, axis=1)
    return _pass_symmetric(out, kernel.weights, axis=0)
