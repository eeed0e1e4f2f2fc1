"""Analytic test surfaces with exact closed-form derivatives.

Each surface carries a jet evaluator returning (z, zx, zy, zxx, zxy, zyy)
at arbitrary real coordinates, so discrete derivative code can be checked
against exact values. The built-in set covers a quadratic bowl and saddle,
sums of Gaussian bumps, and the classic three-bump exponential demo
surface. Hand-derived partials are validated against finite differences
of the jet itself in the test suite.

Grids sample x left-to-right and y top-to-bottom (row 0 at y_min), the
same orientation the image modules use.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .classify import CONCAVE, CONVEX
from .image import affine_rescale

Jet = tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray, np.ndarray]


@dataclass(frozen=True)
class AnalyticSurface:
    """A scalar surface z(x, y) bundled with its exact first/second partials."""

    name: str
    jet: Callable[[np.ndarray, np.ndarray], Jet]


@dataclass(frozen=True)
class GridSpec:
    """Rectangular sampling grid: nx columns over [x_min, x_max], ny rows
    over [y_min, y_max], endpoints included."""

    x_min: float
    x_max: float
    y_min: float
    y_max: float
    nx: int
    ny: int

    def __post_init__(self):
        if not (self.x_min < self.x_max and self.y_min < self.y_max):
            raise ValueError("grid extent must be non-degenerate")
        if self.nx < 2 or self.ny < 2:
            raise ValueError("grid needs at least 2 nodes per axis")

    def axes(self) -> tuple[np.ndarray, np.ndarray]:
        return (
            np.linspace(self.x_min, self.x_max, self.nx),
            np.linspace(self.y_min, self.y_max, self.ny),
        )

    def meshgrid(self) -> tuple[np.ndarray, np.ndarray]:
        xs, ys = self.axes()
        return np.meshgrid(xs, ys)


DEFAULT_GRID = GridSpec(-3.0, 3.0, -3.0, 3.0, 512, 512)


# ---------------------------------------------------------------------------
# Built-in surfaces


def bowl_surface() -> AnalyticSurface:
    """z = x^2 + y^2: convex everywhere (det = 4, zxx = 2)."""

    def jet(x, y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        one = np.ones(np.broadcast(x, y).shape)
        return (x * x + y * y, 2 * x, 2 * y, 2 * one, 0 * one, 2 * one)

    return AnalyticSurface("bowl", jet)


def saddle_surface() -> AnalyticSurface:
    """z = x^2 - y^2: det = -4 everywhere, neither convex nor concave."""

    def jet(x, y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        one = np.ones(np.broadcast(x, y).shape)
        return (x * x - y * y, 2 * x, -2 * y, 2 * one, 0 * one, -2 * one)

    return AnalyticSurface("saddle", jet)


def gaussian_blobs_surface(blobs: Sequence[tuple[float, float, float, float]]) -> AnalyticSurface:
    """Sum of isotropic Gaussian bumps, one (amplitude, width, cx, cy) each.

    A single bump A*exp(-r^2/(2*s^2)) has positive determinant exactly on
    the disk r < s, with zxx < 0 at the center, so a positive-amplitude
    bump is a concave (peak) region of radius s.
    """
    spec = tuple((float(a), float(s), float(cx), float(cy)) for a, s, cx, cy in blobs)
    if not spec:
        raise ValueError("need at least one blob")
    if any(s <= 0 for _, s, _, _ in spec):
        raise ValueError("blob widths must be positive")

    def jet(x, y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        shape = np.broadcast(x, y).shape
        out = [np.zeros(shape) for _ in range(6)]
        for amp, s, cx, cy in spec:
            u = (x - cx) / s
            v = (y - cy) / s
            e = amp * np.exp(-0.5 * (u * u + v * v))
            s2 = s * s
            out[0] += e
            out[1] += -u / s * e
            out[2] += -v / s * e
            out[3] += (u * u - 1.0) / s2 * e
            out[4] += u * v / s2 * e
            out[5] += (v * v - 1.0) / s2 * e
        return tuple(out)

    return AnalyticSurface("gaussian-blobs", jet)


def _bump_jet(x, y, a, b, p, px, py, pxx, pxy, pyy):
    # One term P(x,y) * exp(-(x-a)^2 - (y-b)^2), differentiated by the
    # product rule with the polynomial partials supplied by the caller.
    u = x - a
    v = y - b
    e = np.exp(-u * u - v * v)
    z = p * e
    zx = (px - 2 * u * p) * e
    zy = (py - 2 * v * p) * e
    zxx = (pxx - 2 * p - 4 * u * px + 4 * u * u * p) * e
    zxy = (pxy - 2 * v * px - 2 * u * py + 4 * u * v * p) * e
    zyy = (pyy - 2 * p - 4 * v * py + 4 * v * v * p) * e
    return z, zx, zy, zxx, zxy, zyy


def peaks_surface() -> AnalyticSurface:
    """The three-bump exponential demo surface

        z = 3(1-x)^2 e^{-x^2-(y+1)^2} - 2(x - 5x^3 - 5y^5) e^{-x^2-y^2}
            - (1/3) e^{-(x+1)^2-y^2}

    (MATLAB's classic ``peaks``; the middle factorization above equals
    -10(x/5 - x^3 - y^5)). Its maximum on [-3,3]^2 is ~8.1062 near
    (-0.0093, 1.5814), and most of that square has negative Gaussian
    curvature.
    """

    def jet(x, y):
        x = np.asarray(x, dtype=np.float64)
        y = np.asarray(y, dtype=np.float64)
        shape = np.broadcast(x, y).shape
        zero = np.zeros(shape)
        one = np.ones(shape)
        t1 = _bump_jet(x, y, 0.0, -1.0, 3 * (1 - x) ** 2, 6 * x - 6, zero, 6 * one, zero, zero)
        t2 = _bump_jet(
            x,
            y,
            0.0,
            0.0,
            -2 * x + 10 * x**3 + 10 * y**5,
            -2 + 30 * x**2,
            50 * y**4,
            60 * x,
            zero,
            200 * y**3,
        )
        t3 = _bump_jet(x, y, -1.0, 0.0, -one / 3, zero, zero, zero, zero, zero)
        return tuple(t1[i] + t2[i] + t3[i] for i in range(6))

    return AnalyticSurface("peaks", jet)


# ---------------------------------------------------------------------------
# Sampling


def sample_jet(surface: AnalyticSurface, grid: GridSpec = DEFAULT_GRID) -> Jet:
    """Evaluate the full jet on the grid; arrays have shape (ny, nx)."""
    X, Y = grid.meshgrid()
    return surface.jet(X, Y)


def rasterize(surface: AnalyticSurface, grid: GridSpec = DEFAULT_GRID, rescale: bool = True) -> np.ndarray:
    """Sample z on the grid as an image, affinely rescaled to [0, 1].

    With ``rescale=False`` the raw samples come back for oracle-side
    comparisons (a constant surface rescales to all 0.5).
    """
    X, Y = grid.meshgrid()
    z = surface.jet(X, Y)[0]
    return affine_rescale(z) if rescale else z


def analytic_classification(surface: AnalyticSurface, grid: GridSpec = DEFAULT_GRID) -> np.ndarray:
    """Ground-truth labels from the exact second partials on a grid.

    Applies the strict tests det > 0 & zxx > 0 (convex) and det > 0 &
    zxx < 0 (concave) directly to the closed-form derivatives; this is the
    reference the discrete pipeline is measured against.
    """
    _, _, _, zxx, zxy, zyy = sample_jet(surface, grid)
    det = zxx * zyy - zxy * zxy
    labels = np.zeros(det.shape, dtype=np.int8)
    labels[(det > 0) & (zxx > 0)] = CONVEX
    labels[(det > 0) & (zxx < 0)] = CONCAVE
    return labels


# ---------------------------------------------------------------------------
# Synthetic raster inputs for tests, benchmarks, and demos


def gaussian_blob_image(
    width: int, height: int, blobs: Sequence[tuple[float, float, float, float]]
) -> np.ndarray:
    """Render Gaussian bumps given as (cx, cy, amplitude, sigma) in pixels."""
    ys, xs = np.mgrid[0:height, 0:width].astype(np.float64)
    img = np.zeros((height, width))
    for cx, cy, amp, sigma in blobs:
        img += amp * np.exp(-((xs - cx) ** 2 + (ys - cy) ** 2) / (2.0 * sigma * sigma))
    return img


# Fixed two-blob corpus geometry (256x256): two well-separated peaks of
# moderate width, plus 1% additive Gaussian noise per seed.
CORPUS_SIZE = 256
CORPUS_BLOBS = ((88.0, 120.0, 0.9, 18.0), (176.0, 140.0, 0.7, 14.0))
CORPUS_NOISE = 0.01
CORPUS_SEEDS = tuple(range(10))

# Small-feature / large-feature image for the two-scale overlay checks.
SMALL_LARGE_SIZE = 256
SMALL_BLOB = (72.0, 72.0, 0.6, 3.0)
LARGE_BLOB = (160.0, 160.0, 1.0, 40.0)


def noisy_two_blob_image(seed: int) -> np.ndarray:
    """One corpus instance: the fixed two-blob scene plus seeded 1% noise."""
    img = gaussian_blob_image(CORPUS_SIZE, CORPUS_SIZE, CORPUS_BLOBS)
    rng = np.random.default_rng(seed)
    return img + rng.normal(0.0, CORPUS_NOISE, size=img.shape)


def small_large_blob_image() -> np.ndarray:
    """Noise-free scene with one tiny and one broad peak."""
    return gaussian_blob_image(SMALL_LARGE_SIZE, SMALL_LARGE_SIZE, (SMALL_BLOB, LARGE_BLOB))
