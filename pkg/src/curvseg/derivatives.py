"""First/second derivative fields, Hessian determinant, Gaussian curvature.

Two 3x3 stencils are offered, both with replicate borders:

* ``sobel``: correlation with [[-1,0,1],[-2,0,2],[-1,0,1]] for d/dx and its
  transpose for d/dy. Exact derivatives are scaled by 8 (e.g. a unit ramp
  gives fx = 8), which is harmless to sign-based tests.
* ``central``: (f[x+1] - f[x-1]) / 2, exact for quadratic surfaces.

Axes follow image conventions: x is the column index increasing rightward,
y the row index increasing downward. Second derivatives are produced by
composing two first-derivative passes; fxy is the y-derivative of fx (the
x-then-y order only, the reverse order is not computed).

The stencils are evaluated with mirror-symmetric associativity, so flipping
or rotating the image by 90 degrees permutes the fields bitwise and leaves
the determinant field bit-for-bit unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

STENCILS = ("sobel", "central")


@dataclass(frozen=True)
class DifferentialMaps:
    """Per-pixel derivative fields of one image, all sharing its shape.

    ``det`` is fxx*fyy - fxy^2 (the Hessian determinant) and ``curvature``
    is det / (1 + fx^2 + fy^2)^2 (Gaussian curvature). The denominator is
    strictly positive, so the two fields agree in sign wherever det != 0.
    """

    fx: np.ndarray
    fy: np.ndarray
    fxx: np.ndarray
    fxy: np.ndarray
    fyy: np.ndarray
    det: np.ndarray
    curvature: np.ndarray
    stencil: str


def _check_stencil(stencil: str) -> None:
    if stencil not in STENCILS:
        raise ValueError(f"stencil must be one of {STENCILS}, got {stencil!r}")


def gradient(image: np.ndarray, stencil: str = "sobel") -> tuple[np.ndarray, np.ndarray]:
    """Compute (fx, fy) with the chosen stencil and replicate borders."""
    _check_stencil(stencil)
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2 or image.shape[0] < 3 or image.shape[1] < 3:
        raise ValueError(f"image must be at least 3x3, got shape {image.shape}")
    padded = np.pad(image, 1, mode="edge")
    if stencil == "central":
        fx = 0.5 * (padded[1:-1, 2:] - padded[1:-1, :-2])
        fy = 0.5 * (padded[2:, 1:-1] - padded[:-2, 1:-1])
        return fx, fy
    # Sobel: difference along one axis, then [1,2,1] smoothing along the
    # other, outer taps paired before the center for exact flip symmetry.
    dh = padded[:, 2:] - padded[:, :-2]
    fx = (dh[:-2, :] + dh[2:, :]) + 2.0 * dh[1:-1, :]
    dv = padded[2:, :] - padded[:-2, :]
    fy = (dv[:, :-2] + dv[:, 2:]) + 2.0 * dv[:, 1:-1]
    return fx, fy


def hessian_maps(image: np.ndarray, stencil: str = "sobel") -> DifferentialMaps:
    """Differentiate twice and assemble determinant and curvature fields.

    Needs at least a 5x5 image (two stencil applications). fxx and fxy come
    from differentiating fx, fyy from the y-derivative of fy.
    """
    image = np.asarray(image, dtype=np.float64)
    if image.ndim != 2 or image.shape[0] < 5 or image.shape[1] < 5:
        raise ValueError(f"image must be at least 5x5, got shape {image.shape}")
    fx, fy = gradient(image, stencil)
    fxx, fxy = gradient(fx, stencil)
    _, fyy = gradient(fy, stencil)
    det = fxx * fyy - fxy * fxy
    grad_sq = fx * fx + fy * fy
    curvature = det / (1.0 + grad_sq) ** 2
    return DifferentialMaps(
        fx=fx, fy=fy, fxx=fxx, fxy=fxy, fyy=fyy, det=det, curvature=curvature, stencil=stencil
    )


def curvature_sign_field(maps: DifferentialMaps) -> np.ndarray:
    """Per-pixel sign of the determinant field as int8 in {-1, 0, +1}.

    Equal to the sign of the Gaussian curvature everywhere det != 0.
    """
    return np.sign(maps.det).astype(np.int8)
