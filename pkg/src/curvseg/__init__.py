"""curvseg: closed-contour segmentation from image curvature sign tests.

An image is read as a topographic surface; after Gaussian smoothing, the
sign of the Hessian determinant (equivalently of the Gaussian curvature)
marks convex and concave regions whose exterior boundaries are always
closed contours. A marker-less gradient watershed is included as the
comparison baseline.
"""

from .classify import CONCAVE, CONVEX, NEITHER, REGION_MODES, classify, region_mask
from .derivatives import (
    STENCILS,
    DifferentialMaps,
    curvature_sign_field,
    gradient,
    hessian_maps,
)
from .image import (
    ImageIOError,
    MalformedHeaderError,
    UnreadableFileError,
    UnsupportedFormatError,
    affine_rescale,
    load_image,
    load_mask,
    render_overlay,
    save_mask,
    save_pgm,
    save_png_rgb,
)
from .morphology import (
    ComponentLabels,
    dilate3,
    exterior_boundary,
    label_components,
    prune_small,
)
from .multiscale import (
    MultiscaleOverlay,
    ScalePair,
    classify_at_scale,
    detect_at_scale,
    multiscale_composite,
)
from .smoothing import GaussianKernel, make_kernel, smooth
from .surfaces import (
    DEFAULT_GRID,
    AnalyticSurface,
    GridSpec,
    analytic_classification,
    bowl_surface,
    gaussian_blob_image,
    gaussian_blobs_surface,
    noisy_two_blob_image,
    peaks_surface,
    rasterize,
    saddle_surface,
    sample_jet,
    small_large_blob_image,
)
from .watershed import BasinLabeling, flood, gradient_modulus, watershed_contours

__version__ = "0.1.0"

__all__ = [
    "CONCAVE",
    "CONVEX",
    "NEITHER",
    "REGION_MODES",
    "STENCILS",
    "AnalyticSurface",
    "BasinLabeling",
    "ComponentLabels",
    "DEFAULT_GRID",
    "DifferentialMaps",
    "GaussianKernel",
    "GridSpec",
    "ImageIOError",
    "MalformedHeaderError",
    "MultiscaleOverlay",
    "ScalePair",
    "UnreadableFileError",
    "UnsupportedFormatError",
    "affine_rescale",
    "analytic_classification",
    "bowl_surface",
    "classify",
    "classify_at_scale",
    "curvature_sign_field",
    "detect_at_scale",
    "dilate3",
    "exterior_boundary",
    "flood",
    "gaussian_blob_image",
    "gaussian_blobs_surface",
    "gradient",
    "gradient_modulus",
    "hessian_maps",
    "label_components",
    "load_image",
    "load_mask",
    "make_kernel",
    "multiscale_composite",
    "noisy_two_blob_image",
    "peaks_surface",
    "prune_small",
    "rasterize",
    "region_mask",
    "render_overlay",
    "saddle_surface",
    "sample_jet",
    "save_mask",
    "save_pgm",
    "save_png_rgb",
    "small_large_blob_image",
    "smooth",
    "watershed_contours",
]
