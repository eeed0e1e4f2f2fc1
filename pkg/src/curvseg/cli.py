"""Command-line front end for the segmentation pipeline.

Every pipeline stage is exposed as a subcommand; running with just an
input path performs ``detect`` with default settings. Masks are written
as PGM, overlays and composites as PNG, reports as flat key=value text.
Identical flags and input always produce byte-identical outputs.
"""

from __future__ import annotations

import argparse
import sys
import time
from contextlib import contextmanager
from pathlib import Path

import numpy as np

from .classify import CONCAVE, CONVEX, NEITHER, REGION_MODES, classify, region_mask
from .derivatives import STENCILS, hessian_maps
from .image import (
    ImageIOError,
    affine_rescale,
    load_image,
    render_overlay,
    save_mask,
    save_pgm,
    save_png_rgb,
)
from .morphology import exterior_boundary, label_components, prune_small
from .multiscale import ScalePair, multiscale_composite
from .smoothing import make_kernel, smooth
from .surfaces import (
    GridSpec,
    analytic_classification,
    bowl_surface,
    peaks_surface,
    rasterize,
    saddle_surface,
)
from .watershed import BasinLabeling, flood, gradient_modulus

COMMANDS = (
    "smooth",
    "maps",
    "classify",
    "boundary",
    "detect",
    "multiscale",
    "watershed",
    "compare",
    "oracle",
)

_SURFACES = {"peaks": peaks_surface, "bowl": bowl_surface, "saddle": saddle_surface}


class CommandError(Exception):
    """Pipeline failure already annotated with the stage that raised it."""


@contextmanager
def _stage(name: str):
    try:
        yield
    except CommandError:
        raise
    except (ImageIOError, ValueError, OSError) as exc:
        raise CommandError(f"error in {name} stage: {exc}") from exc


def _parse_color(text: str):
    parts = text.split(",")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError(f"expected R,G,B got {text!r}")
    try:
        rgb = tuple(int(p) for p in parts)
    except ValueError:
        raise argparse.ArgumentTypeError(f"non-integer color component in {text!r}") from None
    if any(not 0 <= c <= 255 for c in rgb):
        raise argparse.ArgumentTypeError(f"color components must be in 0..255: {text!r}")
    return rgb


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", metavar="PREFIX", default=None,
                        help="output path prefix (default: input file stem)")
    common.add_argument("--sigma", type=float, default=10.0,
                        help="smoothing scale in pixels (default 10)")
    common.add_argument("--mode", choices=REGION_MODES, default="combined",
                        help="which region type to select (default combined)")
    common.add_argument("--stencil", choices=STENCILS, default="sobel",
                        help="derivative stencil (default sobel)")
    common.add_argument("--min-area", type=int, default=0,
                        help="drop components smaller than this many pixels (default 0)")
    common.add_argument("--connectivity", type=int, choices=(4, 8), default=8,
                        help="component connectivity (default 8)")
    common.add_argument("--boundary-color", type=_parse_color, default=(255, 255, 255),
                        metavar="R,G,B", help="overlay boundary color (default white)")

    parser = argparse.ArgumentParser(
        prog="curvseg",
        description="Closed-contour detection around convex/concave image regions, "
        "with a gradient-watershed baseline.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, with_input=True):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if with_input:
            p.add_argument("input", help="input image (PGM or PNG)")
        return p

    add("smooth", "write the Gaussian-smoothed image")
    add("maps", "write derivative/determinant/curvature heatmaps")
    add("classify", "write a convex/concave fill overlay and print label counts")
    add("boundary", "write the region boundary mask")
    add("detect", "full pipeline: region mask, boundary mask, overlay")
    p = add("multiscale", "two-scale composite: small-scale fill, large-scale outline")
    p.add_argument("--sigma2", type=float, required=True,
                   help="large smoothing scale (must exceed --sigma)")
    add("watershed", "gradient-watershed baseline: basin image and line overlay")
    add("compare", "run convexity pipeline and watershed side by side with a report")
    p = add("oracle", "emit the built-in test surface and its exact classification",
            with_input=False)
    p.add_argument("--surface", choices=sorted(_SURFACES), default="peaks")
    p.add_argument("--grid-size", type=int, default=512, help="grid nodes per axis")
    p.add_argument("--extent", type=float, default=3.0, help="half-width of the domain")
    return parser


def _prefix(args) -> str:
    if args.output:
        return args.output
    if getattr(args, "input", None):
        return str(Path(args.input).with_suffix(""))
    return args.command


def _load(args) -> np.ndarray:
    with _stage("load"):
        return load_image(args.input)


def _require_positive_sigma(args) -> None:
    if args.sigma <= 0:
        raise CommandError(f"error in setup stage: sigma must be positive, got {args.sigma}")


def _region_pipeline(image, args):
    """smooth -> maps -> classify -> region mask (+ optional pruning)."""
    with _stage("smoothing"):
        smoothed = smooth(image, make_kernel(args.sigma))
    with _stage("derivatives"):
        maps = hessian_maps(smoothed, args.stencil)
    with _stage("classification"):
        labels = classify(maps)
        region = region_mask(labels, args.mode)
    if args.min_area > 0:
        with _stage("pruning"):
            region = prune_small(label_components(region, args.connectivity), args.min_area)
    return labels, region


def _basin_colors(labeling: BasinLabeling) -> np.ndarray:
    # fixed hash palette: label 0 black, watershed pixels white
    ids = np.arange(labeling.labels.count + 1, dtype=np.int64)
    palette = np.stack([(ids * 73) % 256, (ids * 137) % 256, (ids * 199) % 256], axis=1)
    palette[0] = 0
    rgb = palette[labeling.labels.labels].astype(np.uint8)
    rgb[labeling.watershed_mask] = 255
    return rgb


def _cmd_smooth(args) -> None:
    _require_positive_sigma(args)
    image = _load(args)
    t0 = time.perf_counter()
    with _stage("smoothing"):
        smoothed = smooth(image, make_kernel(args.sigma))
    with _stage("write"):
        save_pgm(smoothed, f"{_prefix(args)}_smooth.pgm")
    print(f"elapsed_s={time.perf_counter() - t0:.3f}")


def _cmd_maps(args) -> None:
    _require_positive_sigma(args)
    image = _load(args)
    t0 = time.perf_counter()
    with _stage("smoothing"):
        smoothed = smooth(image, make_kernel(args.sigma))
    with _stage("derivatives"):
        maps = hessian_maps(smoothed, args.stencil)
    fields = {
        "fx": maps.fx, "fy": maps.fy, "fxx": maps.fxx, "fxy": maps.fxy,
        "fyy": maps.fyy, "det": maps.det, "curvature": maps.curvature,
    }
    with _stage("write"):
        for name, field in fields.items():
            # visualization heatmaps only: affine rescale, not bit-exact
            save_pgm(affine_rescale(field), f"{_prefix(args)}_{name}.pgm")
    print(f"elapsed_s={time.perf_counter() - t0:.3f}")


def _cmd_classify(args) -> None:
    _require_positive_sigma(args)
    image = _load(args)
    t0 = time.perf_counter()
    labels, region = _region_pipeline(image, args)
    shown = np.where(region, labels, NEITHER)
    with _stage("write"):
        save_png_rgb(
            render_overlay(image, shown, None, style="region-fill"),
            f"{_prefix(args)}_classes.png",
        )
    print(f"convex={int((labels == CONVEX).sum())}")
    print(f"concave={int((labels == CONCAVE).sum())}")
    print(f"neither={int((labels == NEITHER).sum())}")
    print(f"total={labels.size}")
    print(f"elapsed_s={time.perf_counter() - t0:.3f}")


def _cmd_boundary(args) -> None:
    _require_positive_sigma(args)
    image = _load(args)
    t0 = time.perf_counter()
    _, region = _region_pipeline(image, args)
    with _stage("boundary"):
        boundary = exterior_boundary(region)
    with _stage("write"):
        save_mask(boundary, f"{_prefix(args)}_boundary.pgm")
    print(f"elapsed_s={time.perf_counter() - t0:.3f}")


def _cmd_detect(args) -> None:
    _require_positive_sigma(args)
    image = _load(args)
    t0 = time.perf_counter()
    labels, region = _region_pipeline(image, args)
    with _stage("boundary"):
        boundary = exterior_boundary(region)
    with _stage("components"):
        components = label_components(region, args.connectivity)
    prefix = _prefix(args)
    with _stage("write"):
        save_mask(region, f"{prefix}_region.pgm")
        save_mask(boundary, f"{prefix}_boundary.pgm")
        overlay = render_overlay(
            image, np.where(region, labels, NEITHER), boundary,
            style="both", boundary_color=args.boundary_color,
        )
        save_png_rgb(overlay, f"{prefix}_overlay.png")
    print(f"components={components.count}")
    print(f"elapsed_s={time.perf_counter() - t0:.3f}")


def _cmd_multiscale(args) -> None:
    _require_positive_sigma(args)
    if args.sigma2 is None or args.sigma2 <= args.sigma:
        raise CommandError(
            f"error in setup stage: --sigma2 must exceed --sigma, got {args.sigma2}"
        )
    image = _load(args)
    t0 = time.perf_counter()
    with _stage("multiscale"):
        overlay_spec = multiscale_composite(
            image, ScalePair(args.sigma, args.sigma2), args.mode, args.stencil,
            min_area=args.min_area,
        )
    prefix = _prefix(args)
    with _stage("write"):
        save_mask(overlay_spec.fill, f"{prefix}_fill.pgm")
        save_mask(overlay_spec.outline, f"{prefix}_outline.pgm")
        composite = render_overlay(
            image, overlay_spec.fill_labels, overlay_spec.outline,
            style="both", boundary_color=args.boundary_color,
        )
        save_png_rgb(composite, f"{prefix}_multiscale.png")
    print(f"elapsed_s={time.perf_counter() - t0:.3f}")


def _watershed_pipeline(image, args) -> BasinLabeling:
    if args.sigma < 0:
        raise CommandError(f"error in setup stage: sigma must be non-negative, got {args.sigma}")
    with _stage("smoothing"):
        relief_src = smooth(image, make_kernel(args.sigma)) if args.sigma > 0 else image
    with _stage("gradient"):
        relief = gradient_modulus(relief_src, args.stencil)
    with _stage("flood"):
        return flood(relief)


def _cmd_watershed(args) -> None:
    image = _load(args)
    t0 = time.perf_counter()
    basins = _watershed_pipeline(image, args)
    prefix = _prefix(args)
    with _stage("write"):
        save_png_rgb(_basin_colors(basins), f"{prefix}_basins.png")
        lines = render_overlay(
            image, None, basins.watershed_mask,
            style="boundary-only", boundary_color=args.boundary_color,
        )
        save_png_rgb(lines, f"{prefix}_lines.png")
    print(f"basins={basins.labels.count}")
    print(f"elapsed_s={time.perf_counter() - t0:.3f}")


def _cmd_compare(args) -> None:
    _require_positive_sigma(args)
    image = _load(args)
    timings: dict[str, float] = {}

    def timed(name, fn):
        t0 = time.perf_counter()
        with _stage(name):
            result = fn()
        timings[name] = time.perf_counter() - t0
        return result

    # both methods see the same smoothed image at the same sigma
    smoothed = timed("smoothing", lambda: smooth(image, make_kernel(args.sigma)))
    maps = timed("derivatives", lambda: hessian_maps(smoothed, args.stencil))
    labels = classify(maps)
    region = timed("classification", lambda: region_mask(labels, args.mode))
    if args.min_area > 0:
        region = timed(
            "pruning",
            lambda: prune_small(label_components(region, args.connectivity), args.min_area),
        )
    boundary = timed("boundary", lambda: exterior_boundary(region))
    with _stage("components"):
        components = label_components(region, args.connectivity)
    detect_total = sum(timings.values())

    relief = timed("gradient", lambda: gradient_modulus(smoothed, args.stencil))
    basins = timed("flood", lambda: flood(relief))
    watershed_total = timings["smoothing"] + timings["gradient"] + timings["flood"]

    prefix = _prefix(args)
    with _stage("write"):
        left = render_overlay(
            image, None, basins.watershed_mask,
            style="boundary-only", boundary_color=args.boundary_color,
        )
        right = render_overlay(
            image, np.where(region, labels, NEITHER), boundary,
            style="both", boundary_color=args.boundary_color,
        )
        save_png_rgb(np.concatenate([left, right], axis=1), f"{prefix}_compare.png")
        report_lines = [
            f"width={image.shape[1]}",
            f"height={image.shape[0]}",
            f"sigma={args.sigma}",
            f"stencil={args.stencil}",
            f"mode={args.mode}",
            f"min_area={args.min_area}",
            f"convexity_components={components.count}",
            f"watershed_basins={basins.labels.count}",
        ]
        report_lines += [f"time_{name}_s={value:.4f}" for name, value in timings.items()]
        report_lines += [
            f"time_detect_total_s={detect_total:.4f}",
            f"time_watershed_total_s={watershed_total:.4f}",
        ]
        report = "\n".join(report_lines) + "\n"
        with open(f"{prefix}_report.txt", "w", encoding="ascii") as fh:
            fh.write(report)
    print(report, end="")


def _cmd_oracle(args) -> None:
    t0 = time.perf_counter()
    with _stage("setup"):
        surface = _SURFACES[args.surface]()
        extent = args.extent
        grid = GridSpec(-extent, extent, -extent, extent, args.grid_size, args.grid_size)
    with _stage("sampling"):
        raster = rasterize(surface, grid)
        truth = analytic_classification(surface, grid)
    prefix = _prefix(args)
    with _stage("write"):
        save_pgm(raster, f"{prefix}_surface.pgm")
        save_png_rgb(
            render_overlay(raster, truth, None, style="region-fill"),
            f"{prefix}_classes.png",
        )
        save_mask(truth == CONVEX, f"{prefix}_convex.pgm")
        save_mask(truth == CONCAVE, f"{prefix}_concave.pgm")
    print(f"elapsed_s={time.perf_counter() - t0:.3f}")


_HANDLERS = {
    "smooth": _cmd_smooth,
    "maps": _cmd_maps,
    "classify": _cmd_classify,
    "boundary": _cmd_boundary,
    "detect": _cmd_detect,
    "multiscale": _cmd_multiscale,
    "watershed": _cmd_watershed,
    "compare": _cmd_compare,
    "oracle": _cmd_oracle,
}


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    # a bare input path runs `detect` with defaults
    if argv and argv[0] not in COMMANDS and not argv[0].startswith("-"):
        argv.insert(0, "detect")
    args = _build_parser().parse_args(argv)
    try:
        _HANDLERS[args.command](args)
    except CommandError as exc:
        print(f"curvseg: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
