"""Stage and end-to-end timings on synthetic inputs.

Each stage is timed over at least 5 runs after one discarded warmup; the
median is reported together with pixel throughput. The watershed baseline
is timed at the same sizes for comparison. Benchmarking calls only the
public pure functions, so it can never perturb pipeline outputs.
"""

from __future__ import annotations

import argparse
import statistics
import time
from dataclasses import dataclass

import numpy as np

from .classify import classify, region_mask
from .derivatives import hessian_maps
from .morphology import exterior_boundary
from .multiscale import detect_at_scale
from .smoothing import make_kernel, smooth
from .surfaces import gaussian_blob_image
from .watershed import watershed_contours

MIN_RUNS = 5


@dataclass(frozen=True)
class BenchReport:
    stage: str
    width: int
    height: int
    sigma: float
    median_s: float
    runs: int
    throughput_px_s: float


def synthetic_input(width: int, height: int) -> np.ndarray:
    """Deterministic benchmark scene: two blobs plus mild noise."""
    img = gaussian_blob_image(
        width,
        height,
        (
            (0.33 * width, 0.4 * height, 1.0, 0.08 * min(width, height)),
            (0.7 * width, 0.62 * height, 0.7, 0.05 * min(width, height)),
        ),
    )
    rng = np.random.default_rng(20240915)
    return img + rng.normal(0.0, 0.01, img.shape)


def time_stage(fn, runs: int = MIN_RUNS) -> tuple[float, int]:
    """Median wall-clock of ``fn`` over ``runs`` timed calls (1 warmup)."""
    runs = max(int(runs), MIN_RUNS)
    fn()
    times = []
    for _ in range(runs):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return statistics.median(times), runs


def bench_pipeline(sizes, sigmas, runs: int = MIN_RUNS) -> list[BenchReport]:
    """Time every stage at each (width, height) x sigma combination."""
    reports = []
    for width, height in sizes:
        image = synthetic_input(width, height)
        pixels = width * height
        for sigma in sigmas:
            kernel = make_kernel(sigma)
            smoothed = smooth(image, kernel)
            maps = hessian_maps(smoothed)
            region = region_mask(classify(maps))
            stages = (
                ("smooth", lambda: smooth(image, kernel)),
                ("hessian", lambda: hessian_maps(smoothed)),
                ("classify", lambda: region_mask(classify(maps))),
                ("boundary", lambda: exterior_boundary(region)),
                ("detect", lambda: detect_at_scale(image, sigma)),
                ("watershed", lambda: watershed_contours(image, sigma)),
            )
            for name, fn in stages:
                median, nruns = time_stage(fn, runs)
                reports.append(
                    BenchReport(
                        stage=name,
                        width=width,
                        height=height,
                        sigma=float(sigma),
                        median_s=median,
                        runs=nruns,
                        throughput_px_s=pixels / median if median > 0 else float("inf"),
                    )
                )
    return reports


def format_report(reports) -> str:
    lines = ["threads=1"]
    for r in reports:
        lines.append(
            f"stage={r.stage} width={r.width} height={r.height} sigma={r.sigma:g} "
            f"runs={r.runs} median_s={r.median_s:.4f} throughput_px_s={r.throughput_px_s:.0f}"
        )
    return "\n".join(lines) + "\n"


def _parse_sizes(text: str):
    sizes = []
    for chunk in text.split(","):
        w, _, h = chunk.partition("x")
        sizes.append((int(w), int(h)))
    return sizes


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(prog="curvseg-bench", description=__doc__)
    parser.add_argument("--sizes", type=_parse_sizes, default=[(256, 256), (1200, 1200)],
                        help="comma-separated WxH list (default 256x256,1200x1200)")
    parser.add_argument("--sigmas", type=lambda s: [float(v) for v in s.split(",")],
                        default=[10.0], help="comma-separated sigma list (default 10)")
    parser.add_argument("--runs", type=int, default=MIN_RUNS)
    parser.add_argument("-o", "--output", default=None, help="also write the report here")
    args = parser.parse_args(argv)

    report = format_report(bench_pipeline(args.sizes, args.sigmas, args.runs))
    if args.output:
        with open(args.output, "w", encoding="ascii") as fh:
            fh.write(report)
    print(report, end="")
    return 0


if __name__ == "__main__":
    main()
