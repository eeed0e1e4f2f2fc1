"""Marker-less watershed by immersion flooding of a gradient relief.

This is the comparison baseline: no user markers, no region merging. The
relief (normally the gradient modulus of an optionally smoothed image) is
quantized to 16-bit levels, every regional minimum — an 8-connected plateau
with no strictly lower 8-neighbor — seeds one basin, and pixels are flooded
in increasing (level, insertion sequence) order from a priority queue.

Semantics are pinned so results are reproducible across platforms:

* Ties at equal level break FIFO by insertion sequence; each pixel enters
  the queue exactly once. Neighbors are enqueued in raster order of the
  3x3 neighborhood.
* The basin/watershed decision is made when a pixel is popped: adjacent to
  exactly one basin it joins it, adjacent to two or more distinct basins it
  becomes a watershed pixel. A pixel whose decided neighbors are all
  watershed pixels becomes watershed as well, so the basins plus the
  watershed mask always partition the image.
* Every minimum keeps its own basin; basin count equals minimum count.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._jit import njit
from .derivatives import gradient
from .morphology import ComponentLabels
from .smoothing import make_kernel, smooth

_QUANT_LEVELS = 65535


@dataclass(frozen=True)
class BasinLabeling:
    """Catchment basins (labels 1..count, 0 on lines) plus the line mask."""

    labels: ComponentLabels
    watershed_mask: np.ndarray


def gradient_modulus(image: np.ndarray, stencil: str = "sobel") -> np.ndarray:
    """Per-pixel gradient magnitude sqrt(fx^2 + fy^2)."""
    fx, fy = gradient(image, stencil)
    return np.hypot(fx, fy)


def _quantize(relief: np.ndarray) -> np.ndarray:
    lo = relief.min()
    hi = relief.max()
    if hi == lo:
        return np.zeros(relief.shape, dtype=np.int64)
    scaled = (relief - lo) * (_QUANT_LEVELS / (hi - lo))
    return np.rint(scaled).astype(np.int64)


def _has_lower_neighbor(q: np.ndarray) -> np.ndarray:
    """True where some 8-neighbor is strictly lower (replicate borders)."""
    h, w = q.shape
    padded = np.pad(q, 1, mode="edge")
    out = np.zeros((h, w), dtype=bool)
    for dy in range(3):
        for dx in range(3):
            if dy == 1 and dx == 1:
                continue
            out |= padded[dy : dy + h, dx : dx + w] < q
    return out


@njit(cache=True)
def _spread_non_minima(q, non_min):
    # A plateau touching any lower ground is not a minimum: propagate the
    # non-minimum flag across equal-valued 8-neighbors until it saturates.
    h, w = q.shape
    queue = np.empty(h * w, dtype=np.int64)
    tail = 0
    for y in range(h):
        for x in range(w):
            if non_min[y, x]:
                queue[tail] = y * w + x
                tail += 1
    head = 0
    while head < tail:
        p = queue[head]
        head += 1
        y = p // w
        x = p % w
        v = q[y, x]
        for dy in range(-1, 2):
            for dx in range(-1, 2):
                ny = y + dy
                nx = x + dx
                if (dy == 0 and dx == 0) or ny < 0 or ny >= h or nx < 0 or nx >= w:
                    continue
                if non_min[ny, nx] == 0 and q[ny, nx] == v:
                    non_min[ny, nx] = 1
                    queue[tail] = ny * w + nx
                    tail += 1


@njit(cache=True)
def _label_minima(is_min):
    # Adjacent minima necessarily share a value (a higher neighbor of a
    # lower pixel cannot be a minimum), so components of is_min are exactly
    # the minima plateaus. Labeled in raster first-touch order.
    h, w = is_min.shape
    seeds = np.zeros((h, w), dtype=np.int32)
    stack = np.empty(h * w, dtype=np.int64)
    count = 0
    for y0 in range(h):
        for x0 in range(w):
            if is_min[y0, x0] == 0 or seeds[y0, x0] != 0:
                continue
            count += 1
            seeds[y0, x0] = count
            stack[0] = y0 * w + x0
            top = 1
            while top > 0:
                top -= 1
                p = stack[top]
                y = p // w
                x = p % w
                for dy in range(-1, 2):
                    for dx in range(-1, 2):
                        ny = y + dy
                        nx = x + dx
                        if ny < 0 or ny >= h or nx < 0 or nx >= w:
                            continue
                        if is_min[ny, nx] != 0 and seeds[ny, nx] == 0:
                            seeds[ny, nx] = count
                            stack[top] = ny * w + nx
                            top += 1
    return seeds, count


@njit(cache=True)
def _flood_kernel(qflat, labels, h, w):
    # labels in/out: >0 basin, 0 undecided, -1 watershed. Binary min-heap
    # keyed on level*2^32 + insertion sequence; each pixel enters once.
    n = h * w
    heap_key = np.empty(n, dtype=np.int64)
    heap_idx = np.empty(n, dtype=np.int64)
    in_heap = np.zeros(n, dtype=np.uint8)
    size = 0
    seq = 0
    for p in range(n):
        if labels[p] > 0:
            key = (qflat[p] << 32) | seq
            seq += 1
            in_heap[p] = 1
            i = size
            heap_key[i] = key
            heap_idx[i] = p
            size += 1
            while i > 0:
                up = (i - 1) >> 1
                if heap_key[up] <= heap_key[i]:
                    break
                heap_key[up], heap_key[i] = heap_key[i], heap_key[up]
                heap_idx[up], heap_idx[i] = heap_idx[i], heap_idx[up]
                i = up
    while size > 0:
        p = heap_idx[0]
        size -= 1
        heap_key[0] = heap_key[size]
        heap_idx[0] = heap_idx[size]
        i = 0
        while True:
            left = 2 * i + 1
            right = left + 1
            small = i
            if left < size and heap_key[left] < heap_key[small]:
                small = left
            if right < size and heap_key[right] < heap_key[small]:
                small = right
            if small == i:
                break
            heap_key[small], heap_key[i] = heap_key[i], heap_key[small]
            heap_idx[small], heap_idx[i] = heap_idx[i], heap_idx[small]
            i = small
        y = p // w
        x = p % w
        if labels[p] == 0:
            first = 0
            clash = False
            for dy in range(-1, 2):
                for dx in range(-1, 2):
                    ny = y + dy
                    nx = x + dx
                    if (dy == 0 and dx == 0) or ny < 0 or ny >= h or nx < 0 or nx >= w:
                        continue
                    lab = labels[ny * w + nx]
                    if lab > 0:
                        if first == 0:
                            first = lab
                        elif lab != first:
                            clash = True
            if clash or first == 0:
                labels[p] = -1
            else:
                labels[p] = first
        for dy in range(-1, 2):
            for dx in range(-1, 2):
                ny = y + dy
                nx = x + dx
                if (dy == 0 and dx == 0) or ny < 0 or ny >= h or nx < 0 or nx >= w:
                    continue
                np_ = ny * w + nx
                if in_heap[np_] == 0 and labels[np_] == 0:
                    in_heap[np_] = 1
                    key = (qflat[np_] << 32) | seq
                    seq += 1
                    i = size
                    heap_key[i] = key
                    heap_idx[i] = np_
                    size += 1
                    while i > 0:
                        up = (i - 1) >> 1
                        if heap_key[up] <= heap_key[i]:
                            break
                        heap_key[up], heap_key[i] = heap_key[i], heap_key[up]
                        heap_idx[up], heap_idx[i] = heap_idx[i], heap_idx[up]
                        i = up


def flood(relief: np.ndarray) -> BasinLabeling:
    """Flood a finite relief from its regional minima.

    Returns basins labeled 1..count (0 on watershed lines) together with
    the watershed-line mask. Deterministic for a given relief.
    """
    relief = np.asarray(relief, dtype=np.float64)
    if relief.ndim != 2 or relief.size == 0:
        raise ValueError(f"relief must be a non-empty 2-D array, got shape {relief.shape}")
    if not np.all(np.isfinite(relief)):
        raise ValueError("relief contains non-finite values")
    q = _quantize(relief)
    non_min = _has_lower_neighbor(q).astype(np.uint8)
    _spread_non_minima(q, non_min)
    seeds, count = _label_minima((non_min == 0).astype(np.uint8))
    labels = seeds.ravel().astype(np.int32)
    _flood_kernel(q.ravel(), labels, q.shape[0], q.shape[1])
    labels = labels.reshape(q.shape)
    watershed_mask = labels == -1
    basin_labels = np.where(watershed_mask, np.int32(0), labels)
    return BasinLabeling(
        labels=ComponentLabels(labels=basin_labels, count=int(count)),
        watershed_mask=watershed_mask,
    )


def watershed_contours(image: np.ndarray, sigma: float = 0.0, stencil: str = "sobel") -> np.ndarray:
    """Watershed lines of the gradient modulus, with optional pre-smoothing.

    ``sigma`` of 0 floods the raw gradient relief; positive values smooth
    the image first, exactly as the convexity pipeline would.
    """
    if sigma < 0:
        raise ValueError(f"sigma must be non-negative, got {sigma}")
    if sigma > 0:
        image = smooth(image, make_kernel(sigma))
    return flood(gradient_modulus(image, stencil)).watershed_mask
