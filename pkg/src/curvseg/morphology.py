"""Binary-mask morphology: 3x3 dilation, exterior boundaries, components.

The boundary produced here is *exterior*: it consists of background pixels
8-adjacent to the region, one pixel thick, computed as dilate3(mask) & ~mask.
Many libraries default to interior boundaries; this one sits just outside
the region, so region and boundary are always disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._jit import njit


@dataclass(frozen=True)
class ComponentLabels:
    """Connected-component labeling: int32 labels (0 = background), count.

    Labels 1..count are assigned in raster-scan first-touch order.
    """

    labels: np.ndarray
    count: int


def _as_mask(mask: np.ndarray) -> np.ndarray:
    mask = np.asarray(mask)
    if mask.ndim != 2 or mask.size == 0:
        raise ValueError(f"mask must be a non-empty 2-D array, got shape {mask.shape}")
    return mask.astype(bool, copy=False)


def dilate3(mask: np.ndarray) -> np.ndarray:
    """Dilate with the full 3x3 structuring element (clipped at borders)."""
    mask = _as_mask(mask)
    h, w = mask.shape
    padded = np.pad(mask, 1, mode="constant", constant_values=False)
    out = np.zeros_like(mask)
    for dy in range(3):
        for dx in range(3):
            out |= padded[dy : dy + h, dx : dx + w]
    return out


def exterior_boundary(mask: np.ndarray) -> np.ndarray:
    """Background pixels 8-adjacent to the mask: dilate3(mask) & ~mask."""
    mask = _as_mask(mask)
    return dilate3(mask) & ~mask


@njit(cache=True)
def _uf_find(parent, i):
    root = i
    while parent[root] != root:
        root = parent[root]
    while parent[i] != root:
        nxt = parent[i]
        parent[i] = root
        i = nxt
    return root


@njit(cache=True)
def _label_kernel(mask, conn8):
    h, w = mask.shape
    labels = np.zeros((h, w), dtype=np.int32)
    parent = np.zeros(h * w // 2 + 2, dtype=np.int32)
    nprov = 0
    for y in range(h):
        for x in range(w):
            if not mask[y, x]:
                continue
            # already-visited neighbors: W, and for 8-connectivity NW, N, NE
            best = 0
            for k in range(4):
                if k == 0:
                    ny, nx = y, x - 1
                elif not conn8 and k < 3:
                    continue
                elif not conn8:
                    ny, nx = y - 1, x
                else:
                    ny, nx = y - 1, x - 2 + k
                if ny < 0 or nx < 0 or nx >= w or not mask[ny, nx]:
                    continue
                root = _uf_find(parent, labels[ny, nx])
                if best == 0 or root < best:
                    if best != 0:
                        parent[max(root, best)] = min(root, best)
                        best = min(root, best)
                    else:
                        best = root
                elif root != best:
                    parent[root] = best
            if best == 0:
                nprov += 1
                parent[nprov] = nprov
                labels[y, x] = nprov
            else:
                labels[y, x] = best
    # compact to 1..count; union-by-min keeps each root the earliest
    # provisional label of its class, i.e. raster first-touch order
    final = np.zeros(nprov + 1, dtype=np.int32)
    count = 0
    for i in range(1, nprov + 1):
        if _uf_find(parent, i) == i:
            count += 1
            final[i] = count
    for y in range(h):
        for x in range(w):
            lab = labels[y, x]
            if lab > 0:
                labels[y, x] = final[_uf_find(parent, lab)]
    return labels, count


def label_components(mask: np.ndarray, connectivity: int = 8) -> ComponentLabels:
    """Label connected components of a mask with 4- or 8-connectivity."""
    if connectivity not in (4, 8):
        raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")
    mask = _as_mask(mask)
    labels, count = _label_kernel(mask, connectivity == 8)
    return ComponentLabels(labels=labels, count=int(count))


def prune_small(components: ComponentLabels, min_area: int) -> np.ndarray:
    """Mask of pixels whose component has at least ``min_area`` pixels."""
    if min_area < 0:
        raise ValueError(f"min_area must be non-negative, got {min_area}")
    counts = np.bincount(components.labels.ravel(), minlength=components.count + 1)
    keep = counts >= min_area
    keep[0] = False
    return keep[components.labels]
