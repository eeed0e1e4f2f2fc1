import numpy as np
import pytest


def quadratic_grid(fn, half_extent=8):
    """Sample f(x, y) on the integer lattice [-half_extent, half_extent]^2.

    Central differences are exact for quadratics on this grid, which makes
    zero-tolerance derivative tests possible.
    """
    coords = np.arange(-half_extent, half_extent + 1, dtype=np.float64)
    X, Y = np.meshgrid(coords, coords)
    return fn(X, Y)


def interior(arr, margin):
    return arr[margin:-margin, margin:-margin]


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


@pytest.fixture
def bowl_image():
    return quadratic_grid(lambda x, y: x * x + y * y)


@pytest.fixture
def saddle_image():
    return quadratic_grid(lambda x, y: x * x - y * y)


def random_blob_mask(rng, size=64, margin=6):
    """A few random disks kept away from the frame, as a bool mask."""
    mask = np.zeros((size, size), dtype=bool)
    ys, xs = np.mgrid[0:size, 0:size]
    for _ in range(rng.integers(1, 5)):
        r = rng.integers(3, 11)
        cy = rng.integers(margin + r, size - margin - r)
        cx = rng.integers(margin + r, size - margin - r)
        mask |= (xs - cx) ** 2 + (ys - cy) ** 2 <= r * r
    return mask
