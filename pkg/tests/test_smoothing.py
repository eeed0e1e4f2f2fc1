import numpy as np
import pytest

from curvseg import make_kernel, smooth


def brute_smooth_2d(image, weights):
    """Full 2-D convolution with the outer-product kernel, replicate pad.

    Deliberately naive; the independent reference for the separable path.
    """
    r = len(weights) // 2
    kernel2d = np.outer(weights, weights)
    padded = np.pad(image, r, mode="edge")
    out = np.empty_like(image, dtype=np.float64)
    for y in range(image.shape[0]):
        for x in range(image.shape[1]):
            out[y, x] = np.sum(padded[y : y + 2 * r + 1, x : x + 2 * r + 1] * kernel2d)
    return out


def test_kernel_sigma_one():
    k = make_kernel(1.0)
    assert k.radius == 2
    assert len(k.weights) == 5
    assert k.weights[2] == k.weights.max()
    assert abs(k.weights.sum() - 1.0) < 1e-12


def test_kernel_sigma_ten():
    k = make_kernel(10.0)
    assert k.radius == 20
    assert len(k.weights) == 41


@pytest.mark.parametrize("sigma", [0.3, 1.0, 2.5, 7.5, 30.0])
def test_kernel_symmetry_positivity(sigma):
    k = make_kernel(sigma)
    np.testing.assert_array_equal(k.weights, k.weights[::-1])
    assert (k.weights > 0).all()
    assert abs(k.weights.sum() - 1.0) < 1e-12


@pytest.mark.parametrize("sigma", [0.0, -1.0, float("nan"), float("inf")])
def test_kernel_rejects_bad_sigma(sigma):
    with pytest.raises(ValueError):
        make_kernel(sigma)


def test_constant_preserved():
    k = make_kernel(3.0)
    out = smooth(np.full((20, 30), 0.7), k)
    np.testing.assert_array_equal(out, 0.7)


def test_impulse_gives_outer_product():
    k = make_kernel(1.5)  # radius 3
    n = 4 * k.radius + 1
    img = np.zeros((n, n))
    c = n // 2
    img[c, c] = 1.0
    out = smooth(img, k)
    r = k.radius
    window = out[c - r : c + r + 1, c - r : c + r + 1]
    np.testing.assert_array_equal(window, np.outer(k.weights, k.weights))
    # nothing outside the kernel support
    assert out[c, c + r + 1] == 0.0 and out[c - r - 1, c] == 0.0


def test_separable_matches_bruteforce(rng):
    k = make_kernel(2.0)
    for _ in range(3):
        img = rng.random((32, 32))
        sep = smooth(img, k)
        full = brute_smooth_2d(img, k.weights)
        assert np.max(np.abs(sep - full)) < 1e-10


def test_linearity(rng):
    k = make_kernel(2.5)
    f = rng.random((24, 24))
    g = rng.random((24, 24))
    lhs = smooth(1.7 * f + 0.3 * g, k)
    rhs = 1.7 * smooth(f, k) + 0.3 * smooth(g, k)
    assert np.max(np.abs(lhs - rhs)) < 1e-10


def test_max_principle(rng):
    k = make_kernel(4.0)
    img = rng.random((40, 40)) * 5 - 2
    out = smooth(img, k)
    assert out.min() >= img.min() - 1e-12
    assert out.max() <= img.max() + 1e-12


def test_flip_commutes_bitwise(rng):
    # symmetric pairwise tap accumulation makes this exact, not approximate
    k = make_kernel(3.0)
    img = rng.random((17, 23))
    np.testing.assert_array_equal(smooth(img[:, ::-1], k), smooth(img, k)[:, ::-1])
    np.testing.assert_array_equal(smooth(img[::-1, :], k), smooth(img, k)[::-1, :])


def test_deterministic(rng):
    k = make_kernel(2.0)
    img = rng.random((31, 19))
    np.testing.assert_array_equal(smooth(img, k), smooth(img, k))


def test_rejects_empty():
    with pytest.raises(ValueError):
        smooth(np.zeros((0, 4)), make_kernel(1.0))
