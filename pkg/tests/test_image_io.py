import numpy as np
import pytest

from curvseg import (
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
from curvseg.image import REC601_LUMA
from PIL import Image as PILImage


def test_p5_normalization(tmp_path):
    path = tmp_path / "tiny.pgm"
    path.write_bytes(b"P5\n2 2\n255\n" + bytes([0, 255, 128, 64]))
    img = load_image(path)
    assert img.shape == (2, 2)
    np.testing.assert_array_equal(img, [[0.0, 1.0], [128 / 255, 64 / 255]])


def test_p2_with_comments(tmp_path):
    path = tmp_path / "ascii.pgm"
    path.write_bytes(b"P2\n# a comment\n3 1\n# another\n100\n0 50 100\n")
    img = load_image(path)
    np.testing.assert_array_equal(img, [[0.0, 0.5, 1.0]])


def test_p5_sixteen_bit(tmp_path):
    path = tmp_path / "deep.pgm"
    samples = np.array([[0, 65535], [32768, 1]], dtype=">u2")
    path.write_bytes(b"P5\n2 2\n65535\n" + samples.tobytes())
    img = load_image(path)
    np.testing.assert_allclose(img, samples.astype(float) / 65535)


def test_load_errors(tmp_path):
    with pytest.raises(UnreadableFileError):
        load_image(tmp_path / "missing.pgm")
    bad_magic = tmp_path / "bad.pgm"
    bad_magic.write_bytes(b"P7\n2 2\n255\n0000")
    with pytest.raises(MalformedHeaderError):
        load_image(bad_magic)
    truncated = tmp_path / "short.pgm"
    truncated.write_bytes(b"P5\n4 4\n255\n" + bytes(3))
    with pytest.raises(MalformedHeaderError):
        load_image(truncated)
    deep = tmp_path / "toodeep.pgm"
    deep.write_bytes(b"P5\n1 1\n70000\n" + bytes(4))
    with pytest.raises(UnsupportedFormatError):
        load_image(deep)
    overrange = tmp_path / "over.pgm"
    overrange.write_bytes(b"P2\n1 1\n10\n99\n")
    with pytest.raises(MalformedHeaderError):
        load_image(overrange)
    negative = tmp_path / "neg.pgm"
    negative.write_bytes(b"P2\n1 1\n10\n-3\n")
    with pytest.raises(MalformedHeaderError):
        load_image(negative)
    odd_payload = tmp_path / "odd.pgm"
    odd_payload.write_bytes(b"P5\n2 1\n65535\n" + bytes(3))
    with pytest.raises(MalformedHeaderError):
        load_image(odd_payload)


def test_png_gray_and_rgb(tmp_path):
    gray_path = tmp_path / "white.png"
    PILImage.fromarray(np.full((8, 8), 255, dtype=np.uint8), "L").save(gray_path)
    img = load_image(gray_path)
    assert img.shape == (8, 8)
    np.testing.assert_array_equal(img, 1.0)

    red_path = tmp_path / "red.png"
    rgb = np.zeros((2, 2, 3), dtype=np.uint8)
    rgb[..., 0] = 255
    PILImage.fromarray(rgb, "RGB").save(red_path)
    img = load_image(red_path)
    np.testing.assert_allclose(img, REC601_LUMA[0])


def test_png_unsupported_mode(tmp_path):
    path = tmp_path / "rgba.png"
    PILImage.new("RGBA", (4, 4)).save(path)
    with pytest.raises(UnsupportedFormatError):
        load_image(path)
    deep = tmp_path / "deep.png"
    PILImage.fromarray(np.zeros((4, 4), dtype=np.uint16)).save(deep)
    with pytest.raises(UnsupportedFormatError):
        load_image(deep)


def test_load_range_random_roundtrip(tmp_path, rng):
    # all loads land in [0, 1]; 8-bit-quantized images survive save/load
    img = rng.random((13, 9))
    path = tmp_path / "roundtrip.pgm"
    save_pgm(img, path)
    loaded = load_image(path)
    assert loaded.min() >= 0.0 and loaded.max() <= 1.0
    quantized = np.rint(img * 255) / 255
    np.testing.assert_allclose(loaded, quantized, atol=1e-12)
    save_pgm(loaded, path)
    np.testing.assert_array_equal(load_image(path), loaded)


def test_save_mask_payload(tmp_path):
    path = tmp_path / "mask.pgm"
    save_mask(np.array([[True, False]]), path)
    raw = path.read_bytes()
    assert raw == b"P5\n2 1\n255\n" + bytes([255, 0])

    save_mask(np.ones((3, 3), dtype=bool), path)
    assert path.read_bytes().endswith(bytes([255] * 9))


def test_mask_roundtrip(tmp_path, rng):
    path = tmp_path / "m.pgm"
    for _ in range(25):
        h, w = rng.integers(1, 40, size=2)
        mask = rng.random((h, w)) < 0.4
        save_mask(mask, path)
        np.testing.assert_array_equal(load_mask(path), mask)


def test_save_mask_rejects_non_bool(tmp_path):
    with pytest.raises(ValueError):
        save_mask(np.zeros((2, 2)), tmp_path / "x.pgm")


def test_affine_rescale():
    np.testing.assert_array_equal(affine_rescale(np.full((3, 3), 7.0)), 0.5)
    out = affine_rescale(np.array([[-2.0, 0.0, 2.0]]))
    np.testing.assert_array_equal(out, [[0.0, 0.5, 1.0]])


def test_overlay_identity_lift(rng):
    base = rng.random((6, 6))
    labels = np.zeros((6, 6), dtype=np.int8)
    boundary = np.zeros((6, 6), dtype=bool)
    out = render_overlay(base, labels, boundary, style="both")
    gray = np.rint(base * 255).astype(np.uint8)
    np.testing.assert_array_equal(out, np.repeat(gray[:, :, None], 3, axis=2))


def test_overlay_fill_blend():
    base = np.zeros((3, 3))
    labels = np.zeros((3, 3), dtype=np.int8)
    labels[1, 1] = 1  # convex
    out = render_overlay(base, labels, None, style="region-fill")
    np.testing.assert_array_equal(out[1, 1], [0, 0, 127])
    assert (out[0, 0] == 0).all()


def test_overlay_boundary_only():
    base = np.full((3, 3), 0.5)
    boundary = np.zeros((3, 3), dtype=bool)
    boundary[0, 2] = True
    out = render_overlay(base, None, boundary, style="boundary-only")
    np.testing.assert_array_equal(out[0, 2], [255, 255, 255])
    np.testing.assert_array_equal(out[1, 1], [128, 128, 128])


def test_overlay_errors(rng):
    base = rng.random((4, 4))
    with pytest.raises(ValueError):
        render_overlay(base, np.zeros((3, 3), dtype=np.int8), None, style="region-fill")
    with pytest.raises(ValueError):
        render_overlay(base, None, np.zeros((5, 5), dtype=bool), style="boundary-only")
    with pytest.raises(ValueError):
        render_overlay(base, None, None, style="nope")


def test_png_rgb_roundtrip(tmp_path, rng):
    rgb = (rng.random((5, 7, 3)) * 255).astype(np.uint8)
    path = tmp_path / "o.png"
    save_png_rgb(rgb, path)
    with PILImage.open(path) as reread:
        np.testing.assert_array_equal(np.asarray(reread), rgb)
