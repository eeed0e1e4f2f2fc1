"""Grayscale image representation and PGM/PNG file I/O.

Conventions used throughout the package:

* An image is a 2-D ``float64`` array of shape ``(height, width)``,
  row 0 at the top, y increasing downward, samples normalized to [0, 1].
* A binary mask is a 2-D ``bool`` array with the same layout.
* Loaders divide by the file format's declared maximum value; color PNG
  input is reduced to grayscale with Rec.601 luma before normalization.

PGM (P2/P5, 8- and 16-bit) is parsed and written natively so that mask
round-trips are bit-exact. PNG reading/writing goes through Pillow.
"""

from __future__ import annotations

import re

import numpy as np
from PIL import Image as _PILImage
from PIL import UnidentifiedImageError

from .classify import CONCAVE, CONVEX

REC601_LUMA = (0.299, 0.587, 0.114)

_PNG_SIGNATURE = b"\x89PNG\r\n\x1a\n"

OVERLAY_STYLES = ("region-fill", "boundary-only", "both")


class ImageIOError(Exception):
    """Base class for image file failures."""


class UnreadableFileError(ImageIOError):
    """The file could not be opened or read at the OS level."""


class MalformedHeaderError(ImageIOError):
    """The file's header or payload does not match its format."""


class UnsupportedFormatError(ImageIOError):
    """Recognized format, but a bit depth or color mode we do not handle."""


def _require_image(img: np.ndarray, name: str = "image") -> np.ndarray:
    img = np.asarray(img, dtype=np.float64)
    if img.ndim != 2 or img.shape[0] < 1 or img.shape[1] < 1:
        raise ValueError(f"{name} must be a non-empty 2-D array, got shape {img.shape}")
    return img


def affine_rescale(field: np.ndarray) -> np.ndarray:
    """Affinely map a real field onto [0, 1]; a constant field maps to 0.5."""
    field = np.asarray(field, dtype=np.float64)
    lo = field.min()
    hi = field.max()
    if hi == lo:
        return np.full(field.shape, 0.5)
    return (field - lo) / (hi - lo)


# ---------------------------------------------------------------------------
# PGM


def _parse_pgm(data: bytes, path: str) -> np.ndarray:
    # Header tokens (magic, width, height, maxval) may be separated by any
    # whitespace and interleaved with '#' comments, per the netpbm spec.
    tokens = []
    pos = 0
    while len(tokens) < 4:
        m = re.compile(rb"\s*(?:#[^\n]*\n\s*)*(\S+)").match(data, pos)
        if m is None:
            raise MalformedHeaderError(f"{path}: truncated PGM header")
        tokens.append(m.group(1))
        pos = m.end()
    magic = tokens[0]
    if magic not in (b"P2", b"P5"):
        raise MalformedHeaderError(f"{path}: not a P2/P5 PGM (magic {magic!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError:
        raise MalformedHeaderError(f"{path}: non-numeric PGM dimensions") from None
    if width < 1 or height < 1:
        raise MalformedHeaderError(f"{path}: bad PGM dimensions {width}x{height}")
    if not 0 < maxval < 65536:
        raise UnsupportedFormatError(f"{path}: unsupported PGM maxval {maxval}")

    if magic == b"P5":
        payload = data[pos + 1 :]  # exactly one whitespace byte after maxval
        itemsize = 2 if maxval > 255 else 1
        needed = width * height * itemsize
        if len(payload) < needed:
            raise MalformedHeaderError(f"{path}: truncated P5 pixel data")
        dtype = ">u2" if maxval > 255 else np.uint8
        values = np.frombuffer(payload[:needed], dtype=dtype)
    else:
        fields = data[pos:].split()
        if len(fields) < width * height:
            raise MalformedHeaderError(f"{path}: truncated P2 pixel data")
        try:
            values = np.array([int(f) for f in fields[: width * height]])
        except ValueError:
            raise MalformedHeaderError(f"{path}: non-numeric P2 sample") from None
    if values.min() < 0 or values.max() > maxval:
        raise MalformedHeaderError(f"{path}: sample outside [0, {maxval}]")
    return values.reshape(height, width).astype(np.float64) / maxval


def save_pgm(image: np.ndarray, path) -> None:
    """Write an image as 8-bit binary PGM (samples clipped to [0,1])."""
    image = _require_image(image)
    quantized = np.rint(np.clip(image, 0.0, 1.0) * 255.0).astype(np.uint8)
    header = f"P5\n{image.shape[1]} {image.shape[0]}\n255\n".encode("ascii")
    try:
        with open(path, "wb") as fh:
            fh.write(header)
            fh.write(quantized.tobytes())
    except OSError as exc:
        raise UnreadableFileError(f"{path}: {exc}") from exc


def save_mask(mask: np.ndarray, path) -> None:
    """Write a binary mask as 8-bit P5 PGM, true -> 255 and false -> 0."""
    mask = np.asarray(mask)
    if mask.ndim != 2 or mask.dtype != np.bool_:
        raise ValueError(f"mask must be a 2-D bool array, got {mask.dtype} {mask.shape}")
    save_pgm(mask.astype(np.float64), path)


def load_mask(path) -> np.ndarray:
    """Load a mask saved by :func:`save_mask` (any sample > 0.5 is true)."""
    return load_image(path) > 0.5


# ---------------------------------------------------------------------------
# PNG


def _load_png(path, luma) -> np.ndarray:
    try:
        with _PILImage.open(path) as img:
            img.load()
            mode = img.mode
            if mode == "L":
                return np.asarray(img, dtype=np.float64) / 255.0
            if mode == "RGB":
                rgb = np.asarray(img, dtype=np.float64)
                wr, wg, wb = luma
                gray = wr * rgb[:, :, 0] + wg * rgb[:, :, 1] + wb * rgb[:, :, 2]
                return gray / 255.0
            raise UnsupportedFormatError(
                f"{path}: unsupported PNG mode {mode!r} (need 8-bit gray or RGB)"
            )
    except UnidentifiedImageError as exc:
        raise MalformedHeaderError(f"{path}: unreadable PNG stream") from exc


def save_png_rgb(rgb: np.ndarray, path) -> None:
    """Write an (h, w, 3) uint8 array as an RGB PNG."""
    rgb = np.asarray(rgb)
    if rgb.ndim != 3 or rgb.shape[2] != 3 or rgb.dtype != np.uint8:
        raise ValueError(f"expected (h, w, 3) uint8 array, got {rgb.dtype} {rgb.shape}")
    try:
        _PILImage.fromarray(rgb, mode="RGB").save(path, format="PNG")
    except OSError as exc:
        raise UnreadableFileError(f"{path}: {exc}") from exc


# ---------------------------------------------------------------------------
# Dispatching loader


def load_image(path, luma=REC601_LUMA) -> np.ndarray:
    """Load a PGM (P2/P5, 8/16-bit) or PNG (8-bit gray/RGB) as a [0,1] image.

    The format is sniffed from the file's leading bytes, not its name.
    Color input is converted with the given luma weights (Rec.601 default)
    before normalization, so a pure-red pixel loads as 0.299 exactly.
    """
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise UnreadableFileError(f"{path}: {exc}") from exc
    if data.startswith(_PNG_SIGNATURE):
        samples = _load_png(path, luma)
    elif data[:2] in (b"P2", b"P5"):
        samples = _parse_pgm(data, str(path))
    else:
        raise MalformedHeaderError(f"{path}: neither PGM nor PNG (leading bytes {data[:2]!r})")
    if not np.all(np.isfinite(samples)):
        raise MalformedHeaderError(f"{path}: non-finite samples after decode")
    return samples


# ---------------------------------------------------------------------------
# Overlay rendering

_FILL_TINTS = {
    int(CONVEX): np.array([0, 0, 255], dtype=np.int32),  # blue
    int(CONCAVE): np.array([255, 0, 0], dtype=np.int32),  # red
}


def render_overlay(
    base: np.ndarray,
    labels: np.ndarray | None = None,
    boundary: np.ndarray | None = None,
    style: str = "both",
    boundary_color=(255, 255, 255),
) -> np.ndarray:
    """Render a classification/boundary overlay on a grayscale base.

    Convex pixels are tinted blue and concave pixels red with a 50% blend
    (integer average, so blue on black gives (0, 0, 127)); boundary pixels
    are drawn opaque in ``boundary_color``, on top of any fill. Returns an
    (h, w, 3) uint8 array.
    """
    if style not in OVERLAY_STYLES:
        raise ValueError(f"style must be one of {OVERLAY_STYLES}, got {style!r}")
    base = _require_image(base, "base")
    gray = np.rint(np.clip(base, 0.0, 1.0) * 255.0).astype(np.int32)
    rgb = np.repeat(gray[:, :, None], 3, axis=2)

    if style in ("region-fill", "both") and labels is not None:
        labels = np.asarray(labels)
        if labels.shape != base.shape:
            raise ValueError(f"labels shape {labels.shape} != base shape {base.shape}")
        for value, tint in _FILL_TINTS.items():
            sel = labels == value
            rgb[sel] = (rgb[sel] + tint) // 2

    if style in ("boundary-only", "both") and boundary is not None:
        boundary = np.asarray(boundary)
        if boundary.shape != base.shape:
            raise ValueError(f"boundary shape {boundary.shape} != base shape {base.shape}")
        rgb[boundary] = np.asarray(boundary_color, dtype=np.int32)

    return rgb.astype(np.uint8)
