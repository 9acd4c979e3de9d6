"""Frame-to-face-box pipeline.

Four per-frame passes: background subtraction, skin classification,
an optional 3x3 majority denoise, and largest-connected-component
bounding. All of them are pure functions over numpy arrays; ``detect``
composes them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .color import DEFAULT_SKIN_RANGE, PIXEL_MAX, InvalidPixelError, SkinRange, decompose


class DimensionMismatchError(ValueError):
    """Two frames (or a frame and a mask) disagree on width/height."""


class Frame:
    """One video frame: packed 24-bit pixels (R in the low byte).

    ``pixels`` is a uint32 array of shape (height, width), row-major,
    treated as immutable once constructed.
    """

    __slots__ = ("pixels",)

    def __init__(self, pixels):
        arr = np.asarray(pixels)
        if arr.ndim != 2 or arr.size == 0:
            raise ValueError(f"frame must be a non-empty 2-d array, got shape {arr.shape}")
        if not np.issubdtype(arr.dtype, np.integer):
            raise ValueError(f"frame pixels must be integers, got dtype {arr.dtype}")
        if int(arr.min()) < 0 or int(arr.max()) >= PIXEL_MAX:
            raise InvalidPixelError("frame contains pixels outside [0, 2**24)")
        self.pixels = arr.astype(np.uint32)

    @property
    def width(self) -> int:
        return self.pixels.shape[1]

    @property
    def height(self) -> int:
        return self.pixels.shape[0]

    @classmethod
    def from_rgb_bytes(cls, width: int, height: int, data: bytes) -> "Frame":
        """Build from row-major interleaved RGB bytes (3 per pixel)."""
        if width < 1 or height < 1:
            raise ValueError(f"bad dimensions {width}x{height}")
        need = width * height * 3
        if len(data) != need:
            raise ValueError(f"need {need} RGB bytes for {width}x{height}, got {len(data)}")
        a = np.frombuffer(bytes(data), dtype=np.uint8).reshape(height, width, 3).astype(np.uint32)
        return cls(a[..., 0] + 256 * a[..., 1] + 65536 * a[..., 2])

    def rgb_bytes(self) -> bytes:
        """Row-major interleaved RGB bytes; inverse of from_rgb_bytes."""
        r, g, b = decompose(self.pixels)
        out = np.empty((self.height, self.width, 3), dtype=np.uint8)
        out[..., 0] = r
        out[..., 1] = g
        out[..., 2] = b
        return out.tobytes()

    def __eq__(self, other):
        if not isinstance(other, Frame):
            return NotImplemented
        return self.pixels.shape == other.pixels.shape and bool(
            np.array_equal(self.pixels, other.pixels)
        )

    def __repr__(self):
        return f"Frame({self.width}x{self.height})"


@dataclass(frozen=True)
class Rect:
    """Axis-aligned pixel box: top-left (x, y), size w x h, both >= 1."""

    x: int
    y: int
    w: int
    h: int

    def __post_init__(self):
        if self.x < 0 or self.y < 0:
            raise ValueError(f"negative rect origin ({self.x}, {self.y})")
        if self.w < 1 or self.h < 1:
            raise ValueError(f"degenerate rect {self.w}x{self.h}")

    @property
    def center(self) -> tuple[float, float]:
        return self.x + self.w / 2.0, self.y + self.h / 2.0


@dataclass(frozen=True)
class SegParams:
    """Pipeline knobs. min_area None means automatic: 0.5% of the
    frame's pixel count (and never below 1)."""

    bg_tolerance: int = 30
    min_area: int | None = None
    denoise: bool = True

    def __post_init__(self):
        if not 0 <= self.bg_tolerance <= 255:
            raise ValueError(f"bg_tolerance {self.bg_tolerance} outside [0, 255]")
        if self.min_area is not None and self.min_area < 1:
            raise ValueError(f"min_area {self.min_area} must be >= 1")


def default_min_area(width: int, height: int) -> int:
    return max(1, (width * height) // 200)


def _check_dims(frame: Frame, background: Frame):
    if (frame.width, frame.height) != (background.width, background.height):
        raise DimensionMismatchError(
            f"frame {frame.width}x{frame.height} vs background "
            f"{background.width}x{background.height}"
        )


def _fg_from_planes(frame_planes, bg_planes, tolerance: int):
    out = np.zeros(frame_planes[0].shape, dtype=bool)
    for fp, bp in zip(frame_planes, bg_planes):
        out |= np.abs(fp.astype(np.int32) - bp.astype(np.int32)) > tolerance
    return out


def _skin_from_planes(planes, skin: SkinRange):
    # Same float64 arithmetic as color.is_skin, pixel for pixel. Black
    # pixels are excluded by `bright`, so clamping their denominator to 1
    # (instead of branching) cannot change the result.
    r, g, b = planes
    total = r + g + b  # channel sums fit in the plane dtype (max 765)
    bright = (total >= skin.brightness_min) & (total > 0)
    tf = np.maximum(total, 1).astype(np.float64)
    nr = r / tf
    ng = g / tf
    return (
        bright
        & (nr >= skin.r_min)
        & (nr <= skin.r_max)
        & (ng >= skin.g_min)
        & (ng <= skin.g_max)
    )


def subtract_background(frame: Frame, background: Frame, tolerance: int = 30):
    """Foreground mask: set where any channel differs from the background
    by more than ``tolerance``."""
    _check_dims(frame, background)
    return _fg_from_planes(decompose(frame.pixels), decompose(background.pixels), tolerance)


def skin_mask(frame: Frame, skin: SkinRange = DEFAULT_SKIN_RANGE):
    """Per-pixel skin classification (see color.is_skin)."""
    return _skin_from_planes(decompose(frame.pixels), skin)


def denoise(mask) -> np.ndarray:
    """3x3 strict-majority vote.

    A bit survives (or appears) iff more than half of its valid 3x3
    neighborhood, itself included, is set: >= 5 of 9 in the interior,
    >= 4 of 6 on edges, >= 3 of 4 in corners.
    """
    m = np.asarray(mask, dtype=bool)
    if m.ndim != 2:
        raise ValueError(f"mask must be 2-d, got shape {m.shape}")
    h, w = m.shape
    src = m.astype(np.uint8)
    acc = np.zeros((h, w), dtype=np.uint8)  # at most 9 per cell
    cnt = np.zeros((h, w), dtype=np.uint8)
    for dy in (-1, 0, 1):
        y0, y1 = max(0, -dy), min(h, h - dy)
        for dx in (-1, 0, 1):
            x0, x1 = max(0, -dx), min(w, w - dx)
            acc[y0:y1, x0:x1] += src[y0 + dy : y1 + dy, x0 + dx : x1 + dx]
            cnt[y0:y1, x0:x1] += 1
    return 2 * acc > cnt


# 4-connectivity: up/down/left/right only
_FOUR = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)


def face_box(mask, min_area: int = 1) -> Rect | None:
    """Tight bounding rect of the largest 4-connected component.

    Ties go to the component whose first set bit comes earliest in
    row-major order. None when the winning count is below ``min_area``
    (or the mask is empty).
    """
    if min_area < 1:
        raise ValueError(f"min_area {min_area} must be >= 1")
    m = np.asarray(mask, dtype=bool)
    if m.ndim != 2:
        raise ValueError(f"mask must be 2-d, got shape {m.shape}")
    labels, n = ndimage.label(m, structure=_FOUR)
    if n == 0:
        return None
    counts = np.bincount(labels.ravel())
    counts[0] = 0
    best_count = int(counts.max())
    if best_count < min_area:
        return None
    candidates = np.flatnonzero(counts == best_count)
    if len(candidates) == 1:
        best = int(candidates[0])
    else:
        flat = labels.ravel()
        best = int(min(candidates, key=lambda c: int(np.argmax(flat == c))))
    ys, xs = ndimage.find_objects(labels, max_label=best)[best - 1]
    return Rect(int(xs.start), int(ys.start), int(xs.stop - xs.start), int(ys.stop - ys.start))


def detect(
    frame: Frame,
    background: Frame,
    skin: SkinRange = DEFAULT_SKIN_RANGE,
    params: SegParams = SegParams(),
) -> Rect | None:
    """Full pipeline: (skin AND foreground), optional denoise, face_box."""
    _check_dims(frame, background)
    frame_planes = decompose(frame.pixels)
    mask = _skin_from_planes(frame_planes, skin) & _fg_from_planes(
        frame_planes, decompose(background.pixels), params.bg_tolerance
    )
    if params.denoise:
        mask = denoise(mask)
    area = params.min_area
    if area is None:
        area = default_min_area(frame.width, frame.height)
    return face_box(mask, area)
