"""Packed-pixel channel math and skin-color classification.

Pixels arrive as 24-bit packed integers with red in the low byte:
``c = R + 256*G + 65536*B``. Classification happens in normalized rgb
chromaticity so that brightness changes (same surface, different light)
move a pixel very little, then a plain brightness floor rejects the
near-black region where chromaticity is meaningless.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

PIXEL_MAX = 1 << 24


class InvalidPixelError(ValueError):
    """Packed pixel value outside the 24-bit range."""


def decompose(c):
    """Split packed pixel(s) into (R, G, B).

    Accepts a plain int or a numpy integer array; returns a tuple of the
    same shape of thing. One formula for both so the scalar and the
    frame-sized paths cannot drift apart.
    """
    if isinstance(c, np.ndarray):
        if c.size and (int(c.min()) < 0 or int(c.max()) >= PIXEL_MAX):
            raise InvalidPixelError("packed pixel outside [0, 2**24)")
    else:
        c = int(c)
        if not 0 <= c < PIXEL_MAX:
            raise InvalidPixelError(f"packed pixel {c} outside [0, 2**24)")
    return c % 256, (c // 256) % 256, (c // 65536) % 256


def pack(rgb) -> int:
    """Inverse of decompose for one (R, G, B) triple."""
    r, g, b = rgb
    for v in (r, g, b):
        if not 0 <= int(v) <= 255:
            raise InvalidPixelError(f"channel {v} outside [0, 255]")
    return int(r) + 256 * int(g) + 65536 * int(b)


def normalize(rgb) -> tuple[float, float, float]:
    """Map (R, G, B) to chromaticity (r, g, b) with r+g+b == 1.

    The all-black pixel has no chromaticity; by convention it maps to
    (0.0, 0.0, 0.0) and is never skin.
    """
    r, g, b = rgb
    total = int(r) + int(g) + int(b)
    if total == 0:
        return 0.0, 0.0, 0.0
    return r / total, g / total, b / total


@dataclass(frozen=True)
class SkinRange:
    """Axis-aligned box in (r, g) chromaticity plus a brightness floor.

    ``brightness_min`` is compared against R+G+B (so 0..765).
    """

    r_min: float
    r_max: float
    g_min: float
    g_max: float
    brightness_min: int = 60

    def __post_init__(self):
        if not 0.0 <= self.r_min <= self.r_max <= 1.0:
            raise ValueError(f"bad r interval [{self.r_min}, {self.r_max}]")
        if not 0.0 <= self.g_min <= self.g_max <= 1.0:
            raise ValueError(f"bad g interval [{self.g_min}, {self.g_max}]")
        if not 0 <= self.brightness_min <= 765:
            raise ValueError(f"brightness_min {self.brightness_min} outside [0, 765]")


def is_skin(rgb, skin: SkinRange) -> bool:
    r, g, b = rgb
    if int(r) + int(g) + int(b) < skin.brightness_min:
        return False
    nr, ng, _ = normalize(rgb)
    return skin.r_min <= nr <= skin.r_max and skin.g_min <= ng <= skin.g_max


def fit_skin_range(
    pixels: Iterable[Sequence[int]],
    pad: float = 0.02,
    brightness_min: int = 60,
) -> SkinRange:
    """Fit the chromaticity box over a collection of known-skin pixels.

    Takes the min/max of normalized r and g over the samples, widened by
    ``pad`` on each side and clamped to [0, 1]. All-black samples carry
    no chromaticity and are rejected.
    """
    if pad < 0:
        raise ValueError(f"pad {pad} must be >= 0")
    rs: list[float] = []
    gs: list[float] = []
    for p in pixels:
        r, g, b = p
        if int(r) + int(g) + int(b) == 0:
            raise ValueError("all-black sample has no chromaticity")
        nr, ng, _ = normalize((r, g, b))
        rs.append(nr)
        gs.append(ng)
    if not rs:
        raise ValueError("no samples to fit")
    return SkinRange(
        r_min=max(0.0, min(rs) - pad),
        r_max=min(1.0, max(rs) + pad),
        g_min=max(0.0, min(gs) - pad),
        g_max=min(1.0, max(gs) + pad),
        brightness_min=brightness_min,
    )


def default_swatches() -> list[tuple[int, int, int]]:
    """Pixels of the bundled swatch sheet (see tools/gen_swatches.py)."""
    from importlib import resources

    from .ingest import load_ppm

    data = resources.files("headmouse").joinpath("data/swatches.ppm").read_bytes()
    frame = load_ppm(data)
    r, g, b = decompose(frame.pixels)
    out = []
    for row in range(frame.height):
        for col in range(frame.width):
            out.append((int(r[row, col]), int(g[row, col]), int(b[row, col])))
    return out


# Frozen fit over the bundled swatch sheet (pad 0.02, brightness floor 60).
# Regenerate with: headmouse calibrate-skin --swatches src/headmouse/data
# A test re-runs the fit against the shipped file and asserts exact equality.
DEFAULT_SKIN_RANGE = SkinRange(
    r_min=0.3571186440677966,
    r_max=0.5609836065573771,
    g_min=0.2869306930693069,
    g_max=0.3672222222222222,
    brightness_min=60,
)
