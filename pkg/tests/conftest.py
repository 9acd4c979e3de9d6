"""Shared test helpers: the randomized scene family and brute-force oracles.

The scene family is deliberately constrained so that the 3x3 majority
denoise provably never erodes the ellipse: integer centers, half-integer
radii >= 6.5, aspect ratio <= 2.5 (the extreme row/column of such a
digitized ellipse is always >= 2 px wide), ellipse at least 2 px inside
the frame, and specks far enough from the face (Chebyshev >= 3) and from
each other (>= 2) that denoise always removes them.
"""

import math
import random

import numpy as np
from scipy import ndimage

from headmouse.color import DEFAULT_SKIN_RANGE, is_skin
from headmouse.ingest import SynthScene
from headmouse.segmentation import Rect, default_min_area

SKIN_TONES = [
    (255, 224, 196),
    (255, 219, 172),
    (241, 194, 125),
    (224, 172, 105),
    (198, 134, 66),
    (180, 120, 70),
    (141, 85, 36),
    (120, 70, 35),
    (90, 56, 30),
]

NON_SKIN_BG = [
    (20, 40, 160),
    (0, 128, 0),
    (200, 200, 200),
    (30, 30, 30),
    (240, 240, 60),
    (128, 0, 160),
    (60, 90, 150),
]

for tone in SKIN_TONES:
    assert is_skin(tone, DEFAULT_SKIN_RANGE), tone
for bg in NON_SKIN_BG:
    assert not is_skin(bg, DEFAULT_SKIN_RANGE), bg


def _ellipse_pixels(w, h, cx, cy, rx, ry):
    yy, xx = np.mgrid[0:h, 0:w]
    return ((xx - cx) / rx) ** 2 + ((yy - cy) / ry) ** 2 <= 1.0


def family_scene(rng: random.Random, max_specks: int = 5) -> SynthScene:
    """One randomized scene from the denoise-safe family."""
    w = rng.randrange(64, 129)
    h = rng.randrange(64, 129)
    r_cap = min(30, min(w, h) // 3)
    rxi = rng.randrange(6, r_cap + 1)
    lo = max(6, math.ceil((rxi + 0.5) / 2.5 - 0.5))
    hi = min(r_cap, math.floor((rxi + 0.5) * 2.5 - 0.5))
    ryi = rng.randrange(lo, hi + 1)
    rx, ry = rxi + 0.5, ryi + 0.5
    cx = rng.randrange(math.ceil(rx) + 2, w - 2 - math.ceil(rx))
    cy = rng.randrange(math.ceil(ry) + 2, h - 2 - math.ceil(ry))
    skin = rng.choice(SKIN_TONES)
    bg = rng.choice(NON_SKIN_BG)
    assert max(abs(a - b) for a, b in zip(skin, bg)) > 30, (skin, bg)

    face = _ellipse_pixels(w, h, cx, cy, rx, ry)
    assert int(face.sum()) >= default_min_area(w, h)
    # keep specks Chebyshev >= 3 from every face pixel
    forbidden = ndimage.binary_dilation(face, structure=np.ones((5, 5), dtype=bool))
    specks = []
    taken = []
    tries = 0
    want = rng.randrange(0, max_specks + 1)
    while len(specks) < want and tries < 200:
        tries += 1
        x = rng.randrange(0, w)
        y = rng.randrange(0, h)
        if forbidden[y, x]:
            continue
        if any(max(abs(x - tx), abs(y - ty)) < 2 for tx, ty in taken):
            continue
        taken.append((x, y))
        specks.append((x, y, rng.choice(SKIN_TONES)))
    return SynthScene(
        width=w,
        height=h,
        bg_color=bg,
        skin_color=skin,
        cx=float(cx),
        cy=float(cy),
        rx=rx,
        ry=ry,
        specks=tuple(specks),
    )


def flood_box_oracle(mask, min_area: int):
    """Brute-force reference for segmentation.face_box: BFS flood fill
    over 4-neighbors, largest component, row-major-first tie-break."""
    m = np.asarray(mask, dtype=bool)
    h, w = m.shape
    visited = np.zeros((h, w), dtype=bool)
    best = None  # (count, x0, y0, x1, y1); scan order settles ties
    for y in range(h):
        for x in range(w):
            if not m[y, x] or visited[y, x]:
                continue
            stack = [(y, x)]
            visited[y, x] = True
            count = 0
            x0 = x1 = x
            y0 = y1 = y
            while stack:
                cy, cx = stack.pop()
                count += 1
                x0 = min(x0, cx)
                x1 = max(x1, cx)
                y0 = min(y0, cy)
                y1 = max(y1, cy)
                for dy, dx in ((1, 0), (-1, 0), (0, 1), (0, -1)):
                    ny, nx = cy + dy, cx + dx
                    if 0 <= ny < h and 0 <= nx < w and m[ny, nx] and not visited[ny, nx]:
                        visited[ny, nx] = True
                        stack.append((ny, nx))
            if best is None or count > best[0]:
                best = (count, x0, y0, x1, y1)
    if best is None or best[0] < min_area:
        return None
    _, x0, y0, x1, y1 = best
    return Rect(x0, y0, x1 - x0 + 1, y1 - y0 + 1)
