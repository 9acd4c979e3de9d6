"""Regenerate the bundled skin swatch sheet.

Writes a deterministic 15x15 P6 pixmap covering a spread of skin tones:
ten anchor colors, linear blends between consecutive anchors, and a few
brightness scalings of each blend. No randomness; rerunning reproduces
the file byte for byte.

Usage: python tools/gen_swatches.py [out.ppm]
"""

import sys

ANCHORS = [
    (255, 224, 196),
    (255, 219, 172),
    (241, 194, 125),
    (224, 172, 105),
    (198, 134, 66),
    (180, 120, 70),
    (141, 85, 36),
    (120, 70, 35),
    (90, 56, 30),
    (70, 42, 25),
]

BLEND_STEPS = [0.0, 0.2, 0.4, 0.6, 0.8]
SCALES = [1.0, 0.9, 0.8, 0.7, 0.6]
SIDE = 15


def swatch_pixels():
    pixels = []
    for a, b in zip(ANCHORS, ANCHORS[1:]):
        for t in BLEND_STEPS:
            base = tuple(a[i] + (b[i] - a[i]) * t for i in range(3))
            for s in SCALES:
                pixels.append(tuple(int(round(v * s)) for v in base))
    return pixels


def main(argv):
    out = argv[1] if len(argv) > 1 else "src/headmouse/data/swatches.ppm"
    pixels = swatch_pixels()
    assert len(pixels) == SIDE * SIDE
    body = bytearray()
    for r, g, b in pixels:
        body += bytes((r, g, b))
    with open(out, "wb") as fh:
        fh.write(b"P6\n%d %d\n255\n" % (SIDE, SIDE))
        fh.write(bytes(body))
    print(f"wrote {out}: {len(pixels)} swatch pixels")
    return 0


if __name__ == "__main__":
    raise SystemExit(main(sys.argv))
