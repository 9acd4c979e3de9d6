"""Frame sources: PPM files, raw byte streams, synthetic scenes.

PPM (binary P6, maxval 255) is the only image format on purpose: it is
codec-free and byte-exact. The raw stream format is a repeated record of
an 8-byte header (width then height, both u32 little-endian) followed by
width*height*3 RGB bytes. The synthetic scene generator doubles as the
detection test oracle: it knows exactly which pixels belong to the face.
"""

from __future__ import annotations

import json
import os
import struct
from dataclasses import dataclass
from typing import BinaryIO, Iterable, Iterator, Sequence

import numpy as np

from .color import pack
from .segmentation import Frame, Rect


class PpmError(ValueError):
    pass


class StreamError(ValueError):
    """Truncated or malformed raw frame stream (message names the frame index)."""


class SceneError(ValueError):
    pass


# ---------------------------------------------------------------- PPM

def load_ppm(data: bytes) -> Frame:
    """Parse a binary P6 pixmap.

    Header comments (# to end of line) and arbitrary whitespace between
    tokens are accepted; exactly one whitespace byte separates the
    maxval from the pixel data. Only maxval 255 is supported. Trailing
    bytes after the raster are ignored.
    """
    pos = 0
    n = len(data)

    def token() -> bytes:
        nonlocal pos
        while pos < n:
            c = data[pos : pos + 1]
            if c == b"#":
                nl = data.find(b"\n", pos)
                if nl < 0:
                    raise PpmError("unterminated header comment")
                pos = nl + 1
            elif c.isspace():
                pos += 1
            else:
                break
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise PpmError("truncated header")
        return data[start:pos]

    def number(name: str) -> int:
        t = token()
        try:
            return int(t.decode("ascii"))
        except (UnicodeDecodeError, ValueError):
            raise PpmError(f"bad {name} token {t!r}") from None

    magic = token()
    if magic != b"P6":
        raise PpmError(f"not a binary pixmap (magic {magic!r}, want b'P6')")
    width = number("width")
    height = number("height")
    maxval = number("maxval")
    if width < 1 or height < 1:
        raise PpmError(f"bad dimensions {width}x{height}")
    if maxval != 255:
        raise PpmError(f"unsupported maxval {maxval} (only 255)")
    if pos >= n or not data[pos : pos + 1].isspace():
        raise PpmError("missing whitespace after maxval")
    pos += 1
    need = width * height * 3
    body = data[pos : pos + need]
    if len(body) < need:
        raise PpmError(f"pixel data truncated: need {need} bytes, have {len(body)}")
    return Frame.from_rgb_bytes(width, height, body)


def save_ppm(frame: Frame) -> bytes:
    """Encode as binary P6; header is exactly ``P6\\n<w> <h>\\n255\\n``."""
    header = b"P6\n%d %d\n255\n" % (frame.width, frame.height)
    return header + frame.rgb_bytes()


def load_ppm_file(path) -> Frame:
    with open(path, "rb") as fh:
        return load_ppm(fh.read())


def save_ppm_file(frame: Frame, path):
    with open(path, "wb") as fh:
        fh.write(save_ppm(frame))


# ---------------------------------------------------------------- raw stream

_RAW_HEADER = struct.Struct("<II")


def read_raw_frames(stream: BinaryIO) -> Iterator[Frame]:
    """Frames from the length-prefixed raw stream; ends cleanly at EOF,
    raises StreamError naming the frame index on truncation."""
    index = 0
    while True:
        head = stream.read(_RAW_HEADER.size)
        if not head:
            return
        if len(head) < _RAW_HEADER.size:
            raise StreamError(f"frame {index}: truncated header ({len(head)} of 8 bytes)")
        width, height = _RAW_HEADER.unpack(head)
        if width < 1 or height < 1:
            raise StreamError(f"frame {index}: bad dimensions {width}x{height}")
        need = width * height * 3
        body = stream.read(need)
        if len(body) < need:
            raise StreamError(
                f"frame {index}: pixel data truncated ({len(body)} of {need} bytes)"
            )
        yield Frame.from_rgb_bytes(width, height, body)
        index += 1


def write_raw_frame(stream: BinaryIO, frame: Frame):
    stream.write(_RAW_HEADER.pack(frame.width, frame.height))
    stream.write(frame.rgb_bytes())


def read_ppm_dir(path) -> Iterator[Frame]:
    """Frames from every .ppm file in a directory, lexicographic order."""
    names = sorted(n for n in os.listdir(path) if n.endswith(".ppm"))
    for name in names:
        yield load_ppm_file(os.path.join(path, name))


# ---------------------------------------------------------------- scenes

def _check_channel(color, what):
    if len(color) != 3 or any(not 0 <= int(v) <= 255 for v in color):
        raise SceneError(f"{what} {color!r} is not an RGB triple in 0..255")


@dataclass(frozen=True)
class SynthScene:
    """Flat background, one filled skin-color ellipse, optional single-
    pixel specks drawn on top. The ellipse must stay inside the frame."""

    width: int
    height: int
    bg_color: tuple[int, int, int]
    skin_color: tuple[int, int, int]
    cx: float
    cy: float
    rx: float
    ry: float
    specks: tuple[tuple[int, int, tuple[int, int, int]], ...] = ()

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise SceneError(f"bad scene dimensions {self.width}x{self.height}")
        _check_channel(self.bg_color, "bg_color")
        _check_channel(self.skin_color, "skin_color")
        if self.rx <= 0 or self.ry <= 0:
            raise SceneError(f"ellipse radii must be positive, got ({self.rx}, {self.ry})")
        if (
            self.cx - self.rx < 0
            or self.cy - self.ry < 0
            or self.cx + self.rx > self.width - 1
            or self.cy + self.ry > self.height - 1
        ):
            raise SceneError("ellipse extends outside the frame")
        for i, (x, y, color) in enumerate(self.specks):
            if not (0 <= int(x) < self.width and 0 <= int(y) < self.height):
                raise SceneError(f"speck {i} at ({x}, {y}) outside the frame")
            _check_channel(color, f"speck {i} color")


@dataclass(frozen=True)
class Rendered:
    frame: Frame
    box: Rect | None  # tight bbox of the ellipse pixel set (None if empty)
    face_mask: np.ndarray  # ground-truth ellipse membership


def _ellipse_mask(scene: SynthScene, cx: float, cy: float) -> np.ndarray:
    yy, xx = np.mgrid[0 : scene.height, 0 : scene.width]
    return ((xx - cx) / scene.rx) ** 2 + ((yy - cy) / scene.ry) ** 2 <= 1.0


def render(scene: SynthScene, center: tuple[float, float] | None = None) -> Rendered:
    """Rasterize the scene; ``center`` overrides the ellipse position
    (used for animation paths). Pixel (x, y) is skin iff
    ((x-cx)/rx)^2 + ((y-cy)/ry)^2 <= 1; specks overwrite whatever is
    underneath them; everything else is the background color.
    """
    cx, cy = center if center is not None else (scene.cx, scene.cy)
    mask = _ellipse_mask(scene, cx, cy)
    pixels = np.full((scene.height, scene.width), pack(scene.bg_color), dtype=np.uint32)
    pixels[mask] = pack(scene.skin_color)
    for x, y, color in scene.specks:
        pixels[int(y), int(x)] = pack(color)
    ys, xs = np.nonzero(mask)
    if len(ys) == 0:
        box = None
    else:
        x0, x1 = int(xs.min()), int(xs.max())
        y0, y1 = int(ys.min()), int(ys.max())
        box = Rect(x0, y0, x1 - x0 + 1, y1 - y0 + 1)
    return Rendered(frame=Frame(pixels), box=box, face_mask=mask)


def background_frame(scene: SynthScene) -> Frame:
    """The scene with no face and no specks: just the flat background."""
    return Frame(np.full((scene.height, scene.width), pack(scene.bg_color), dtype=np.uint32))


def scene_frames(
    scene: SynthScene, centers: Iterable[tuple[float, float]]
) -> Iterator[Frame]:
    """Animate the ellipse along a path of centers, one frame each."""
    for c in centers:
        yield render(scene, center=(float(c[0]), float(c[1]))).frame


def stream_frames(source) -> Iterator[Frame]:
    """Uniform frame-source dispatcher.

    Accepts a directory path (every .ppm inside, lexicographic), a
    binary stream (raw record format), or a (SynthScene, centers) pair.
    """
    if isinstance(source, (str, os.PathLike)):
        return read_ppm_dir(source)
    if isinstance(source, tuple) and len(source) == 2 and isinstance(source[0], SynthScene):
        return scene_frames(source[0], source[1])
    if hasattr(source, "read"):
        return read_raw_frames(source)
    raise TypeError(f"cannot stream frames from {type(source).__name__}")


# ---------------------------------------------------------------- scene JSON

def scene_from_json(doc: dict) -> tuple[SynthScene, list[tuple[float, float]]]:
    """Parse a scene spec document.

    Required: width, height, bg_color, skin_color, cx, cy, rx, ry.
    Optional: specks ([{x, y, color}]), path ([[cx, cy], ...] of ellipse
    centers, one rendered frame each; defaults to a single frame at the
    scene center).
    """
    if not isinstance(doc, dict):
        raise SceneError("scene spec must be a JSON object")

    def num(key):
        v = doc.get(key)
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise SceneError(f"scene field '{key}' must be a number")
        return v

    def rgb(key):
        v = doc.get(key)
        if not isinstance(v, (list, tuple)) or len(v) != 3:
            raise SceneError(f"scene field '{key}' must be [r, g, b]")
        return tuple(int(x) for x in v)

    specks = []
    for i, s in enumerate(doc.get("specks", [])):
        if not isinstance(s, dict):
            raise SceneError(f"speck {i} must be an object")
        color = s.get("color")
        if not isinstance(color, (list, tuple)) or len(color) != 3:
            raise SceneError(f"speck {i} color must be [r, g, b]")
        specks.append((int(s.get("x", -1)), int(s.get("y", -1)), tuple(int(c) for c in color)))
    scene = SynthScene(
        width=int(num("width")),
        height=int(num("height")),
        bg_color=rgb("bg_color"),
        skin_color=rgb("skin_color"),
        cx=float(num("cx")),
        cy=float(num("cy")),
        rx=float(num("rx")),
        ry=float(num("ry")),
        specks=tuple(specks),
    )
    raw_path = doc.get("path")
    if raw_path is None:
        centers = [(scene.cx, scene.cy)]
    else:
        if not isinstance(raw_path, list) or not raw_path:
            raise SceneError("scene field 'path' must be a non-empty list of [cx, cy]")
        centers = []
        for i, c in enumerate(raw_path):
            if not isinstance(c, (list, tuple)) or len(c) != 2:
                raise SceneError(f"path entry {i} must be [cx, cy]")
            centers.append((float(c[0]), float(c[1])))
    return scene, centers


def scene_from_json_bytes(data: bytes) -> tuple[SynthScene, list[tuple[float, float]]]:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as e:
        raise SceneError(f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}") from None
    return scene_from_json(doc)
