"""Face rectangle to cursor position.

Relative mapping: the cursor moves by gain times the change of the
smoothed face center, with a per-axis dead zone, optional axis
inversion, and clamping to the virtual screen. State goes in, state
comes out; nothing here mutates.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .segmentation import Rect


@dataclass(frozen=True)
class CursorConfig:
    gain: float = 4.0
    dead_zone: float = 0.5
    alpha: float = 0.4  # EMA weight; 1 = no smoothing
    screen_w: int = 800
    screen_h: int = 600
    invert_x: bool = False
    invert_y: bool = False
    loss_hold: int = 5  # frames of face loss before FaceLost surfaces

    def __post_init__(self):
        if not self.gain > 0:
            raise ValueError(f"gain {self.gain} must be > 0")
        if self.dead_zone < 0:
            raise ValueError(f"dead_zone {self.dead_zone} must be >= 0")
        if not 0 < self.alpha <= 1:
            raise ValueError(f"alpha {self.alpha} outside (0, 1]")
        if self.screen_w < 1 or self.screen_h < 1:
            raise ValueError(f"bad screen {self.screen_w}x{self.screen_h}")
        if self.loss_hold < 0:
            raise ValueError(f"loss_hold {self.loss_hold} must be >= 0")


@dataclass(frozen=True)
class TrackerState:
    neutral: tuple[float, float]  # face center at calibration
    smoothed: tuple[float, float]
    cursor: tuple[float, float]
    lost_frames: int = 0


def initial_state(config: CursorConfig = CursorConfig()) -> TrackerState:
    """Pre-calibration state: cursor parked at the screen center."""
    center = (config.screen_w / 2.0, config.screen_h / 2.0)
    return TrackerState(neutral=center, smoothed=center, cursor=center)


def calibrate(face: Rect, config: CursorConfig) -> TrackerState:
    """Adopt the current face position as neutral; recenter the cursor."""
    c = face.center
    return TrackerState(
        neutral=c,
        smoothed=c,
        cursor=(config.screen_w / 2.0, config.screen_h / 2.0),
        lost_frames=0,
    )


def track(
    state: TrackerState, face: Rect | None, config: CursorConfig
) -> tuple[TrackerState, tuple[float, float], bool]:
    """One tracking step. Returns (next_state, cursor, moved).

    A missing face holds the cursor in place and counts lost frames
    (loss_hold only gates what the session surfaces, never the hold).
    """
    if face is None:
        nxt = replace(state, lost_frames=state.lost_frames + 1)
        return nxt, state.cursor, False
    cx, cy = face.center
    sx, sy = state.smoothed
    a = config.alpha
    nsx = a * cx + (1 - a) * sx
    nsy = a * cy + (1 - a) * sy
    dx = nsx - sx
    dy = nsy - sy
    if abs(dx) <= config.dead_zone:
        dx = 0.0
    if abs(dy) <= config.dead_zone:
        dy = 0.0
    if config.invert_x:
        dx = -dx
    if config.invert_y:
        dy = -dy
    px, py = state.cursor
    nx = min(max(px + config.gain * dx, 0.0), float(config.screen_w))
    ny = min(max(py + config.gain * dy, 0.0), float(config.screen_h))
    moved = (nx, ny) != (px, py)
    nxt = TrackerState(neutral=state.neutral, smoothed=(nsx, nsy), cursor=(nx, ny), lost_frames=0)
    return nxt, (nx, ny), moved
