"""The command FSM: frames and phrases in, one ordered event stream out.

A session is disabled until the Enable phrase arrives; while enabled it
is either idle or awaiting yes/no confirmation of an app launch, and it
may hold the left button for drag-select. Every mutation returns the
events it produced; seq numbers are gapless and strictly increasing
across the whole session, starting at 1. Face tracking runs regardless
of the enabled flag (enable gates voice commands, not head motion).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import tracker
from .color import DEFAULT_SKIN_RANGE, SkinRange
from .grammar import DEFAULT_MENUS, Grammar, build_grammar
from .registry import EngineConfig
from .segmentation import Frame, Rect, SegParams, detect
from .tracker import CursorConfig

EVENT_KINDS = frozenset(
    {
        "CursorMoved",
        "MouseDown",
        "MouseUp",
        "Click",
        "NavUp",
        "NavDown",
        "Enter",
        "MenuSelected",
        "ConfirmRequested",
        "AppLaunched",
        "Cancelled",
        "EnabledChanged",
        "FaceLost",
        "FaceFound",
    }
)


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    return str(value)


@dataclass(frozen=True)
class Event:
    """One engine output. args hold primitives (str/int/float/bool)."""

    seq: int
    kind: str
    args: tuple = ()

    def line(self) -> str:
        """Log form: seq<TAB>kind<TAB>args..., stable field order."""
        return "\t".join([str(self.seq), self.kind, *(_fmt(a) for a in self.args)])


class Session:
    """Single-owner state machine; callers serialize on_frame/on_phrase.

    The first detected face auto-calibrates the tracker (the face
    position becomes neutral, cursor recentered); an explicit
    ``calibrate()`` re-anchors on the most recently seen face.
    """

    def __init__(
        self,
        grammar: Grammar | None = None,
        cursor: CursorConfig | None = None,
        seg: SegParams | None = None,
        skin: SkinRange | None = None,
        launch_targets: dict[str, str] | None = None,
    ):
        self.grammar = grammar if grammar is not None else build_grammar(menu_names=DEFAULT_MENUS)
        self.cursor_config = cursor if cursor is not None else CursorConfig()
        self.seg_params = seg if seg is not None else SegParams()
        self.skin = skin if skin is not None else DEFAULT_SKIN_RANGE
        self.launch_targets = dict(launch_targets or {})
        self.enabled = False
        self.awaiting: str | None = None  # app label pending confirmation
        self.held: str | None = None  # button currently down
        self.calibrated = False
        self.state = tracker.initial_state(self.cursor_config)
        self.current_face: Rect | None = None  # result of the last frame
        self.last_face: Rect | None = None  # most recent non-None detection
        self._seq = 0

    @classmethod
    def from_config(cls, cfg: EngineConfig) -> "Session":
        g = build_grammar(
            app_labels=cfg.registry.labels(),
            menu_names=cfg.menus,
            synonyms=cfg.registry.synonyms,
        )
        return cls(
            grammar=g,
            cursor=cfg.cursor,
            seg=cfg.seg,
            skin=cfg.skin,
            launch_targets=cfg.registry.targets(),
        )

    @property
    def seq(self) -> int:
        return self._seq

    def _emit(self, events: list, kind: str, *args) -> Event:
        self._seq += 1
        e = Event(self._seq, kind, args)
        events.append(e)
        return e

    # ------------------------------------------------------------ frames

    def on_frame(self, frame: Frame, background: Frame | None) -> list[Event]:
        """Track one frame. Without a background no detection runs and
        the frame counts as face-absent."""
        face = None
        if background is not None:
            face = detect(frame, background, self.skin, self.seg_params)
        events: list[Event] = []
        prev_lost = self.state.lost_frames
        self.current_face = face
        if face is not None:
            self.last_face = face
            if prev_lost > self.cursor_config.loss_hold:
                self._emit(events, "FaceFound")
            if not self.calibrated:
                old = self.state.cursor
                self.state = tracker.calibrate(face, self.cursor_config)
                self.calibrated = True
                if self.state.cursor != old:
                    self._emit(events, "CursorMoved", *self.state.cursor)
            else:
                self.state, cursor, moved = tracker.track(self.state, face, self.cursor_config)
                if moved:
                    self._emit(events, "CursorMoved", *cursor)
        else:
            self.state, _, _ = tracker.track(self.state, None, self.cursor_config)
            if self.state.lost_frames == self.cursor_config.loss_hold + 1:
                self._emit(events, "FaceLost")
        return events

    def calibrate(self) -> list[Event]:
        """Re-center on the most recently seen face; no-op before any
        face has ever been detected."""
        events: list[Event] = []
        if self.last_face is None:
            return events
        old = self.state.cursor
        self.state = tracker.calibrate(self.last_face, self.cursor_config)
        self.calibrated = True
        if self.state.cursor != old:
            self._emit(events, "CursorMoved", *self.state.cursor)
        return events

    # ------------------------------------------------------------ phrases

    def on_phrase(self, text: str) -> list[Event]:
        intent = self.grammar.parse(text)
        events: list[Event] = []
        if intent is None:
            return events
        if not self.enabled:
            if intent.kind == "Enable":
                self.enabled = True
                self._emit(events, "EnabledChanged", True)
            return events
        if intent.kind == "Disable":
            if self.held is not None:
                self._emit(events, "MouseUp", self.held)
                self.held = None
            self.awaiting = None
            self.enabled = False
            self._emit(events, "EnabledChanged", False)
            return events
        if self.awaiting is not None:
            if intent.kind == "Yes":
                label = self.awaiting
                self.awaiting = None
                self._emit(events, "AppLaunched", label, self.launch_targets.get(label, ""))
            elif intent.kind == "No":
                self.awaiting = None
                self._emit(events, "Cancelled")
            # anything else: stay awaiting, no events
            return events
        kind = intent.kind
        if kind == "LeftClick":
            self._emit(events, "Click", "left", 1)
        elif kind == "DoubleLeftClick":
            self._emit(events, "Click", "left", 2)
        elif kind == "RightClick":
            self._emit(events, "Click", "right", 1)
        elif kind == "DoubleRightClick":
            self._emit(events, "Click", "right", 2)
        elif kind == "HoldButton":
            if self.held is None:
                self.held = "left"
                self._emit(events, "MouseDown", "left")
        elif kind == "ReleaseButton":
            if self.held is not None:
                self._emit(events, "MouseUp", self.held)
                self.held = None
        elif kind == "Up":
            self._emit(events, "NavUp")
        elif kind == "Down":
            self._emit(events, "NavDown")
        elif kind == "Ok":
            self._emit(events, "Enter")
        elif kind == "MenuSelect":
            self._emit(events, "MenuSelected", intent.name)
        elif kind == "LaunchApp":
            self.awaiting = intent.name
            self._emit(events, "ConfirmRequested", intent.name)
        # Enable while enabled, Yes/No while idle: no effect
        return events

    # ------------------------------------------------------------ config

    def set_vocabulary(self, grammar: Grammar, launch_targets: dict[str, str]) -> list[Event]:
        """Swap the phrase table (registry edits). A pending confirmation
        whose label vanished is cancelled."""
        events: list[Event] = []
        self.grammar = grammar
        self.launch_targets = dict(launch_targets)
        if self.awaiting is not None and self.awaiting not in self.launch_targets:
            self.awaiting = None
            self._emit(events, "Cancelled")
        return events

    def configure(
        self,
        cursor: CursorConfig | None = None,
        seg: SegParams | None = None,
        skin: SkinRange | None = None,
    ) -> list[Event]:
        """Apply new settings; the cursor is re-clamped if the screen
        shrank (emitting CursorMoved when it actually moves)."""
        events: list[Event] = []
        if cursor is not None:
            self.cursor_config = cursor
            x, y = self.state.cursor
            nx = min(max(x, 0.0), float(cursor.screen_w))
            ny = min(max(y, 0.0), float(cursor.screen_h))
            if (nx, ny) != (x, y):
                self.state = replace(self.state, cursor=(nx, ny))
                self._emit(events, "CursorMoved", nx, ny)
        if seg is not None:
            self.seg_params = seg
        if skin is not None:
            self.skin = skin
        return events
