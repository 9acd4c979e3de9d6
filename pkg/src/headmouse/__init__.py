"""Hands-free computer control: skin-color face tracking drives a
virtual cursor, recognized voice phrases drive a deterministic command
FSM emitting click/navigation/app-launch events. Library, CLI
(``headmouse``), and WebSocket service (``headmouse serve``)."""

from .color import (
    DEFAULT_SKIN_RANGE,
    InvalidPixelError,
    SkinRange,
    decompose,
    fit_skin_range,
    is_skin,
    normalize,
    pack,
)
from .grammar import (
    DEFAULT_MENUS,
    Grammar,
    GrammarCollisionError,
    Intent,
    STATIC_PHRASES,
    build_grammar,
    normalize_phrase,
)
from .ingest import (
    PpmError,
    Rendered,
    SceneError,
    StreamError,
    SynthScene,
    background_frame,
    load_ppm,
    render,
    save_ppm,
    stream_frames,
)
from .registry import (
    AppEntry,
    EngineConfig,
    Registry,
    RegistryError,
    RegistryParseError,
    RegistryVersionError,
    load_config,
    save_config,
)
from .segmentation import (
    DimensionMismatchError,
    Frame,
    Rect,
    SegParams,
    denoise,
    detect,
    face_box,
    skin_mask,
    subtract_background,
)
from .session import Event, Session
from .service import build_app, serve
from .tracker import CursorConfig, TrackerState, calibrate, track

__version__ = "0.1.0"
