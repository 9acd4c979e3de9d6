"""WebSocket control service.

One JSON object per text message, discriminated by "type".

  client -> server:
    {"type": "frame", "w": W, "h": H, "data": "<base64 of W*H*3 RGB bytes>"}
    {"type": "phrase", "text": "double click"}
    {"type": "calibrate"}
    {"type": "set_background"}          # adopt the last received frame
    {"type": "config", "cursor": {..}, "seg": {..}, "skin": {..}}  # partial
    {"type": "registry_add", "label": "internet", "target": "https://..."}
    {"type": "registry_remove", "label": "internet"}
    {"type": "registry_list"}

  server -> client:
    {"type": "event", "seq": N, "kind": "...", "args": [...]}
    {"type": "state", "cursor": {"x":..,"y":..}, "face": {...}|null,
     "enabled": bool, "awaiting": label|null, "seq": N}
    {"type": "registry", "apps": [{"label":..,"target":..}]}
    {"type": "error", "code": "...", "message": "..."}

Every frame or phrase is answered with its events (ascending seq) and
then exactly one state. Malformed input gets an error message and the
connection stays open. Each connection owns an independent session
seeded from the config file as it was at connect time; registry edits
persist to that file (when one is configured) but never touch sibling
connections.
"""

from __future__ import annotations

import base64
import binascii
import dataclasses
import json

from fastapi import FastAPI, WebSocket, WebSocketDisconnect

from . import registry as registry_mod
from .grammar import GrammarCollisionError, build_grammar
from .registry import (
    EngineConfig,
    RegistryError,
    DuplicateLabelError,
    LabelCollisionError,
    UnknownLabelError,
    update_dataclass,
)
from .segmentation import Frame
from .session import Session

MAX_FRAME_W = 1920
MAX_FRAME_H = 1080


def _error(code: str, message: str) -> dict:
    return {"type": "error", "code": code, "message": message}


def _event_msg(event) -> dict:
    return {"type": "event", "seq": event.seq, "kind": event.kind, "args": list(event.args)}


class Connection:
    """Message handling for one client, independent of the transport.

    ``handle(text)`` returns the ordered reply messages; the socket layer
    just serializes them. Keeping this synchronous makes the protocol
    unit-testable without a running server.
    """

    def __init__(self, config: EngineConfig, config_path: str | None = None):
        self.config = config
        self.config_path = config_path
        self.session = Session.from_config(config)
        self.background: Frame | None = None
        self.last_frame: Frame | None = None

    # -------------------------------------------------------- replies

    def _state_msg(self) -> dict:
        face = self.session.current_face
        x, y = self.session.state.cursor
        return {
            "type": "state",
            "cursor": {"x": x, "y": y},
            "face": None
            if face is None
            else {"x": face.x, "y": face.y, "w": face.w, "h": face.h},
            "enabled": self.session.enabled,
            "awaiting": self.session.awaiting,
            "seq": self.session.seq,
        }

    def _registry_msg(self) -> dict:
        return {
            "type": "registry",
            "apps": [
                {"label": a.label, "target": a.target} for a in self.config.registry.apps
            ],
        }

    # -------------------------------------------------------- dispatch

    def handle(self, raw: str) -> list[dict]:
        try:
            msg = json.loads(raw)
        except json.JSONDecodeError as e:
            return [_error("bad_json", f"line {e.lineno} column {e.colno}: {e.msg}")]
        if not isinstance(msg, dict) or not isinstance(msg.get("type"), str):
            return [_error("bad_message", "expected an object with a string 'type'")]
        handler = self._HANDLERS.get(msg["type"])
        if handler is None:
            return [_error("bad_type", f"unknown message type {msg['type']!r}")]
        return handler(self, msg)

    def _on_frame(self, msg: dict) -> list[dict]:
        w, h = msg.get("w"), msg.get("h")
        data = msg.get("data")
        for name, v in (("w", w), ("h", h)):
            if isinstance(v, bool) or not isinstance(v, int) or v < 1:
                return [_error("bad_frame", f"'{name}' must be a positive integer")]
        if w > MAX_FRAME_W or h > MAX_FRAME_H:
            return [
                _error(
                    "frame_too_large",
                    f"{w}x{h} exceeds the {MAX_FRAME_W}x{MAX_FRAME_H} limit",
                )
            ]
        if not isinstance(data, str):
            return [_error("bad_frame", "'data' must be a base64 string")]
        try:
            payload = base64.b64decode(data, validate=True)
        except (binascii.Error, ValueError):
            return [_error("bad_frame", "'data' is not valid base64")]
        if len(payload) != w * h * 3:
            return [
                _error(
                    "bad_frame",
                    f"payload is {len(payload)} bytes, need {w * h * 3} for {w}x{h}",
                )
            ]
        frame = Frame.from_rgb_bytes(w, h, payload)
        self.last_frame = frame
        background = self.background
        if background is not None and (
            background.width != frame.width or background.height != frame.height
        ):
            return [
                _error(
                    "dim_mismatch",
                    f"frame {frame.width}x{frame.height} does not match background "
                    f"{background.width}x{background.height}",
                )
            ]
        events = self.session.on_frame(frame, background)
        return [*map(_event_msg, events), self._state_msg()]

    def _on_phrase(self, msg: dict) -> list[dict]:
        text = msg.get("text")
        if not isinstance(text, str):
            return [_error("bad_phrase", "'text' must be a string")]
        events = self.session.on_phrase(text)
        return [*map(_event_msg, events), self._state_msg()]

    def _on_calibrate(self, msg: dict) -> list[dict]:
        events = self.session.calibrate()
        return [*map(_event_msg, events), self._state_msg()]

    def _on_set_background(self, msg: dict) -> list[dict]:
        if self.last_frame is None:
            return [_error("no_frame", "no frame received yet to adopt as background")]
        self.background = self.last_frame
        return [self._state_msg()]

    def _on_config(self, msg: dict) -> list[dict]:
        try:
            cursor = (
                update_dataclass(self.session.cursor_config, msg["cursor"], "cursor")
                if "cursor" in msg
                else None
            )
            seg = (
                update_dataclass(self.session.seg_params, msg["seg"], "seg")
                if "seg" in msg
                else None
            )
            skin = (
                update_dataclass(self.session.skin, msg["skin"], "skin")
                if "skin" in msg
                else None
            )
        except RegistryError as e:
            return [_error("bad_config", str(e))]
        events = self.session.configure(cursor=cursor, seg=seg, skin=skin)
        return [*map(_event_msg, events), self._state_msg()]

    def _mutate_registry(self, mutate) -> list[dict]:
        try:
            new_reg = mutate(self.config.registry)
            grammar = build_grammar(
                app_labels=new_reg.labels(),
                menu_names=self.config.menus,
                synonyms=new_reg.synonyms,
            )
        except (DuplicateLabelError,) as e:
            return [_error("duplicate_label", str(e))]
        except (LabelCollisionError, GrammarCollisionError) as e:
            return [_error("label_collision", str(e))]
        except UnknownLabelError as e:
            return [_error("not_found", str(e))]
        except RegistryError as e:
            return [_error("bad_label", str(e))]
        self.config = dataclasses.replace(self.config, registry=new_reg)
        events = self.session.set_vocabulary(grammar, new_reg.targets())
        if self.config_path is not None:
            registry_mod.save_config(self.config, self.config_path)
        return [*map(_event_msg, events), self._registry_msg()]

    def _on_registry_add(self, msg: dict) -> list[dict]:
        label, target = msg.get("label"), msg.get("target")
        if not isinstance(label, str) or not isinstance(target, str):
            return [_error("bad_label", "'label' and 'target' must be strings")]
        return self._mutate_registry(lambda reg: registry_mod.add(reg, label, target))

    def _on_registry_remove(self, msg: dict) -> list[dict]:
        label = msg.get("label")
        if not isinstance(label, str):
            return [_error("bad_label", "'label' must be a string")]
        return self._mutate_registry(lambda reg: registry_mod.remove(reg, label))

    def _on_registry_list(self, msg: dict) -> list[dict]:
        return [self._registry_msg()]

    _HANDLERS = {
        "frame": _on_frame,
        "phrase": _on_phrase,
        "calibrate": _on_calibrate,
        "set_background": _on_set_background,
        "config": _on_config,
        "registry_add": _on_registry_add,
        "registry_remove": _on_registry_remove,
        "registry_list": _on_registry_list,
    }


def _load_config_or_default(config_path: str | None) -> EngineConfig:
    if config_path is None:
        return EngineConfig()
    try:
        return registry_mod.load_config(config_path)
    except FileNotFoundError:
        return EngineConfig()


def build_app(config_path: str | None = None, webui_dir: str | None = None) -> FastAPI:
    """Assemble the FastAPI app: the /session socket plus, when a webui
    build directory is given, static files at /."""
    app = FastAPI(title="headmouse")

    @app.websocket("/session")
    async def session_socket(ws: WebSocket):
        await ws.accept()
        # fresh session per connection, config as of connect time
        conn = Connection(_load_config_or_default(config_path), config_path)
        try:
            while True:
                raw = await ws.receive_text()
                for reply in conn.handle(raw):
                    await ws.send_text(json.dumps(reply, sort_keys=True))
        except WebSocketDisconnect:
            pass

    if webui_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=webui_dir, html=True), name="webui")
    return app


def serve(
    bind: str = "127.0.0.1:8943",
    config_path: str | None = None,
    webui_dir: str | None = None,
):
    """Run the server until interrupted."""
    import uvicorn

    host, _, port_text = bind.rpartition(":")
    if not host or not port_text.isdigit():
        raise ValueError(f"bind address {bind!r} must look like host:port")
    uvicorn.run(
        build_app(config_path=config_path, webui_dir=webui_dir),
        host=host,
        port=int(port_text),
        log_level="warning",
    )
