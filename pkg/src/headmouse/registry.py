"""App registry and engine config persistence.

One JSON document (default ``headmouse.json``) holds the launchable app
list, phrase synonyms, and optional cursor/segmentation/skin sections.
``version`` is the schema version and is always 1; ``revision`` counts
mutations. Writes are atomic (temp file then rename) and canonical:
sorted keys, 2-space indent, trailing newline, so identical values
produce identical bytes.
"""

from __future__ import annotations

import dataclasses
import json
import os
import tempfile
import time
from dataclasses import dataclass, field

from .color import DEFAULT_SKIN_RANGE, SkinRange
from .grammar import DEFAULT_MENUS, STATIC_PHRASES, normalize_phrase
from .segmentation import SegParams
from .tracker import CursorConfig

SCHEMA_VERSION = 1


class RegistryError(ValueError):
    """Base class for registry and config failures."""


class RegistryParseError(RegistryError):
    """Structurally invalid registry/config document."""


class RegistryVersionError(RegistryError):
    """Document declares a schema version this code does not speak."""


class DuplicateLabelError(RegistryError):
    pass


class UnknownLabelError(RegistryError):
    pass


class LabelCollisionError(RegistryError):
    """Label collides with a built-in grammar phrase."""


@dataclass(frozen=True)
class AppEntry:
    label: str  # normalized voice phrase, unique within a registry
    target: str  # opaque launch string, echoed in AppLaunched events
    added_at: float = 0.0


@dataclass(frozen=True)
class Registry:
    apps: tuple[AppEntry, ...] = ()
    synonyms: dict[str, str] = field(default_factory=dict)
    revision: int = 0

    def labels(self) -> tuple[str, ...]:
        return tuple(a.label for a in self.apps)

    def targets(self) -> dict[str, str]:
        return {a.label: a.target for a in self.apps}


def add(reg: Registry, label: str, target: str, now: float | None = None) -> Registry:
    """Append an app entry; returns the new registry value."""
    key = normalize_phrase(label)
    if not key:
        raise RegistryError(f"label {label!r} is empty after normalization")
    if key in STATIC_PHRASES:
        raise LabelCollisionError(f"label {key!r} collides with a built-in phrase")
    if any(a.label == key for a in reg.apps):
        raise DuplicateLabelError(f"label {key!r} already registered")
    if not isinstance(target, str) or not target:
        raise RegistryError("target must be a non-empty string")
    stamp = float(time.time() if now is None else now)
    entry = AppEntry(label=key, target=target, added_at=stamp)
    return Registry(reg.apps + (entry,), dict(reg.synonyms), reg.revision + 1)


def remove(reg: Registry, label: str) -> Registry:
    key = normalize_phrase(label)
    kept = tuple(a for a in reg.apps if a.label != key)
    if len(kept) == len(reg.apps):
        raise UnknownLabelError(f"no app labeled {key!r}")
    return Registry(kept, dict(reg.synonyms), reg.revision + 1)


# ---------------------------------------------------------------- documents

def _registry_doc(reg: Registry) -> dict:
    return {
        "version": SCHEMA_VERSION,
        "revision": reg.revision,
        "apps": [
            {"label": a.label, "target": a.target, "added_at": a.added_at} for a in reg.apps
        ],
        "synonyms": dict(reg.synonyms),
    }


def _parse_registry(doc) -> Registry:
    if not isinstance(doc, dict):
        raise RegistryParseError("document root must be a JSON object")
    version = doc.get("version")
    if isinstance(version, bool) or not isinstance(version, int):
        raise RegistryParseError("field 'version' must be an integer")
    if version != SCHEMA_VERSION:
        raise RegistryVersionError(
            f"unsupported schema version {version} (this build speaks {SCHEMA_VERSION})"
        )
    raw_apps = doc.get("apps", [])
    if not isinstance(raw_apps, list):
        raise RegistryParseError("field 'apps' must be a list")
    entries = []
    seen = set()
    for i, item in enumerate(raw_apps):
        where = f"apps[{i}]"
        if not isinstance(item, dict):
            raise RegistryParseError(f"field '{where}' must be an object")
        label = item.get("label")
        if not isinstance(label, str) or not label:
            raise RegistryParseError(f"field '{where}.label' must be a non-empty string")
        if normalize_phrase(label) != label:
            raise RegistryParseError(f"field '{where}.label' {label!r} is not normalized")
        if label in STATIC_PHRASES:
            raise RegistryParseError(
                f"field '{where}.label' {label!r} collides with a built-in phrase"
            )
        if label in seen:
            raise RegistryParseError(f"field '{where}.label' {label!r} appears twice")
        seen.add(label)
        target = item.get("target")
        if not isinstance(target, str):
            raise RegistryParseError(f"field '{where}.target' must be a string")
        added = item.get("added_at", 0.0)
        if isinstance(added, bool) or not isinstance(added, (int, float)):
            raise RegistryParseError(f"field '{where}.added_at' must be a number")
        entries.append(AppEntry(label=label, target=target, added_at=float(added)))
    raw_syn = doc.get("synonyms", {})
    if not isinstance(raw_syn, dict):
        raise RegistryParseError("field 'synonyms' must be an object")
    for k, v in raw_syn.items():
        if not isinstance(v, str):
            raise RegistryParseError(f"field 'synonyms.{k}' must be a string")
    revision = doc.get("revision", 0)
    if isinstance(revision, bool) or not isinstance(revision, int) or revision < 0:
        raise RegistryParseError("field 'revision' must be a non-negative integer")
    return Registry(tuple(entries), dict(raw_syn), revision)


def _dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def _atomic_write(path, text: str):
    path = os.fspath(path)
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".headmouse-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        try:
            os.unlink(tmp)
        except OSError:
            pass
        raise


def _load_doc(path):
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise RegistryParseError(
            f"{path}: invalid JSON at line {e.lineno} column {e.colno}: {e.msg}"
        ) from None


def save(reg: Registry, path):
    _atomic_write(path, _dumps(_registry_doc(reg)))


def load(path) -> Registry:
    """Read a registry document; extra config sections are ignored."""
    doc = _load_doc(path)
    try:
        return _parse_registry(doc)
    except RegistryError as e:
        raise type(e)(f"{path}: {e}") from None


# ---------------------------------------------------------------- config

def update_dataclass(current, raw: dict, where: str):
    """Apply a partial field dict onto a frozen dataclass, rejecting
    unknown fields; validation lives in the dataclass itself."""
    if not isinstance(raw, dict):
        raise RegistryParseError(f"field '{where}' must be an object")
    known = {f.name for f in dataclasses.fields(current)}
    unknown = sorted(set(raw) - known)
    if unknown:
        raise RegistryParseError(f"field '{where}' has unknown keys {unknown}")
    try:
        return dataclasses.replace(current, **raw)
    except (TypeError, ValueError) as e:
        raise RegistryParseError(f"field '{where}': {e}") from None


@dataclass(frozen=True)
class EngineConfig:
    """Everything a session needs, as persisted in one file."""

    registry: Registry = Registry()
    cursor: CursorConfig = CursorConfig()
    seg: SegParams = SegParams()
    skin: SkinRange = DEFAULT_SKIN_RANGE
    menus: tuple[str, ...] = DEFAULT_MENUS


def _config_doc(cfg: EngineConfig) -> dict:
    doc = _registry_doc(cfg.registry)
    doc["cursor"] = dataclasses.asdict(cfg.cursor)
    doc["seg"] = dataclasses.asdict(cfg.seg)
    doc["skin"] = dataclasses.asdict(cfg.skin)
    doc["menus"] = list(cfg.menus)
    return doc


def load_config(path) -> EngineConfig:
    """Read a full engine config; absent sections fall back to defaults,
    so a bare registry file is a valid config."""
    doc = _load_doc(path)
    try:
        reg = _parse_registry(doc)
        cfg = EngineConfig(registry=reg)
        for key, current in (("cursor", cfg.cursor), ("seg", cfg.seg), ("skin", cfg.skin)):
            if key in doc:
                cfg = dataclasses.replace(cfg, **{key: update_dataclass(current, doc[key], key)})
        if "menus" in doc:
            menus = doc["menus"]
            if not isinstance(menus, list) or not all(isinstance(m, str) for m in menus):
                raise RegistryParseError("field 'menus' must be a list of strings")
            cfg = dataclasses.replace(cfg, menus=tuple(menus))
        return cfg
    except RegistryError as e:
        raise type(e)(f"{path}: {e}") from None


def save_config(cfg: EngineConfig, path):
    _atomic_write(path, _dumps(_config_doc(cfg)))


def resolve_config_path(flag: str | None = None) -> tuple[str, bool]:
    """CLI/service config path resolution: --config flag beats the
    HEADMOUSE_CONFIG env var beats ./headmouse.json. Returns the path and
    whether it was explicitly requested (explicit + missing is an error;
    the implicit default is allowed to be absent)."""
    if flag:
        return flag, True
    env = os.environ.get("HEADMOUSE_CONFIG")
    if env:
        return env, True
    return "headmouse.json", False
