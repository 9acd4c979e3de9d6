"""Phrase text to typed intent.

Command-and-control style: a finite table of whole phrases, extended at
build time with registry app labels and menu names. Matching is exact
over normalized text; no prefix or fuzzy matching, so "click" inside
"double left click" never fires on its own.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


class GrammarCollisionError(ValueError):
    """Two vocabulary entries normalize to the same phrase."""


@dataclass(frozen=True)
class Intent:
    kind: str
    name: str | None = None  # MenuSelect / LaunchApp payload

    def __str__(self):
        return self.kind if self.name is None else f"{self.kind}({self.name})"


# The 15 built-in phrases.
STATIC_PHRASES: dict[str, Intent] = {
    "click": Intent("LeftClick"),
    "left click": Intent("LeftClick"),
    "double click": Intent("DoubleLeftClick"),
    "double left click": Intent("DoubleLeftClick"),
    "right click": Intent("RightClick"),
    "double right click": Intent("DoubleRightClick"),
    "hold": Intent("HoldButton"),
    "release": Intent("ReleaseButton"),
    "up": Intent("Up"),
    "down": Intent("Down"),
    "ok": Intent("Ok"),
    "yes": Intent("Yes"),
    "no": Intent("No"),
    "enable": Intent("Enable"),
    "disable": Intent("Disable"),
}

STATIC_KINDS = frozenset(i.kind for i in STATIC_PHRASES.values())

# Demo menu vocabulary; sessions may override via config.
DEFAULT_MENUS = ("file", "edit", "view")

_PUNCT = re.compile(r"[^\w\s]+")
_SPACES = re.compile(r"\s+")


def normalize_phrase(text: str) -> str:
    """Lowercase, punctuation to spaces, whitespace collapsed, trimmed."""
    return _SPACES.sub(" ", _PUNCT.sub(" ", text.lower())).strip()


@dataclass(frozen=True)
class Grammar:
    """Complete phrase table for one session. Immutable; registry edits
    build a replacement via build_grammar."""

    entries: dict[str, Intent] = field(default_factory=lambda: dict(STATIC_PHRASES))
    app_labels: frozenset[str] = frozenset()
    menu_names: frozenset[str] = frozenset()

    def parse(self, text: str) -> Intent | None:
        """Exact whole-phrase lookup of the normalized text."""
        return self.entries.get(normalize_phrase(text))


def build_grammar(
    app_labels=(),
    menu_names=(),
    synonyms: dict[str, str] | None = None,
) -> Grammar:
    """Assemble a session vocabulary.

    App labels become LaunchApp phrases, menu names MenuSelect phrases,
    and synonyms map extra phrases onto built-in intent kinds (e.g.
    {"grab": "HoldButton"}). Any two entries that normalize to the same
    phrase raise GrammarCollisionError naming that phrase.
    """
    entries = dict(STATIC_PHRASES)

    def put(phrase, intent, origin):
        key = normalize_phrase(phrase)
        if not key:
            raise ValueError(f"{origin} {phrase!r} is empty after normalization")
        if key in entries:
            raise GrammarCollisionError(f"{origin} collides with existing phrase {key!r}")
        entries[key] = intent
        return key

    menus = frozenset(put(m, Intent("MenuSelect", normalize_phrase(m)), "menu name") for m in menu_names)
    apps = frozenset(put(a, Intent("LaunchApp", normalize_phrase(a)), "app label") for a in app_labels)
    for phrase, kind in (synonyms or {}).items():
        if kind not in STATIC_KINDS:
            raise ValueError(f"synonym {phrase!r} targets unknown intent kind {kind!r}")
        put(phrase, Intent(kind), "synonym")
    return Grammar(entries=entries, app_labels=apps, menu_names=menus)
