"""Command line entry points.

Event log goes to stdout (the golden-file surface), diagnostics to
stderr. Exit codes: 0 success, 1 runtime/script errors, 2 usage errors
(argparse's own convention).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
import time

from . import ingest, registry as registry_mod
from .color import decompose, fit_skin_range
from .grammar import build_grammar
from .registry import EngineConfig, RegistryError, resolve_config_path
from .segmentation import DimensionMismatchError
from .session import Session
from .service import serve


class CliError(Exception):
    pass


def _load_config(flag: str | None, allow_missing_explicit: bool = False) -> EngineConfig:
    path, explicit = resolve_config_path(flag)
    if not os.path.exists(path):
        if explicit and not allow_missing_explicit:
            raise CliError(f"config file {path!r} not found")
        return EngineConfig()
    try:
        return registry_mod.load_config(path)
    except RegistryError as e:
        raise CliError(str(e)) from None


# ---------------------------------------------------------------- run

def cmd_run(args) -> int:
    cfg = _load_config(args.config)
    session = Session.from_config(cfg)
    background = None
    try:
        fh = open(args.script, "r", encoding="utf-8")
    except OSError as e:
        raise CliError(f"cannot open script: {e}") from None
    with fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            word, _, rest = line.partition(" ")
            rest = rest.strip()
            try:
                if word == "phrase":
                    events = session.on_phrase(rest)
                elif word == "frame":
                    frame = ingest.load_ppm_file(rest)
                    events = session.on_frame(frame, background)
                elif word == "background":
                    background = ingest.load_ppm_file(rest)
                    events = []
                elif word == "calibrate":
                    events = session.calibrate()
                else:
                    raise CliError(f"unknown directive {word!r}")
            except (OSError, ingest.PpmError, DimensionMismatchError, CliError) as e:
                raise CliError(f"{args.script}:{lineno}: {e}") from None
            for event in events:
                print(event.line())
    return 0


# ---------------------------------------------------------------- synth

def cmd_synth(args) -> int:
    try:
        with open(args.scene, "rb") as fh:
            scene, centers = ingest.scene_from_json_bytes(fh.read())
    except OSError as e:
        raise CliError(f"cannot open scene spec: {e}") from None
    except ingest.SceneError as e:
        raise CliError(f"{args.scene}: {e}") from None
    os.makedirs(args.out, exist_ok=True)
    ingest.save_ppm_file(ingest.background_frame(scene), os.path.join(args.out, "background.ppm"))
    truth = []
    for i, center in enumerate(centers):
        rendered = ingest.render(scene, center=center)
        ingest.save_ppm_file(rendered.frame, os.path.join(args.out, f"frame_{i:04d}.ppm"))
        box = rendered.box
        truth.append(
            {"index": i, "box": None if box is None else [box.x, box.y, box.w, box.h]}
        )
    doc = {"width": scene.width, "height": scene.height, "frames": truth}
    with open(os.path.join(args.out, "truth.json"), "w", encoding="utf-8") as fh:
        fh.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    print(f"wrote background + {len(centers)} frames to {args.out}", file=sys.stderr)
    return 0


# ---------------------------------------------------------------- grammar

def cmd_grammar(args) -> int:
    cfg = _load_config(args.config)
    g = build_grammar(cfg.registry.labels(), cfg.menus, cfg.registry.synonyms)
    intent = g.parse(args.phrase)
    print("none" if intent is None else str(intent))
    return 0


# ---------------------------------------------------------------- registry

def cmd_registry(args) -> int:
    path, _ = resolve_config_path(args.config)
    cfg = _load_config(args.config, allow_missing_explicit=True)
    try:
        if args.action == "add":
            cfg = dataclasses.replace(
                cfg, registry=registry_mod.add(cfg.registry, args.label, args.target)
            )
            registry_mod.save_config(cfg, path)
            print(f"added {args.label!r} -> {args.target!r}", file=sys.stderr)
        elif args.action == "remove":
            cfg = dataclasses.replace(cfg, registry=registry_mod.remove(cfg.registry, args.label))
            registry_mod.save_config(cfg, path)
            print(f"removed {args.label!r}", file=sys.stderr)
        else:
            for app in cfg.registry.apps:
                print(f"{app.label}\t{app.target}")
    except RegistryError as e:
        raise CliError(str(e)) from None
    return 0


# ---------------------------------------------------------------- serve

def cmd_serve(args) -> int:
    path, _ = resolve_config_path(args.config)
    try:
        serve(bind=args.bind, config_path=path, webui_dir=args.webui_dir)
    except ValueError as e:
        raise CliError(str(e)) from None
    except OSError as e:
        raise CliError(f"cannot bind {args.bind}: {e}") from None
    return 0


# ---------------------------------------------------------------- calibrate-skin

def cmd_calibrate_skin(args) -> int:
    try:
        names = sorted(n for n in os.listdir(args.swatches) if n.endswith(".ppm"))
    except OSError as e:
        raise CliError(f"cannot read swatch directory: {e}") from None
    samples = []
    for name in names:
        try:
            frame = ingest.load_ppm_file(os.path.join(args.swatches, name))
        except (OSError, ingest.PpmError) as e:
            raise CliError(f"{name}: {e}") from None
        r, g, b = decompose(frame.pixels)
        samples.extend(zip(r.ravel().tolist(), g.ravel().tolist(), b.ravel().tolist()))
    if not samples:
        raise CliError(f"no .ppm swatch files in {args.swatches!r}")
    try:
        fitted = fit_skin_range(samples, pad=args.pad, brightness_min=args.brightness_min)
    except ValueError as e:
        raise CliError(str(e)) from None
    print(json.dumps(dataclasses.asdict(fitted), indent=2, sort_keys=True))
    return 0


# ---------------------------------------------------------------- bench

def cmd_bench(args) -> int:
    w, h, count = args.width, args.height, args.frames
    if w < 32 or h < 32:
        raise CliError("bench frames must be at least 32x32")
    if count < 1:
        raise CliError("need at least one frame")
    import math

    rx = ry = min(w, h) / 8 + 0.5
    amp = min(w, h) / 10
    scene = ingest.SynthScene(
        width=w,
        height=h,
        bg_color=(20, 40, 160),
        skin_color=(198, 134, 66),
        cx=w / 2,
        cy=h / 2,
        rx=rx,
        ry=ry,
    )
    centers = [
        (w / 2 + amp * math.cos(2 * math.pi * i / count), h / 2 + amp * math.sin(2 * math.pi * i / count))
        for i in range(count)
    ]
    # render outside the timed region; the target is the detect+track pipeline
    frames = [ingest.render(scene, center=c).frame for c in centers]
    background = ingest.background_frame(scene)
    session = Session()
    start = time.perf_counter()
    for frame in frames:
        session.on_frame(frame, background)
    elapsed = time.perf_counter() - start
    fps = count / elapsed if elapsed > 0 else float("inf")
    print(f"{fps:.1f} fps ({count} frames of {w}x{h} in {elapsed:.2f} s, single-threaded)")
    return 0


# ---------------------------------------------------------------- parser

def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="headmouse",
        description="Hands-free computer control engine: face-tracking cursor, voice command FSM.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="replay a script of frames/phrases, print the event log")
    p.add_argument("--script", required=True, help="directive file: frame/phrase/background/calibrate")
    p.add_argument("--config", help="engine config file (default: $HEADMOUSE_CONFIG or headmouse.json)")
    p.set_defaults(func=cmd_run)

    p = sub.add_parser("synth", help="render a synthetic scene to PPM frames plus truth.json")
    p.add_argument("--scene", required=True, help="scene spec JSON file")
    p.add_argument("--out", required=True, help="output directory")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("grammar", help="parse one phrase and print the intent")
    p.add_argument("--phrase", required=True)
    p.add_argument("--config", help="engine config file supplying app labels/menus/synonyms")
    p.set_defaults(func=cmd_grammar)

    p = sub.add_parser("registry", help="edit the persistent app registry")
    action = p.add_subparsers(dest="action", required=True)
    a = action.add_parser("add", help="register a voice label -> launch target")
    a.add_argument("label")
    a.add_argument("target")
    a.add_argument("--config")
    a.set_defaults(func=cmd_registry)
    a = action.add_parser("remove", help="remove a labeled app")
    a.add_argument("label")
    a.add_argument("--config")
    a.set_defaults(func=cmd_registry)
    a = action.add_parser("list", help="print label<TAB>target per app")
    a.add_argument("--config")
    a.set_defaults(func=cmd_registry)

    p = sub.add_parser("serve", help="run the WebSocket service")
    p.add_argument("--bind", default="127.0.0.1:8943")
    p.add_argument("--config", help="engine config file (registry edits persist here)")
    p.add_argument("--webui-dir", help="serve this directory at / (the browser UI build)")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("calibrate-skin", help="fit a skin range over swatch pixmaps")
    p.add_argument("--swatches", required=True, help="directory of .ppm swatch sheets")
    p.add_argument("--pad", type=float, default=0.02)
    p.add_argument("--brightness-min", type=int, default=60)
    p.set_defaults(func=cmd_calibrate_skin)

    p = sub.add_parser("bench", help="measure detect+track throughput on synthetic frames")
    p.add_argument("--width", type=int, default=640)
    p.add_argument("--height", type=int, default=480)
    p.add_argument("--frames", type=int, default=300)
    p.set_defaults(func=cmd_bench)

    return parser


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as e:
        print(f"headmouse: {e}", file=sys.stderr)
        return 1
    except KeyboardInterrupt:
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
