import { describe, expect, it } from "vitest";

import {
  DEMO_MENUS,
  initialUiState,
  onDisconnect,
  onOpen,
  reduce,
  type UiState,
} from "../src/core.js";
import type { ServerMsg } from "../src/protocol.js";

function ev(seq: number, kind: string, ...args: unknown[]): ServerMsg {
  return { type: "event", seq, kind, args };
}

function stateMsg(over: Partial<Extract<ServerMsg, { type: "state" }>> = {}): ServerMsg {
  return {
    type: "state",
    cursor: { x: 400, y: 300 },
    face: null,
    enabled: false,
    awaiting: null,
    seq: 0,
    ...over,
  };
}

function feed(s: UiState, msgs: ServerMsg[]): UiState {
  return msgs.reduce(reduce, s);
}

describe("state messages", () => {
  it("mirror cursor, face, enabled, awaiting and seq", () => {
    const s = reduce(
      initialUiState(),
      stateMsg({
        cursor: { x: 123.5, y: 77 },
        face: { x: 10, y: 20, w: 30, h: 40 },
        enabled: true,
        awaiting: "internet",
        seq: 9,
      }),
    );
    expect(s.cursor).toEqual({ x: 123.5, y: 77 });
    expect(s.face).toEqual({ x: 10, y: 20, w: 30, h: 40 });
    expect(s.enabled).toBe(true);
    expect(s.awaiting).toBe("internet");
    expect(s.seq).toBe(9);
  });

  it("does not mutate the previous state", () => {
    const before = initialUiState();
    const frozen = JSON.stringify(before);
    reduce(before, stateMsg({ cursor: { x: 1, y: 2 }, enabled: true }));
    reduce(before, ev(1, "EnabledChanged", true));
    expect(JSON.stringify(before)).toBe(frozen);
  });
});

describe("enable and cursor events", () => {
  it("EnabledChanged toggles", () => {
    let s = reduce(initialUiState(), ev(1, "EnabledChanged", true));
    expect(s.enabled).toBe(true);
    s = reduce(s, ev(2, "EnabledChanged", false));
    expect(s.enabled).toBe(false);
  });

  it("disable clears dialog, menu and held", () => {
    let s = feed(initialUiState(), [
      ev(1, "EnabledChanged", true),
      ev(2, "MenuSelected", "file"),
      ev(3, "MouseDown", "left"),
      ev(4, "ConfirmRequested", "internet"),
    ]);
    expect(s.openMenu).toBe("file");
    expect(s.held).toBe(true);
    expect(s.dialog).toEqual({ label: "internet" });
    s = reduce(s, ev(5, "EnabledChanged", false));
    expect(s.openMenu).toBeNull();
    expect(s.held).toBe(false);
    expect(s.dialog).toBeNull();
  });

  it("CursorMoved updates the dot", () => {
    const s = reduce(initialUiState(), ev(1, "CursorMoved", 410.5, 290.0));
    expect(s.cursor).toEqual({ x: 410.5, y: 290.0 });
  });

  it("clicks are counted, hold tracks down/up", () => {
    let s = feed(initialUiState(), [
      ev(1, "Click", "left", 1),
      ev(2, "Click", "right", 2),
      ev(3, "MouseDown", "left"),
    ]);
    expect(s.clicks).toBe(2);
    expect(s.held).toBe(true);
    s = reduce(s, ev(4, "MouseUp", "left"));
    expect(s.held).toBe(false);
  });
});

describe("menu navigation", () => {
  const fileItems = DEMO_MENUS[0].items;

  it("MenuSelected opens with the first item highlighted", () => {
    const s = reduce(initialUiState(), ev(1, "MenuSelected", "file"));
    expect(s.openMenu).toBe("file");
    expect(s.highlight).toBe(0);
  });

  it("NavDown and NavUp wrap around", () => {
    let s = reduce(initialUiState(), ev(1, "MenuSelected", "file"));
    for (let i = 0; i < fileItems.length; i++) s = reduce(s, ev(2 + i, "NavDown"));
    expect(s.highlight).toBe(0); // full cycle
    s = reduce(s, ev(99, "NavUp"));
    expect(s.highlight).toBe(fileItems.length - 1);
  });

  it("Enter activates the highlighted item and closes the menu", () => {
    let s = feed(initialUiState(), [
      ev(1, "MenuSelected", "edit"),
      ev(2, "NavDown"),
      ev(3, "Enter"),
    ]);
    expect(s.activated).toBe(DEMO_MENUS[1].items[1]);
    expect(s.openMenu).toBeNull();
  });

  it("navigation without an open menu is a no-op", () => {
    const s0 = initialUiState();
    expect(reduce(s0, ev(1, "NavDown")).highlight).toBe(0);
    expect(reduce(s0, ev(1, "Enter")).activated).toBeNull();
  });

  it("switching menus resets the highlight", () => {
    const s = feed(initialUiState(), [
      ev(1, "MenuSelected", "file"),
      ev(2, "NavDown"),
      ev(3, "MenuSelected", "view"),
    ]);
    expect(s.openMenu).toBe("view");
    expect(s.highlight).toBe(0);
  });
});

describe("confirmation dialog", () => {
  it("opens on ConfirmRequested and resolves on AppLaunched", () => {
    let s = reduce(initialUiState(), ev(1, "ConfirmRequested", "internet"));
    expect(s.dialog).toEqual({ label: "internet" });
    s = reduce(s, ev(2, "AppLaunched", "internet", "https://example.com"));
    expect(s.dialog).toBeNull();
    expect(s.launched).toEqual({ label: "internet", target: "https://example.com" });
  });

  it("closes on Cancelled without a launch", () => {
    let s = reduce(initialUiState(), ev(1, "ConfirmRequested", "internet"));
    s = reduce(s, ev(2, "Cancelled"));
    expect(s.dialog).toBeNull();
    expect(s.launched).toBeNull();
  });

  it("a state message with awaiting null closes a stale dialog", () => {
    let s = reduce(initialUiState(), ev(1, "ConfirmRequested", "internet"));
    s = reduce(s, stateMsg({ awaiting: null, seq: 1 }));
    expect(s.dialog).toBeNull();
  });

  it("a state message with awaiting set keeps the dialog open", () => {
    let s = reduce(initialUiState(), ev(1, "ConfirmRequested", "internet"));
    s = reduce(s, stateMsg({ awaiting: "internet", enabled: true, seq: 1 }));
    expect(s.dialog).toEqual({ label: "internet" });
  });
});

describe("registry and errors", () => {
  it("registry message replaces the app list", () => {
    const apps = [
      { label: "internet", target: "https://example.com", added_at: 0 },
      { label: "mail", target: "mailto:", added_at: 1 },
    ];
    let s = reduce(initialUiState(), { type: "registry", apps });
    expect(s.registry).toEqual(apps);
    s = reduce(s, { type: "registry", apps: [] });
    expect(s.registry).toEqual([]);
  });

  it("errors are captured and logged, state otherwise untouched", () => {
    const s = reduce(initialUiState(), {
      type: "error",
      code: "bad_frame",
      message: "payload length mismatch",
    });
    expect(s.lastError).toEqual({ code: "bad_frame", message: "payload length mismatch" });
    expect(s.log[s.log.length - 1]).toContain("bad_frame");
    expect(s.enabled).toBe(false);
  });
});

describe("event log", () => {
  it("records seq, kind and args", () => {
    const s = reduce(initialUiState(), ev(7, "Click", "left", 1));
    expect(s.log).toEqual(["7 Click left 1"]);
  });

  it("tracks the highest seq seen", () => {
    const s = feed(initialUiState(), [ev(1, "EnabledChanged", true), ev(2, "Click", "left", 1)]);
    expect(s.seq).toBe(2);
  });

  it("is bounded", () => {
    let s = initialUiState();
    for (let i = 1; i <= 300; i++) s = reduce(s, ev(i, "CursorMoved", i, i));
    expect(s.log.length).toBeLessThanOrEqual(80);
    expect(s.log[s.log.length - 1]).toBe("300 CursorMoved 300 300");
  });
});

describe("connection lifecycle", () => {
  it("disconnect freezes the desktop", () => {
    const s = onDisconnect(reduce(initialUiState(), stateMsg({ enabled: true })));
    expect(s.connection).toBe("closed");
    expect(s.frozen).toBe(true);
    expect(s.enabled).toBe(true); // frozen, not reset
  });

  it("reconnect clears the freeze and stale error", () => {
    let s = onDisconnect(initialUiState());
    s = { ...s, lastError: { code: "bad_json", message: "x" } };
    s = onOpen(s);
    expect(s.connection).toBe("open");
    expect(s.frozen).toBe(false);
    expect(s.lastError).toBeNull();
  });

  it("unknown event kinds leave the state intact", () => {
    const s0 = reduce(initialUiState(), stateMsg({ enabled: true, seq: 3 }));
    const s1 = reduce(s0, ev(4, "SomethingNew", 1, 2));
    expect({ ...s1, log: [], seq: 0 }).toEqual({ ...s0, log: [], seq: 0 });
    expect(s1.seq).toBe(4);
  });
});
