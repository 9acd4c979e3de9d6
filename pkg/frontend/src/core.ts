/** UI state and its reducer.
 *
 * The browser is a pure mirror: every visible change is produced by
 * folding a received ServerMsg into UiState. Nothing here computes
 * detection or command transitions locally, which keeps the whole UI
 * drivable (and testable) from a message transcript.
 */

import type { FaceBox, RegistryApp, ServerMsg } from "./protocol.js";

export type ConnectionStatus = "connecting" | "open" | "closed";

export interface MenuDef {
  name: string;
  items: string[];
}

/** File/Edit/View demo menus the navigation events steer. */
export const DEMO_MENUS: MenuDef[] = [
  { name: "file", items: ["New", "Open", "Save", "Close"] },
  { name: "edit", items: ["Cut", "Copy", "Paste"] },
  { name: "view", items: ["Zoom In", "Zoom Out", "Full Screen"] },
];

export interface UiState {
  connection: ConnectionStatus;
  /** desktop frozen by a lost connection; cleared on reconnect */
  frozen: boolean;
  enabled: boolean;
  cursor: { x: number; y: number };
  face: FaceBox | null;
  /** virtual desktop geometry the cursor coordinates live in */
  screen: { w: number; h: number };
  seq: number;
  /** label pending yes/no, as reported by the server state */
  awaiting: string | null;
  /** confirmation dialog contents (opened by ConfirmRequested) */
  dialog: { label: string } | null;
  openMenu: string | null;
  highlight: number;
  /** last menu item activated with Enter */
  activated: string | null;
  launched: { label: string; target: string } | null;
  held: boolean;
  clicks: number;
  registry: RegistryApp[];
  lastError: { code: string; message: string } | null;
  /** rolling event log, newest last */
  log: string[];
}

export function initialUiState(): UiState {
  return {
    connection: "connecting",
    frozen: false,
    enabled: false,
    cursor: { x: 400, y: 300 },
    face: null,
    screen: { w: 800, h: 600 },
    seq: 0,
    awaiting: null,
    dialog: null,
    openMenu: null,
    highlight: 0,
    activated: null,
    launched: null,
    held: false,
    clicks: 0,
    registry: [],
    lastError: null,
    log: [],
  };
}

const LOG_LIMIT = 80;

function pushLog(s: UiState, line: string): string[] {
  const log = [...s.log, line];
  return log.length > LOG_LIMIT ? log.slice(log.length - LOG_LIMIT) : log;
}

function menuItems(name: string | null): string[] {
  const menu = DEMO_MENUS.find((m) => m.name === name);
  return menu ? menu.items : [];
}

function str(v: unknown): string {
  return typeof v === "string" ? v : String(v);
}

function reduceEvent(s: UiState, kind: string, args: unknown[]): UiState {
  switch (kind) {
    case "EnabledChanged": {
      const on = args[0] === true;
      // disabling clears transient command state the session also dropped
      return on
        ? { ...s, enabled: true }
        : { ...s, enabled: false, dialog: null, openMenu: null, held: false };
    }
    case "CursorMoved": {
      const x = Number(args[0]);
      const y = Number(args[1]);
      if (Number.isFinite(x) && Number.isFinite(y)) return { ...s, cursor: { x, y } };
      return s;
    }
    case "Click":
      return { ...s, clicks: s.clicks + 1 };
    case "MouseDown":
      return { ...s, held: true };
    case "MouseUp":
      return { ...s, held: false };
    case "MenuSelected": {
      const name = str(args[0]);
      return { ...s, openMenu: name, highlight: 0 };
    }
    case "NavUp": {
      const items = menuItems(s.openMenu);
      if (!items.length) return s;
      return { ...s, highlight: (s.highlight + items.length - 1) % items.length };
    }
    case "NavDown": {
      const items = menuItems(s.openMenu);
      if (!items.length) return s;
      return { ...s, highlight: (s.highlight + 1) % items.length };
    }
    case "Enter": {
      const items = menuItems(s.openMenu);
      if (!items.length) return s;
      return { ...s, activated: items[s.highlight], openMenu: null, highlight: 0 };
    }
    case "ConfirmRequested":
      return { ...s, dialog: { label: str(args[0]) } };
    case "AppLaunched":
      return {
        ...s,
        dialog: null,
        launched: { label: str(args[0]), target: str(args[1] ?? "") },
      };
    case "Cancelled":
      return { ...s, dialog: null };
    case "FaceLost":
    case "FaceFound":
      return s; // the state message carries the face box itself
    default:
      return s;
  }
}

/** Fold one server message into the UI state. */
export function reduce(s: UiState, msg: ServerMsg): UiState {
  switch (msg.type) {
    case "event": {
      const line = [String(msg.seq), msg.kind, ...msg.args.map(str)].join(" ");
      const next = reduceEvent(s, msg.kind, msg.args);
      return { ...next, seq: Math.max(s.seq, msg.seq), log: pushLog(s, line) };
    }
    case "state":
      return {
        ...s,
        cursor: msg.cursor,
        face: msg.face,
        enabled: msg.enabled,
        awaiting: msg.awaiting,
        seq: msg.seq,
        // a vanished pending confirmation closes a stale dialog
        dialog: msg.awaiting === null ? null : s.dialog,
      };
    case "registry":
      return { ...s, registry: msg.apps };
    case "error":
      return {
        ...s,
        lastError: { code: msg.code, message: msg.message },
        log: pushLog(s, `error ${msg.code}: ${msg.message}`),
      };
  }
}

export function onOpen(s: UiState): UiState {
  return { ...s, connection: "open", frozen: false, lastError: null };
}

/** Lost socket: freeze the desktop under a banner until reconnect. */
export function onDisconnect(s: UiState): UiState {
  return { ...s, connection: "closed", frozen: true };
}
