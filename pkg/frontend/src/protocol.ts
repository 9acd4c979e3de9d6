/** Wire types for the /session WebSocket.
 *
 * One JSON object per text message, discriminated by "type". These
 * mirror the service protocol exactly; the UI never invents fields.
 */

export interface FrameMsg {
  type: "frame";
  w: number;
  h: number;
  /** base64 of w*h*3 RGB bytes, row-major */
  data: string;
}

export interface PhraseMsg {
  type: "phrase";
  text: string;
}

export interface CalibrateMsg {
  type: "calibrate";
}

export interface SetBackgroundMsg {
  type: "set_background";
}

export interface ConfigMsg {
  type: "config";
  cursor?: Record<string, number | boolean>;
  seg?: Record<string, number | boolean | null>;
  skin?: Record<string, number>;
}

export interface RegistryAddMsg {
  type: "registry_add";
  label: string;
  target: string;
}

export interface RegistryRemoveMsg {
  type: "registry_remove";
  label: string;
}

export interface RegistryListMsg {
  type: "registry_list";
}

export type ClientMsg =
  | FrameMsg
  | PhraseMsg
  | CalibrateMsg
  | SetBackgroundMsg
  | ConfigMsg
  | RegistryAddMsg
  | RegistryRemoveMsg
  | RegistryListMsg;

export interface FaceBox {
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface EventMsg {
  type: "event";
  seq: number;
  kind: string;
  args: unknown[];
}

export interface StateMsg {
  type: "state";
  cursor: { x: number; y: number };
  face: FaceBox | null;
  enabled: boolean;
  awaiting: string | null;
  seq: number;
}

export interface RegistryApp {
  label: string;
  target: string;
}

export interface RegistryMsg {
  type: "registry";
  apps: RegistryApp[];
}

export interface ErrorMsg {
  type: "error";
  code: string;
  message: string;
}

export type ServerMsg = EventMsg | StateMsg | RegistryMsg | ErrorMsg;

const SERVER_TYPES = new Set(["event", "state", "registry", "error"]);

/** Parse one incoming text frame; null for anything off-protocol. */
export function parseServerMsg(raw: string): ServerMsg | null {
  let doc: unknown;
  try {
    doc = JSON.parse(raw);
  } catch {
    return null;
  }
  if (typeof doc !== "object" || doc === null) return null;
  const type = (doc as { type?: unknown }).type;
  if (typeof type !== "string" || !SERVER_TYPES.has(type)) return null;
  return doc as ServerMsg;
}
