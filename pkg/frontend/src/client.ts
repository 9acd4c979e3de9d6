/** Engine connection: a thin WebSocket wrapper that feeds the reducer.
 *
 * Uses only the standard browser WebSocket surface (onopen/onmessage/
 * onclose/send), so a Node `ws` instance works interchangeably in tests.
 */

import {
  initialUiState,
  onDisconnect,
  onOpen,
  reduce,
  type UiState,
} from "./core.js";
import {
  parseServerMsg,
  type ClientMsg,
  type ConfigMsg,
  type FrameMsg,
  type ServerMsg,
} from "./protocol.js";

/** minimal socket shape shared by browser WebSocket and the ws package */
export interface SocketLike {
  onopen: ((ev?: unknown) => void) | null;
  onmessage: ((ev: { data: unknown }) => void) | null;
  onclose: ((ev?: unknown) => void) | null;
  onerror: ((ev?: unknown) => void) | null;
  send(data: string): void;
  close(): void;
  readyState: number;
}

export class EngineClient {
  state: UiState = initialUiState();
  onChange: ((s: UiState) => void) | null = null;
  /** raw tap for tests and debugging, called before the reducer */
  onMessage: ((msg: ServerMsg) => void) | null = null;

  private sock: SocketLike;

  constructor(sock: SocketLike) {
    this.sock = sock;
    sock.onopen = () => this.update(onOpen(this.state));
    sock.onclose = () => this.update(onDisconnect(this.state));
    sock.onerror = () => {};
    sock.onmessage = (ev) => {
      const msg = parseServerMsg(String(ev.data));
      if (!msg) return;
      if (this.onMessage) this.onMessage(msg);
      this.update(reduce(this.state, msg));
    };
  }

  private update(next: UiState) {
    this.state = next;
    if (this.onChange) this.onChange(next);
  }

  send(msg: ClientMsg) {
    if (this.sock.readyState !== 1) return; // 1 == OPEN
    this.sock.send(JSON.stringify(msg));
  }

  sendFrame(frame: FrameMsg) {
    this.send(frame);
  }

  sendPhrase(text: string) {
    this.send({ type: "phrase", text });
  }

  calibrate() {
    this.send({ type: "calibrate" });
  }

  setBackground() {
    this.send({ type: "set_background" });
  }

  sendConfig(cfg: Omit<ConfigMsg, "type">) {
    this.send({ type: "config", ...cfg });
  }

  registryAdd(label: string, target: string) {
    this.send({ type: "registry_add", label, target });
  }

  registryRemove(label: string) {
    this.send({ type: "registry_remove", label });
  }

  registryList() {
    this.send({ type: "registry_list" });
  }

  close() {
    this.sock.close();
  }
}
