/** Entry point: connect to the engine and mount the app, reconnecting
 * with a small backoff when the socket drops. */

import { EngineClient, type SocketLike } from "./client.js";
import { mountApp } from "./ui.js";

const RETRY_MS = 2000;

function socketUrl(): string {
  const proto = location.protocol === "https:" ? "wss" : "ws";
  return `${proto}://${location.host}/session`;
}

function boot() {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");

  const connect = () => {
    const sock = new WebSocket(socketUrl()) as unknown as SocketLike;
    const client = new EngineClient(sock);
    sock.onclose = () => {
      client.state = { ...client.state, connection: "closed", frozen: true };
      if (client.onChange) client.onChange(client.state);
      setTimeout(connect, RETRY_MS);
    };
    const origOpen = sock.onopen;
    sock.onopen = (ev) => {
      if (origOpen) origOpen(ev);
      client.registryList(); // populate the program list right away
    };
    mountApp(root, client);
  };
  connect();
}

document.addEventListener("DOMContentLoaded", boot);
