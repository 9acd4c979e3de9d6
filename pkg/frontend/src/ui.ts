/** DOM rendering and input wiring.
 *
 * Everything visual is re-rendered from UiState after each change; the
 * handlers below only ever send client messages or adjust local capture
 * settings, never mutate UiState directly.
 */

import type { EngineClient } from "./client.js";
import { DEMO_MENUS, type UiState } from "./core.js";
import {
  backgroundBytes,
  bytesToBase64,
  clampCenter,
  DEFAULT_SCENE,
  sceneBytes,
  type SyntheticScene,
} from "./synth.js";

const CAPTURE_W = 160;
const CAPTURE_H = 120;

interface CaptureState {
  mode: "synthetic" | "camera";
  scene: SyntheticScene;
  cx: number;
  cy: number;
  /** outgoing frames per second */
  rate: number;
  video: HTMLVideoElement | null;
  running: boolean;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  cls?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (cls) node.className = cls;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function mountApp(root: HTMLElement, client: EngineClient): void {
  root.innerHTML = "";

  const banner = el("div", "banner hidden");
  const layout = el("div", "layout");
  const left = el("div", "pane");
  const right = el("div", "pane");
  layout.append(left, right);
  root.append(banner, layout);

  // -- capture preview ------------------------------------------------
  const preview = el("canvas", "preview") as HTMLCanvasElement;
  preview.width = DEFAULT_SCENE.width;
  preview.height = DEFAULT_SCENE.height;
  const modeNote = el("div", "mode-note", "synthetic scene (no camera)");
  const sliders = el("div", "sliders");
  const sx = el("input") as HTMLInputElement;
  const sy = el("input") as HTMLInputElement;
  for (const [slider, max, init] of [
    [sx, DEFAULT_SCENE.width, DEFAULT_SCENE.width / 2],
    [sy, DEFAULT_SCENE.height, DEFAULT_SCENE.height / 2],
  ] as const) {
    slider.type = "range";
    slider.min = "0";
    slider.max = String(max);
    slider.value = String(init);
  }
  sliders.append(el("span", undefined, "x"), sx, el("span", undefined, "y"), sy);
  const rateInput = el("input") as HTMLInputElement;
  rateInput.type = "number";
  rateInput.min = "1";
  rateInput.max = "30";
  rateInput.value = "15";
  const rateRow = el("div", "row");
  rateRow.append(el("span", undefined, "frames/s"), rateInput);
  const camBtn = el("button", undefined, "Use camera");
  const bgBtn = el("button", undefined, "Capture background");
  const calBtn = el("button", undefined, "Calibrate");
  left.append(
    el("h2", undefined, "Input"),
    preview,
    modeNote,
    sliders,
    rateRow,
    el("div", "row"),
  );
  const btnRow = left.lastChild as HTMLElement;
  btnRow.append(camBtn, bgBtn, calBtn);

  // -- phrase box -----------------------------------------------------
  const phraseRow = el("div", "row");
  const phraseInput = el("input") as HTMLInputElement;
  phraseInput.placeholder = "say a phrase, e.g. enable";
  const phraseBtn = el("button", undefined, "Send");
  phraseRow.append(phraseInput, phraseBtn);
  const speechBtn = el("button", undefined, "Voice input");
  left.append(el("h2", undefined, "Commands"), phraseRow, speechBtn);

  // -- virtual desktop ------------------------------------------------
  const desktop = el("div", "desktop");
  const menubar = el("div", "menubar");
  const menuEls = new Map<string, HTMLElement>();
  for (const menu of DEMO_MENUS) {
    const item = el("div", "menu", menu.name);
    const drop = el("div", "dropdown hidden");
    item.append(drop);
    menubar.append(item);
    menuEls.set(menu.name, item);
  }
  const cursorDot = el("div", "cursor");
  const dialog = el("div", "dialog hidden");
  const toast = el("div", "toast hidden");
  const statusLine = el("div", "status");
  desktop.append(menubar, cursorDot, dialog, toast);
  right.append(el("h2", undefined, "Desktop"), desktop, statusLine);

  // -- registry editor ------------------------------------------------
  const regList = el("ul", "registry");
  const regForm = el("div", "row");
  const regLabel = el("input") as HTMLInputElement;
  regLabel.placeholder = "label";
  const regTarget = el("input") as HTMLInputElement;
  regTarget.placeholder = "target";
  const regAdd = el("button", undefined, "Add");
  regForm.append(regLabel, regTarget, regAdd);
  right.append(el("h2", undefined, "Programs"), regList, regForm);

  const logBox = el("pre", "log");
  right.append(el("h2", undefined, "Events"), logBox);

  // -- capture loop ---------------------------------------------------
  const cap: CaptureState = {
    mode: "synthetic",
    scene: DEFAULT_SCENE,
    cx: DEFAULT_SCENE.width / 2,
    cy: DEFAULT_SCENE.height / 2,
    rate: 15,
    video: null,
    running: true,
  };

  sx.oninput = () => {
    cap.cx = Number(sx.value);
  };
  sy.oninput = () => {
    cap.cy = Number(sy.value);
  };
  rateInput.oninput = () => {
    const r = Number(rateInput.value);
    if (Number.isFinite(r) && r >= 1 && r <= 30) cap.rate = r;
  };

  const ctx = preview.getContext("2d");

  function drawSynthetic(bytes: Uint8Array) {
    if (!ctx) return;
    const img = ctx.createImageData(cap.scene.width, cap.scene.height);
    for (let i = 0, j = 0; i < bytes.length; i += 3, j += 4) {
      img.data[j] = bytes[i];
      img.data[j + 1] = bytes[i + 1];
      img.data[j + 2] = bytes[i + 2];
      img.data[j + 3] = 255;
    }
    ctx.putImageData(img, 0, 0);
  }

  function grabCamera(): Uint8Array | null {
    if (!ctx || !cap.video || cap.video.readyState < 2) return null;
    ctx.drawImage(cap.video, 0, 0, CAPTURE_W, CAPTURE_H);
    const img = ctx.getImageData(0, 0, CAPTURE_W, CAPTURE_H);
    const out = new Uint8Array(CAPTURE_W * CAPTURE_H * 3);
    for (let i = 0, j = 0; j < out.length; i += 4, j += 3) {
      out[j] = img.data[i];
      out[j + 1] = img.data[i + 1];
      out[j + 2] = img.data[i + 2];
    }
    return out;
  }

  function tick() {
    if (!cap.running) return;
    if (client.state.connection === "open") {
      if (cap.mode === "camera") {
        const bytes = grabCamera();
        if (bytes)
          client.sendFrame({
            type: "frame",
            w: CAPTURE_W,
            h: CAPTURE_H,
            data: bytesToBase64(bytes),
          });
      } else {
        const [cx, cy] = clampCenter(cap.scene, cap.cx, cap.cy);
        const bytes = sceneBytes(cap.scene, cx, cy);
        drawSynthetic(bytes);
        client.sendFrame({
          type: "frame",
          w: cap.scene.width,
          h: cap.scene.height,
          data: bytesToBase64(bytes),
        });
      }
    }
    window.setTimeout(tick, 1000 / cap.rate);
  }

  camBtn.onclick = async () => {
    if (cap.mode === "camera") return;
    try {
      const stream = await navigator.mediaDevices.getUserMedia({
        video: { width: CAPTURE_W, height: CAPTURE_H },
      });
      const video = document.createElement("video");
      video.srcObject = stream;
      await video.play();
      cap.video = video;
      cap.mode = "camera";
      preview.width = CAPTURE_W;
      preview.height = CAPTURE_H;
      modeNote.textContent = "camera";
      sliders.classList.add("hidden");
    } catch {
      modeNote.textContent = "camera unavailable, staying synthetic";
    }
  };

  bgBtn.onclick = () => {
    // send one empty-background frame, then mark it as the reference
    if (cap.mode === "synthetic") {
      const bytes = backgroundBytes(cap.scene);
      drawSynthetic(bytes);
      client.sendFrame({
        type: "frame",
        w: cap.scene.width,
        h: cap.scene.height,
        data: bytesToBase64(bytes),
      });
    }
    client.setBackground();
  };
  calBtn.onclick = () => client.calibrate();

  const sendPhrase = () => {
    const text = phraseInput.value.trim();
    if (!text) return;
    client.sendPhrase(text);
    phraseInput.value = "";
  };
  phraseBtn.onclick = sendPhrase;
  phraseInput.onkeydown = (ev) => {
    if (ev.key === "Enter") sendPhrase();
  };

  // speech recognition is sugar; the text box is the contract
  const SR =
    (window as unknown as { SpeechRecognition?: new () => unknown })
      .SpeechRecognition ??
    (window as unknown as { webkitSpeechRecognition?: new () => unknown })
      .webkitSpeechRecognition;
  if (!SR) {
    speechBtn.disabled = true;
    speechBtn.title = "speech recognition not available in this browser";
  } else {
    speechBtn.onclick = () => {
      const rec = new SR() as {
        continuous: boolean;
        onresult: (ev: {
          results: ArrayLike<ArrayLike<{ transcript: string }>>;
          resultIndex: number;
        }) => void;
        start: () => void;
      };
      rec.continuous = true;
      rec.onresult = (ev) => {
        const alt = ev.results[ev.resultIndex]?.[0];
        if (alt) client.sendPhrase(alt.transcript);
      };
      rec.start();
      speechBtn.disabled = true;
    };
  }

  regAdd.onclick = () => {
    const label = regLabel.value.trim();
    const target = regTarget.value.trim();
    if (!label || !target) return;
    client.registryAdd(label, target);
    regLabel.value = "";
    regTarget.value = "";
  };

  // -- render ---------------------------------------------------------
  function render(s: UiState) {
    banner.textContent = "connection lost, desktop frozen";
    banner.classList.toggle("hidden", !s.frozen);
    desktop.classList.toggle("frozen", s.frozen);

    const px = (s.cursor.x / s.screen.w) * desktop.clientWidth;
    const py = (s.cursor.y / s.screen.h) * desktop.clientHeight;
    cursorDot.style.left = `${px}px`;
    cursorDot.style.top = `${py}px`;
    cursorDot.classList.toggle("held", s.held);

    for (const menu of DEMO_MENUS) {
      const item = menuEls.get(menu.name);
      if (!item) continue;
      const open = s.openMenu === menu.name;
      item.classList.toggle("open", open);
      const drop = item.querySelector(".dropdown") as HTMLElement;
      drop.classList.toggle("hidden", !open);
      if (open) {
        drop.innerHTML = "";
        menu.items.forEach((label, i) => {
          drop.append(
            el("div", i === s.highlight ? "item hl" : "item", label),
          );
        });
      }
    }

    if (s.dialog) {
      dialog.classList.remove("hidden");
      dialog.textContent = `Open "${s.dialog.label}"? say yes or no`;
    } else {
      dialog.classList.add("hidden");
    }

    if (s.launched) {
      toast.classList.remove("hidden");
      toast.textContent = `launched ${s.launched.label} -> ${s.launched.target}`;
    } else {
      toast.classList.add("hidden");
    }

    statusLine.textContent = [
      s.connection,
      s.enabled ? "enabled" : "disabled",
      s.face ? `face ${s.face.w}x${s.face.h}` : "no face",
      s.activated ? `activated: ${s.activated}` : "",
      `clicks ${s.clicks}`,
    ]
      .filter(Boolean)
      .join(" | ");

    regList.innerHTML = "";
    for (const app of s.registry) {
      const row = el("li");
      row.append(el("span", "label", app.label), el("span", "target", app.target));
      const rm = el("button", undefined, "remove");
      rm.onclick = () => client.registryRemove(app.label);
      row.append(rm);
      regList.append(row);
    }

    logBox.textContent = s.log.slice(-20).join("\n");

    // face overlay on the preview, scaled canvas -> css pixels
    if (ctx && s.face && cap.mode === "synthetic") {
      ctx.strokeStyle = "#00e000";
      ctx.lineWidth = 1;
      ctx.strokeRect(s.face.x + 0.5, s.face.y + 0.5, s.face.w, s.face.h);
    }
  }

  client.onChange = render;
  render(client.state);
  tick();
}
