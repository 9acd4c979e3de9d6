/** Synthetic scene frames for camera-free operation.
 *
 * A flat background with one filled skin-color ellipse whose center the
 * user drags with sliders. Pixel (x, y) is inside the ellipse iff
 * ((x-cx)/rx)^2 + ((y-cy)/ry)^2 <= 1, matching the engine's own
 * generator so the detected box lands exactly on the drawn shape.
 */

import type { FrameMsg } from "./protocol.js";

export interface SyntheticScene {
  width: number;
  height: number;
  bg: [number, number, number];
  skin: [number, number, number];
  rx: number;
  ry: number;
}

export const DEFAULT_SCENE: SyntheticScene = {
  width: 160,
  height: 120,
  bg: [20, 40, 160],
  skin: [224, 172, 105],
  rx: 14.5,
  ry: 18.5,
};

/** Row-major RGB bytes of the scene with the ellipse at (cx, cy). */
export function sceneBytes(scene: SyntheticScene, cx: number, cy: number): Uint8Array {
  const { width, height, bg, skin, rx, ry } = scene;
  const out = new Uint8Array(width * height * 3);
  for (let y = 0; y < height; y++) {
    const dy = (y - cy) / ry;
    const dy2 = dy * dy;
    for (let x = 0; x < width; x++) {
      const dx = (x - cx) / rx;
      const c = dx * dx + dy2 <= 1 ? skin : bg;
      const i = (y * width + x) * 3;
      out[i] = c[0];
      out[i + 1] = c[1];
      out[i + 2] = c[2];
    }
  }
  return out;
}

/** Background-only frame (no ellipse anywhere). */
export function backgroundBytes(scene: SyntheticScene): Uint8Array {
  const { width, height, bg } = scene;
  const out = new Uint8Array(width * height * 3);
  for (let i = 0; i < out.length; i += 3) {
    out[i] = bg[0];
    out[i + 1] = bg[1];
    out[i + 2] = bg[2];
  }
  return out;
}

/** Clamp a requested center so the ellipse stays fully inside the frame. */
export function clampCenter(scene: SyntheticScene, cx: number, cy: number): [number, number] {
  const x = Math.min(Math.max(cx, scene.rx), scene.width - 1 - scene.rx);
  const y = Math.min(Math.max(cy, scene.ry), scene.height - 1 - scene.ry);
  return [x, y];
}

// node fallback without dragging node typings into browser code
declare const Buffer: {
  from(bytes: Uint8Array): { toString(encoding: "base64"): string };
};

/** base64 without assuming a browser (btoa) or node (Buffer) alone. */
export function bytesToBase64(bytes: Uint8Array): string {
  if (typeof btoa === "function") {
    let bin = "";
    const chunk = 0x8000; // avoid call-stack limits on large frames
    for (let i = 0; i < bytes.length; i += chunk) {
      bin += String.fromCharCode(...bytes.subarray(i, i + chunk));
    }
    return btoa(bin);
  }
  // node
  return Buffer.from(bytes).toString("base64");
}

export function frameMsg(scene: SyntheticScene, bytes: Uint8Array): FrameMsg {
  return {
    type: "frame",
    w: scene.width,
    h: scene.height,
    data: bytesToBase64(bytes),
  };
}
