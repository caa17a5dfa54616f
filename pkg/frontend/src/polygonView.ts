/** Interactive SVG scene for a polygon payload.
 *
 * Vertices are labeled O/Y/V/X; X, Y, V are clickable (data-vertex
 * attributes picked up by the app shell); nodal rays are dashed light
 * blue with a square marked point; each side shows its affine length as
 * a radical expression plus a decimal at the selected precision.  All
 * coordinates come from the server-rendered decimal strings.
 */

import { plotValue, truncateDecimal } from "./format";
import type { PolygonResponse, VertexLabel } from "./types";

export interface RenderOptions {
  size?: number;
  precision?: number;
}

const RAY_FRACTION = 0.18;

export function renderPolygon(payload: PolygonResponse, opts: RenderOptions = {}): string {
  const size = opts.size ?? 420;
  const precision = opts.precision ?? 6;
  const { polygon, display } = payload;
  if (!polygon || !display || polygon.nodes.length !== display.vertex_decimals.length) {
    return errorBanner("malformed polygon payload");
  }
  const pts = display.vertex_decimals.map(([x, y]) => [plotValue(x), plotValue(y)]);
  if (pts.some(([x, y]) => !Number.isFinite(x) || !Number.isFinite(y))) {
    return errorBanner("malformed polygon payload");
  }
  const xs = pts.map((p) => p[0]!);
  const ys = pts.map((p) => p[1]!);
  const span = Math.max(Math.max(...xs) - Math.min(...xs), Math.max(...ys) - Math.min(...ys), 1);
  const margin = span * 0.3;
  const lo = Math.min(Math.min(...xs), Math.min(...ys)) - margin;
  const hi = Math.max(Math.max(...xs), Math.max(...ys)) + margin;
  const scale = size / (hi - lo);
  const toScreen = (x: number, y: number): [number, number] => [
    (x - lo) * scale,
    size - (y - lo) * scale,
  ];

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${size} ${size}" class="polygon-scene">`,
  ];
  const ring = pts.map(([x, y]) => toScreen(x!, y!).join(",")).join(" ");
  parts.push(`<polygon points="${ring}" fill="#eef4fb" stroke="#1f4e79" stroke-width="1.5"/>`);

  const labelByIndex = new Map<number, VertexLabel>();
  for (const [label, idx] of Object.entries(display.labels)) {
    labelByIndex.set(idx, label as VertexLabel);
  }
  const rayLen = span * RAY_FRACTION;
  polygon.nodes.forEach((node, i) => {
    const [px, py] = pts[i]!;
    const [sx, sy] = toScreen(px!, py!);
    const label = labelByIndex.get(i) ?? "V";
    if (node.ray) {
      const norm = Math.hypot(node.ray[0], node.ray[1]);
      const ex = px! + (node.ray[0] / norm) * rayLen;
      const ey = py! + (node.ray[1] / norm) * rayLen;
      const [tx, ty] = toScreen(ex, ey);
      parts.push(
        `<line x1="${sx}" y1="${sy}" x2="${tx}" y2="${ty}" stroke="#67a3d9" ` +
          `stroke-width="1.2" stroke-dasharray="6,4" class="nodal-ray"/>`,
      );
      const mx = (sx + tx) / 2;
      const my = (sy + ty) / 2;
      parts.push(
        `<rect x="${mx - 3}" y="${my - 3}" width="6" height="6" fill="#67a3d9" class="marked-point"/>`,
      );
    }
    const clickable = label !== "O";
    parts.push(
      `<circle cx="${sx}" cy="${sy}" r="6" fill="${clickable ? "#1f4e79" : "#777"}"` +
        (clickable ? ` data-vertex="${label.toLowerCase()}" class="vertex-handle"` : "") +
        `><title>${label}</title></circle>`,
    );
    parts.push(
      `<text x="${sx + 9}" y="${sy - 9}" font-size="14" fill="#1f4e79">${label}</text>`,
    );
  });

  const sideAnchor: Record<string, VertexLabel> = { OY: "O", YV: "Y", XV: "V", OX: "X" };
  for (const [side, from] of Object.entries(sideAnchor)) {
    const pretty = display.side_pretty[side];
    const dec = display.side_decimals[side];
    if (pretty === undefined || dec === undefined) {
      continue;
    }
    const i = display.labels[from];
    const j = (i + 1) % pts.length;
    const [ax, ay] = pts[i]!;
    const [bx, by] = pts[j]!;
    const [sx, sy] = toScreen((ax! + bx!) / 2, (ay! + by!) / 2);
    parts.push(
      `<text x="${sx + 4}" y="${sy - 4}" font-size="11" fill="#555" class="side-length">` +
        `|${side}| = ${escapeXml(pretty)} ≈ ${truncateDecimal(dec, precision)}</text>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}

export function errorBanner(message: string): string {
  return `<div class="error-banner" role="alert">render error: ${escapeXml(message)}</div>`;
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
