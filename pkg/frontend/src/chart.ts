/** Bounds chart: volume curve, envelope and sweep lower bounds, and the
 * session's embedding markers, all positioned from server decimals.
 * Hovering a point shows the exact values via <title>. */

import { plotValue, radicalString, truncateDecimal } from "./format";
import type { BoundsResponse, EmbeddingJson } from "./types";

export interface ChartOptions {
  width?: number;
  height?: number;
  precision?: number;
}

interface Pt {
  x: number;
  y: number;
  title: string;
  cls: string;
}

export function renderBoundsChart(bounds: BoundsResponse, opts: ChartOptions = {}): string {
  const width = opts.width ?? 640;
  const height = opts.height ?? 360;
  const precision = opts.precision ?? 8;

  const volume = bounds.volume.map((v) => ({
    x: plotValue(v.z_decimal),
    y: plotValue(v.value),
    title: `vol at z=${truncateDecimal(v.z_decimal, precision)}: ${truncateDecimal(v.value, precision)}`,
    cls: "volume",
  }));
  const sweep = toPoints(bounds.sweep, "sweep", precision);
  const envelope = toPoints(bounds.envelope, "envelope", precision);
  const markers: Pt[] = bounds.embeddings.map((e) => ({
    x: plotValue(e.z_decimal),
    y: plotValue(e.lambda_decimal),
    title: embedTitle(e, precision),
    cls: "embedding",
  }));

  const all = [...volume, ...sweep, ...envelope, ...markers];
  if (all.length === 0) {
    return `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="bounds-chart"><text x="10" y="20">no data</text></svg>`;
  }
  const xs = all.map((p) => p.x);
  const ys = all.map((p) => p.y);
  const xLo = Math.min(...xs);
  const xHi = Math.max(...xs);
  const yLo = Math.min(...ys);
  const yHi = Math.max(...ys);
  const padX = (xHi - xLo || 1) * 0.05;
  const padY = (yHi - yLo || 1) * 0.1;
  const sx = (x: number) => ((x - xLo + padX) / (xHi - xLo + 2 * padX)) * width;
  const sy = (y: number) => height - ((y - yLo + padY) / (yHi - yLo + 2 * padY)) * height;

  const parts = [
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${width} ${height}" class="bounds-chart">`,
  ];
  const volPath = volume.map((p, i) => `${i ? "L" : "M"}${sx(p.x)},${sy(p.y)}`).join(" ");
  if (volPath) {
    parts.push(`<path d="${volPath}" fill="none" stroke="#e8962e" stroke-width="1.5" class="volume-curve"/>`);
  }
  for (const p of sweep) {
    parts.push(dot(sx(p.x), sy(p.y), 2.5, "#3b74b8", p.cls, p.title));
  }
  for (const p of envelope) {
    parts.push(dot(sx(p.x), sy(p.y), 2, "#274e13", p.cls, p.title));
  }
  for (const p of markers) {
    const x = sx(p.x);
    const y = sy(p.y);
    parts.push(
      `<g class="embedding-marker"><path d="M${x - 5},${y - 5} L${x + 5},${y + 5} M${x - 5},${y + 5} L${x + 5},${y - 5}" ` +
        `stroke="#c0392b" stroke-width="2"/><title>${escapeXml(p.title)}</title></g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}

function toPoints(
  samples: BoundsResponse["sweep"],
  cls: string,
  precision: number,
): Pt[] {
  const out: Pt[] = [];
  for (const s of samples) {
    if (s.lambda === null || s.lambda_decimal === undefined) {
      continue; // volume-only sentinel: the curve itself is the bound
    }
    const suffix = s.kind === "volume-comparison" ? " (volume bound binding)" : "";
    out.push({
      x: plotValue(s.z_decimal),
      y: plotValue(s.lambda_decimal),
      title:
        `${cls} ${s.kind} [${s.label}] at z=${radicalString(s.z)}: ` +
        `λ=${radicalString(s.lambda)} ≈ ${truncateDecimal(s.lambda_decimal, precision)}${suffix}`,
      cls,
    });
  }
  return out;
}

function embedTitle(e: EmbeddingJson, precision: number): string {
  return (
    `embedding ${e.label}: z=${radicalString(e.z)} ≈ ${truncateDecimal(e.z_decimal, precision)}, ` +
    `λ=${radicalString(e.lambda)} ≈ ${truncateDecimal(e.lambda_decimal, precision)}`
  );
}

function dot(x: number, y: number, r: number, fill: string, cls: string, title: string): string {
  return `<circle cx="${x}" cy="${y}" r="${r}" fill="${fill}" class="${cls}"><title>${escapeXml(title)}</title></circle>`;
}

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}
