/** Display formatting of exact values.  Pure string manipulation: the
 * radical form is assembled from the JSON fields, and decimals arriving
 * from the server are truncated to the selected precision. */

import type { QuadNumJson } from "./types";

/** Radical form like "(54+11√30)/14" from the exact JSON encoding. */
export function radicalString(v: QuadNumJson): string {
  const [an, ad] = v.a;
  const [bn, bd] = v.b;
  if (bn === "0") {
    return ad === "1" ? an : `${an}/${ad}`;
  }
  // common denominator is a display choice; keep the two fractions verbatim
  const root = `√${v.D}`;
  const aPart = an === "0" ? "" : ad === "1" ? an : `${an}/${ad}`;
  const bAbs = bn.startsWith("-") ? bn.slice(1) : bn;
  const bCoeff = bd === "1" ? (bAbs === "1" ? "" : bAbs) : `${bAbs}/${bd}·`;
  const bPart = `${bCoeff}${root}`;
  if (!aPart) {
    return bn.startsWith("-") ? `-${bPart}` : bPart;
  }
  return bn.startsWith("-") ? `${aPart} - ${bPart}` : `${aPart} + ${bPart}`;
}

/** Truncate a decimal string (never rounds, so directed bounds stay safe). */
export function truncateDecimal(dec: string, digits: number): string {
  const dot = dec.indexOf(".");
  if (dot < 0 || digits <= 0) {
    return dot < 0 ? dec : dec.slice(0, dot);
  }
  return dec.slice(0, Math.min(dec.length, dot + 1 + digits));
}

/** parseFloat for plotting; display always uses the string forms. */
export function plotValue(dec: string): number {
  return Number.parseFloat(dec);
}
