/** Named theme tokens. Section hues and deviation colors are fixed; the
 * score rings share one linear color scale across human and predicted
 * values. */

import type { Section } from "./types.js";

export const SECTION_COLORS: Record<Section, string> = {
  EB: "#A380B9", // purple
  Com: "#E0A142", // orange
  Ho: "#51A6AB", // teal
  ExA: "#87CC4C", // green
};

export const DEVIATION_COLORS = {
  Higher: "#4A93FF",
  Lower: "#FA8181",
  Close: "#606266",
} as const;

export type DeviationLabel = keyof typeof DEVIATION_COLORS;

const SCALE_LOW = { r: 0xe8, g: 0xf0, b: 0xf7 };
const SCALE_HIGH = { r: 0x0b, g: 0x48, b: 0x8a };

const SCORE_MIN = 0.5;
const SCORE_MAX = 5.5;

/** One linear color scale over the score interval, used by BOTH glyph
 * rings and the centroid dots. */
export function scoreColor(value: number): string {
  const clamped = Math.min(Math.max(value, SCORE_MIN), SCORE_MAX);
  const t = (clamped - SCORE_MIN) / (SCORE_MAX - SCORE_MIN);
  const channel = (lo: number, hi: number) => Math.round(lo + (hi - lo) * t);
  const r = channel(SCALE_LOW.r, SCALE_HIGH.r);
  const g = channel(SCALE_LOW.g, SCALE_HIGH.g);
  const b = channel(SCALE_LOW.b, SCALE_HIGH.b);
  return `rgb(${r}, ${g}, ${b})`;
}
