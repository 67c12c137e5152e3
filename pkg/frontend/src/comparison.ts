/** Comparison view: one glyph per scored application at its 2-D layout
 * position. The outer ring encodes the human score and the inner ring the
 * model prediction on one shared linear color scale; the ID text color
 * carries the deviation class. Solid centroid dots (one per present score)
 * are connected lowest to highest, and hovering a glyph or centroid
 * highlights every application with that human score. */

import { fmtInt } from "./format.js";
import type { ViewState } from "./state.js";
import { DEVIATION_COLORS, scoreColor } from "./theme.js";
import type { LayoutResponse, SummaryResponse } from "./types.js";

const W = 640;
const H = 560;
const PAD = 40;

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS("http://www.w3.org/2000/svg", tag);
}

function fitter(layout: LayoutResponse): (p: [number, number]) => [number, number] {
  const points = [...Object.values(layout.positions), ...Object.values(layout.centroids)];
  const xs = points.map((p) => p[0]);
  const ys = points.map((p) => p[1]);
  const [xLo, xHi] = [Math.min(...xs), Math.max(...xs)];
  const [yLo, yHi] = [Math.min(...ys), Math.max(...ys)];
  const xSpan = xHi - xLo || 1;
  const ySpan = yHi - yLo || 1;
  return ([x, y]) => [
    PAD + ((x - xLo) / xSpan) * (W - 2 * PAD),
    PAD + ((y - yLo) / ySpan) * (H - 2 * PAD),
  ];
}

export function renderComparisonView(
  container: HTMLElement,
  layout: LayoutResponse | null,
  summary: SummaryResponse,
  state: ViewState,
): void {
  container.innerHTML = "";
  container.classList.add("comparison-view");

  if (summary.model_version == null || layout == null) {
    const guidance = document.createElement("div");
    guidance.className = "guidance";
    guidance.textContent =
      "Train the preference model from the table to compare your scores with its predictions.";
    container.appendChild(guidance);
    return;
  }

  const humanOf = new Map(summary.rows.map((r) => [r.app_id, r.scores[summary.section]]));
  const predictionOf = new Map(summary.rows.map((r) => [r.app_id, r.mitigate ?? 0]));
  const labelOf = new Map(summary.deviations.map((d) => [d.app_id, d.label]));

  const svg = svgEl("svg");
  svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
  svg.setAttribute("class", "comparison-canvas");
  const fit = fitter(layout);

  const setHighlight = (score: number | null) => {
    for (const glyph of Array.from(svg.querySelectorAll<SVGGElement>(".glyph"))) {
      const same = score != null && Number(glyph.dataset.score) === score;
      glyph.classList.toggle("same-score-highlight", same);
    }
  };

  if (layout.polyline.length >= 2) {
    const path = svgEl("polyline");
    path.setAttribute(
      "points",
      layout.polyline
        .map((score) => fit(layout.centroids[String(score)]).map((c) => c.toFixed(1)).join(","))
        .join(" "),
    );
    path.setAttribute("class", "centroid-polyline");
    path.setAttribute("fill", "none");
    svg.appendChild(path);
  }

  for (const [key, position] of Object.entries(layout.positions)) {
    const appId = Number(key);
    const human = humanOf.get(appId) ?? 0;
    if (human === 0) continue;
    const [cx, cy] = fit(position);
    const glyph = svgEl("g");
    glyph.setAttribute("class", "glyph");
    glyph.dataset.appId = key;
    glyph.dataset.score = String(human);
    if (state.selectedApp === appId) glyph.classList.add("selected-glyph");

    const outer = svgEl("circle");
    outer.setAttribute("cx", String(cx));
    outer.setAttribute("cy", String(cy));
    outer.setAttribute("r", "13");
    outer.setAttribute("class", "ring-human");
    outer.setAttribute("fill", scoreColor(human));
    glyph.appendChild(outer);

    const inner = svgEl("circle");
    inner.setAttribute("cx", String(cx));
    inner.setAttribute("cy", String(cy));
    inner.setAttribute("r", "8");
    inner.setAttribute("class", "ring-prediction");
    inner.setAttribute("fill", scoreColor(predictionOf.get(appId) ?? 0));
    glyph.appendChild(inner);

    const id = svgEl("text");
    id.setAttribute("x", String(cx));
    id.setAttribute("y", String(cy + 3));
    id.setAttribute("text-anchor", "middle");
    id.setAttribute("class", "glyph-id");
    id.setAttribute("fill", DEVIATION_COLORS[labelOf.get(appId) ?? "Close"]);
    id.textContent = fmtInt(appId);
    glyph.appendChild(id);

    glyph.addEventListener("mouseenter", () => setHighlight(human));
    glyph.addEventListener("mouseleave", () => setHighlight(null));
    svg.appendChild(glyph);
  }

  for (const [scoreKey, position] of Object.entries(layout.centroids)) {
    const score = Number(scoreKey);
    const [cx, cy] = fit(position);
    const dot = svgEl("circle");
    dot.setAttribute("cx", String(cx));
    dot.setAttribute("cy", String(cy));
    dot.setAttribute("r", "6");
    dot.setAttribute("class", "centroid-dot");
    dot.dataset.score = scoreKey;
    dot.setAttribute("fill", scoreColor(score));
    dot.addEventListener("mouseenter", () => setHighlight(score));
    dot.addEventListener("mouseleave", () => setHighlight(null));
    svg.appendChild(dot);
  }

  container.appendChild(svg);
}
