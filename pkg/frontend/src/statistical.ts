/** Statistical sidebar: one card per indicator, each overlaying a density
 * curve, a box plot band, and a dot marking the selected applicant. */

import { fmtStat } from "./format.js";
import type { IndicatorPayload, StatsResponse } from "./types.js";

const W = 220;
const H = 64;
const PAD = 8;
const BOX_Y = H - 14;

function xScale(ind: IndicatorPayload): (v: number) => number {
  const lo = Math.min(ind.box.min, ind.density.grid[0] ?? ind.box.min);
  const hi = Math.max(ind.box.max, ind.density.grid[ind.density.grid.length - 1] ?? ind.box.max);
  const span = hi - lo || 1;
  return (v: number) => PAD + ((v - lo) / span) * (W - 2 * PAD);
}

function svgEl<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS("http://www.w3.org/2000/svg", tag);
}

function densityPath(ind: IndicatorPayload, x: (v: number) => number): string {
  const peak = Math.max(...ind.density.density, 1e-12);
  const points = ind.density.grid.map((g, i) => {
    const y = BOX_Y - 6 - (ind.density.density[i] / peak) * (H - 30);
    return `${x(g).toFixed(1)},${y.toFixed(1)}`;
  });
  return `M${points.join(" L")}`;
}

function renderCard(ind: IndicatorPayload): HTMLElement {
  const card = document.createElement("div");
  card.className = "indicator-card";
  card.dataset.indicator = ind.name;

  const title = document.createElement("div");
  title.className = "indicator-title";
  title.textContent = ind.name;
  card.appendChild(title);

  const svg = svgEl("svg");
  svg.setAttribute("viewBox", `0 0 ${W} ${H}`);
  svg.setAttribute("class", "indicator-plot");
  const x = xScale(ind);

  const curve = svgEl("path");
  curve.setAttribute("d", densityPath(ind, x));
  curve.setAttribute("class", "density-curve");
  curve.setAttribute("fill", "none");
  svg.appendChild(curve);

  const whisker = svgEl("line");
  whisker.setAttribute("x1", String(x(ind.box.lower_whisker)));
  whisker.setAttribute("x2", String(x(ind.box.upper_whisker)));
  whisker.setAttribute("y1", String(BOX_Y));
  whisker.setAttribute("y2", String(BOX_Y));
  whisker.setAttribute("class", "box-whisker");
  svg.appendChild(whisker);

  const box = svgEl("rect");
  box.setAttribute("x", String(x(ind.box.q1)));
  box.setAttribute("width", String(Math.max(x(ind.box.q3) - x(ind.box.q1), 1)));
  box.setAttribute("y", String(BOX_Y - 5));
  box.setAttribute("height", "10");
  box.setAttribute("class", "box-iqr");
  svg.appendChild(box);

  const median = svgEl("line");
  median.setAttribute("x1", String(x(ind.box.median)));
  median.setAttribute("x2", String(x(ind.box.median)));
  median.setAttribute("y1", String(BOX_Y - 5));
  median.setAttribute("y2", String(BOX_Y + 5));
  median.setAttribute("class", "box-median");
  svg.appendChild(median);

  for (const outlier of ind.box.outliers) {
    const dot = svgEl("circle");
    dot.setAttribute("cx", String(x(outlier)));
    dot.setAttribute("cy", String(BOX_Y));
    dot.setAttribute("r", "1.6");
    dot.setAttribute("class", "box-outlier");
    svg.appendChild(dot);
  }

  if (ind.highlight != null) {
    const dot = svgEl("circle");
    dot.setAttribute("cx", String(x(ind.highlight)));
    dot.setAttribute("cy", String(BOX_Y));
    dot.setAttribute("r", "4");
    dot.setAttribute("class", "highlight-dot");
    svg.appendChild(dot);
  }
  card.appendChild(svg);

  const caption = document.createElement("div");
  caption.className = "indicator-caption";
  const median_ = document.createElement("span");
  median_.className = "stat-median";
  median_.textContent = `med ${fmtStat(ind.box.median)}`;
  caption.appendChild(median_);
  const iqr = document.createElement("span");
  iqr.className = "stat-iqr";
  iqr.textContent = ` q1 ${fmtStat(ind.box.q1)} · q3 ${fmtStat(ind.box.q3)}`;
  caption.appendChild(iqr);
  if (ind.highlight != null) {
    const sel = document.createElement("span");
    sel.className = "stat-selected";
    sel.textContent = ` · selected ${fmtStat(ind.highlight)}`;
    caption.appendChild(sel);
  }
  card.appendChild(caption);
  return card;
}

/** Renders the 12 indicator cards into `container`. Values come straight
 * from the /stats payload. */
export function renderStatisticalView(container: HTMLElement, stats: StatsResponse): void {
  container.innerHTML = "";
  container.classList.add("statistical-view");
  for (const indicator of stats.indicators) {
    container.appendChild(renderCard(indicator));
  }
}
