import { beforeEach, describe, expect, it } from "vitest";

import { renderComparisonView } from "../src/comparison.js";
import { initialState } from "../src/state.js";
import { DEVIATION_COLORS, scoreColor } from "../src/theme.js";

import { fixtures, freshSummary } from "./fixtures.js";

let container: HTMLElement;

beforeEach(() => {
  container = document.createElement("div");
  document.body.innerHTML = "";
  document.body.appendChild(container);
});

function render(summary = freshSummary()) {
  renderComparisonView(container, fixtures.layout, summary, initialState());
  return summary;
}

describe("comparison view", () => {
  it("colors every ID exactly per its deviation class", () => {
    const summary = render();
    const byId = new Map(summary.deviations.map((d) => [d.app_id, d.label]));
    const ids = container.querySelectorAll<SVGTextElement>(".glyph-id");
    expect(ids.length).toBeGreaterThan(0);
    for (const text of Array.from(ids)) {
      const appId = Number(text.textContent);
      const label = byId.get(appId);
      expect(label, `app ${appId} has no deviation class`).toBeDefined();
      expect(text.getAttribute("fill")).toBe(DEVIATION_COLORS[label!]);
    }
  });

  it("renders a glyph for every scored app and none for unscored", () => {
    const summary = render();
    const scored = summary.rows.filter((r) => r.scores[summary.section] !== 0);
    expect(container.querySelectorAll(".glyph").length).toBe(scored.length);
  });

  it("hovering the score-4 centroid highlights exactly the score-4 glyphs", () => {
    const summary = render();
    const centroid = container.querySelector<SVGCircleElement>(
      '.centroid-dot[data-score="4"]',
    );
    expect(centroid).not.toBeNull();
    centroid!.dispatchEvent(new MouseEvent("mouseenter"));
    const highlighted = Array.from(
      container.querySelectorAll<SVGGElement>(".glyph.same-score-highlight"),
    ).map((g) => Number(g.dataset.appId));
    const expected = summary.rows
      .filter((r) => r.scores[summary.section] === 4)
      .map((r) => r.app_id);
    expect(highlighted.sort((a, b) => a - b)).toEqual(expected.sort((a, b) => a - b));
    centroid!.dispatchEvent(new MouseEvent("mouseleave"));
    expect(container.querySelectorAll(".same-score-highlight").length).toBe(0);
  });

  it("hovering a glyph highlights its score mates", () => {
    const summary = render();
    const glyph = container.querySelector<SVGGElement>('.glyph[data-score="4"]');
    expect(glyph).not.toBeNull();
    glyph!.dispatchEvent(new MouseEvent("mouseenter"));
    const expected = summary.rows.filter((r) => r.scores[summary.section] === 4).length;
    expect(container.querySelectorAll(".same-score-highlight").length).toBe(expected);
  });

  it("uses one linear color scale for both rings", () => {
    const summary = freshSummary();
    // Force a row whose prediction equals its human score; both rings must
    // then carry the identical color.
    const row = summary.rows.find((r) => r.scores[summary.section] !== 0)!;
    row.mitigate = row.scores[summary.section];
    render(summary);
    const glyph = container.querySelector<SVGGElement>(
      `.glyph[data-app-id="${row.app_id}"]`,
    )!;
    const outer = glyph.querySelector(".ring-human")!.getAttribute("fill");
    const inner = glyph.querySelector(".ring-prediction")!.getAttribute("fill");
    expect(outer).toBe(inner);
    expect(outer).toBe(scoreColor(row.scores[summary.section]));
  });

  it("threads the centroid polyline lowest to highest", () => {
    render();
    const polyline = container.querySelector(".centroid-polyline");
    expect(polyline).not.toBeNull();
    expect(fixtures.layout.polyline).toEqual([...fixtures.layout.polyline].sort((a, b) => a - b));
  });

  it("shows guidance text before the first training", () => {
    const summary = freshSummary();
    summary.model_version = null;
    renderComparisonView(container, null, summary, initialState());
    expect(container.querySelector(".guidance")).not.toBeNull();
    expect(container.querySelectorAll(".glyph").length).toBe(0);
  });
});
