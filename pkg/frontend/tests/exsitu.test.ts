import { beforeEach, describe, expect, it, vi } from "vitest";

import { renderExsituTable, renderNotificationCard } from "../src/exsitu.js";
import { initialState } from "../src/state.js";
import type { ExsituCallbacks } from "../src/exsitu.js";

import { fixtures, freshSummary } from "./fixtures.js";

let container: HTMLElement;

beforeEach(() => {
  container = document.createElement("div");
  document.body.innerHTML = "";
  document.body.appendChild(container);
});

function noopCallbacks(): ExsituCallbacks {
  return { onScoreEdit: vi.fn(), onTrain: vi.fn(), onRowClick: vi.fn() };
}

function checkboxFor(appId: number): HTMLInputElement {
  return container.querySelector<HTMLInputElement>(
    `.sample-checkbox[data-app-id="${appId}"]`,
  )!;
}

describe("ex-situ table", () => {
  it("disables the train button at 6 selected samples and enables at 7", () => {
    const state = initialState();
    renderExsituTable(container, freshSummary(), state, noopCallbacks());
    const button = () => container.querySelector<HTMLButtonElement>(".train-button")!;
    for (let appId = 1; appId <= 6; appId++) {
      const box = checkboxFor(appId);
      box.checked = true;
      box.dispatchEvent(new Event("change"));
    }
    expect(state.selectedSamples.size).toBe(6);
    expect(button().disabled).toBe(true);
    const seventh = checkboxFor(7);
    seventh.checked = true;
    seventh.dispatchEvent(new Event("change"));
    expect(state.selectedSamples.size).toBe(7);
    expect(button().disabled).toBe(false);
  });

  it("posts the selected sample ids on train click", () => {
    const state = initialState();
    const callbacks = noopCallbacks();
    renderExsituTable(container, freshSummary(), state, callbacks);
    for (let appId = 1; appId <= 8; appId++) {
      const box = checkboxFor(appId);
      box.checked = true;
      box.dispatchEvent(new Event("change"));
    }
    container.querySelector<HTMLButtonElement>(".train-button")!.click();
    expect(callbacks.onTrain).toHaveBeenCalledTimes(1);
    expect(callbacks.onTrain).toHaveBeenCalledWith([1, 2, 3, 4, 5, 6, 7, 8]);
  });

  it("fires exactly one score post per edit", () => {
    const callbacks = noopCallbacks();
    const summary = freshSummary();
    renderExsituTable(container, summary, initialState(), callbacks);
    const editor = container.querySelector<HTMLSelectElement>(
      `.score-editor[data-app-id="${summary.rows[0].app_id}"]`,
    )!;
    editor.value = "5";
    editor.dispatchEvent(new Event("change"));
    expect(callbacks.onScoreEdit).toHaveBeenCalledTimes(1);
    expect(callbacks.onScoreEdit).toHaveBeenCalledWith(
      summary.rows[0].app_id, summary.section, 5,
    );
  });

  it("reveals per-section seconds on time-bar hover", () => {
    const summary = freshSummary();
    renderExsituTable(container, summary, initialState(), noopCallbacks());
    const row = summary.rows[0];
    const bar = container.querySelector<HTMLElement>(
      `tr[data-app-id="${row.app_id}"] .time-bar`,
    )!;
    const tooltip = bar.querySelector(".time-tooltip")!;
    expect(tooltip.classList.contains("visible")).toBe(false);
    bar.dispatchEvent(new MouseEvent("mouseenter"));
    expect(tooltip.classList.contains("visible")).toBe(true);
    for (const section of ["EB", "Com", "Ho", "ExA"] as const) {
      const line = tooltip.querySelector(`[data-section="${section}"]`)!;
      expect(line.textContent).toContain(row.durations[section].toFixed(1));
    }
  });

  it("shows the Mitigate column only when a model exists, two decimals", () => {
    const summary = freshSummary();
    renderExsituTable(container, summary, initialState(), noopCallbacks());
    const cells = container.querySelectorAll(".cell-mitigate");
    expect(cells.length).toBe(summary.rows.length);
    for (const [i, row] of summary.rows.entries()) {
      if (row.mitigate != null) {
        expect(cells[i].textContent).toMatch(/^\d+\.\d{2}$/);
      }
    }
    const untrained = freshSummary();
    untrained.model_version = null;
    for (const row of untrained.rows) delete row.mitigate;
    renderExsituTable(container, untrained, initialState(), noopCallbacks());
    expect(container.querySelectorAll(".cell-mitigate").length).toBe(0);
  });

  it("sorts by the Mitigate column on header click", () => {
    const summary = freshSummary();
    renderExsituTable(container, summary, initialState(), noopCallbacks());
    const header = container.querySelector<HTMLElement>('th[data-sort="mitigate"]')!;
    header.click(); // ascending
    let shown = Array.from(container.querySelectorAll("tbody tr")).map((tr) =>
      Number((tr as HTMLElement).dataset.appId),
    );
    const ascending = [...summary.rows]
      .sort((a, b) => (a.mitigate! - b.mitigate!) || a.app_id - b.app_id)
      .map((r) => r.app_id);
    expect(shown).toEqual(ascending);
    container.querySelector<HTMLElement>('th[data-sort="mitigate"]')!.click(); // toggle desc
    shown = Array.from(container.querySelectorAll("tbody tr")).map((tr) =>
      Number((tr as HTMLElement).dataset.appId),
    );
    expect(shown).toEqual([...ascending].reverse());
  });

  it("slider selects a contiguous range in screening order", () => {
    const state = initialState();
    const summary = freshSummary();
    renderExsituTable(container, summary, state, noopCallbacks());
    const from = container.querySelector<HTMLInputElement>(".sample-slider-from")!;
    const to = container.querySelector<HTMLInputElement>(".sample-slider-to")!;
    from.value = "2";
    to.value = "9";
    to.dispatchEvent(new Event("change"));
    const expected = summary.rows.slice(2, 10).map((r) => r.app_id);
    expect([...state.selectedSamples].sort((a, b) => a - b)).toEqual(expected);
  });

  it("row click reports the application", () => {
    const callbacks = noopCallbacks();
    const summary = freshSummary();
    renderExsituTable(container, summary, initialState(), callbacks);
    container
      .querySelector<HTMLElement>(`tr[data-app-id="${summary.rows[3].app_id}"]`)!
      .click();
    expect(callbacks.onRowClick).toHaveBeenCalledWith(summary.rows[3].app_id);
  });
});

describe("notification card", () => {
  it("lists the top attributes and training ids from the train payload", () => {
    renderNotificationCard(container, fixtures.train);
    const items = container.querySelectorAll(".top-attributes li");
    expect(items.length).toBe(fixtures.train.top_attributes.length);
    expect(items[0].textContent).toContain(fixtures.train.top_attributes[0].name);
    const ids = container.querySelector(".training-ids")!.textContent!;
    for (const appId of fixtures.train.training_ids) {
      expect(ids).toContain(String(appId));
    }
  });
});
