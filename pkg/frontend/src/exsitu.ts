/** Ex-situ table: sortable rows with stacked per-section time bars, inline
 * score editing for the selected section, the Mitigate column once a model
 * exists, and the training-sample controls (range slider + checkboxes +
 * train button). */

import { fmtInt, fmtScore, fmtSeconds, fmtWeight } from "./format.js";
import { MIN_TRAINING_SAMPLES, selectRange, toggleSample, trainEnabled } from "./state.js";
import type { ViewState } from "./state.js";
import { SECTION_COLORS } from "./theme.js";
import type { Section, SummaryResponse, SummaryRow, TrainResponse } from "./types.js";
import { SECTIONS } from "./types.js";

export interface ExsituCallbacks {
  onScoreEdit: (appId: number, section: Section, score: number) => void;
  onTrain: (appIds: number[]) => void;
  onRowClick: (appId: number) => void;
}

type SortKey = "app_id" | "name" | "time" | "score" | "mitigate";

interface SortState {
  key: SortKey;
  desc: boolean;
}

function rowSortValue(row: SummaryRow, key: SortKey, section: Section): number | string {
  switch (key) {
    case "name":
      return row.name;
    case "time":
      return SECTIONS.reduce((acc, s) => acc + row.durations[s], 0);
    case "score":
      return row.scores[section];
    case "mitigate":
      return row.mitigate ?? 0;
    default:
      return row.app_id;
  }
}

function timeBar(row: SummaryRow): HTMLElement {
  const wrapper = document.createElement("div");
  wrapper.className = "time-bar";
  const total = SECTIONS.reduce((acc, s) => acc + row.durations[s], 0);
  for (const section of SECTIONS) {
    const seg = document.createElement("span");
    seg.className = "time-seg";
    seg.dataset.section = section;
    seg.style.backgroundColor = SECTION_COLORS[section];
    seg.style.width = total > 0 ? `${(row.durations[section] / total) * 100}%` : "0%";
    wrapper.appendChild(seg);
  }
  const tooltip = document.createElement("div");
  tooltip.className = "time-tooltip";
  for (const section of SECTIONS) {
    const line = document.createElement("div");
    line.dataset.section = section;
    line.textContent = `${section}: ${fmtSeconds(row.durations[section])} s`;
    tooltip.appendChild(line);
  }
  wrapper.appendChild(tooltip);
  wrapper.addEventListener("mouseenter", () => tooltip.classList.add("visible"));
  wrapper.addEventListener("mouseleave", () => tooltip.classList.remove("visible"));
  return wrapper;
}

function scoreEditor(
  row: SummaryRow,
  section: Section,
  onEdit: ExsituCallbacks["onScoreEdit"],
): HTMLElement {
  const select = document.createElement("select");
  select.className = "score-editor";
  select.dataset.appId = String(row.app_id);
  for (let score = 0; score <= 5; score++) {
    const option = document.createElement("option");
    option.value = String(score);
    option.textContent = fmtInt(score);
    if (score === row.scores[section]) option.selected = true;
    select.appendChild(option);
  }
  select.addEventListener("change", () => {
    onEdit(row.app_id, section, Number(select.value));
  });
  select.addEventListener("click", (event) => event.stopPropagation());
  return select;
}

export function renderNotificationCard(container: HTMLElement, train: TrainResponse): void {
  container.innerHTML = "";
  const card = document.createElement("div");
  card.className = "notification-card";
  const title = document.createElement("div");
  title.className = "notification-title";
  title.textContent = `Model ${train.model_version.slice(0, 8)} · ${train.section}`;
  card.appendChild(title);
  const list = document.createElement("ol");
  list.className = "top-attributes";
  for (const attr of train.top_attributes) {
    const item = document.createElement("li");
    item.textContent = `${attr.name} (${fmtWeight(attr.weight)})`;
    list.appendChild(item);
  }
  card.appendChild(list);
  const ids = document.createElement("div");
  ids.className = "training-ids";
  ids.textContent = `Training: ${train.training_ids.map(fmtInt).join(", ")}`;
  card.appendChild(ids);
  container.appendChild(card);
}

export function renderExsituTable(
  container: HTMLElement,
  summary: SummaryResponse,
  state: ViewState,
  callbacks: ExsituCallbacks,
  sort: SortState = { key: "app_id", desc: false },
): void {
  container.innerHTML = "";
  container.classList.add("exsitu");

  const controls = document.createElement("div");
  controls.className = "train-controls";

  const appIds = summary.rows.map((r) => r.app_id);
  const sliderFrom = document.createElement("input");
  sliderFrom.type = "range";
  sliderFrom.className = "sample-slider-from";
  sliderFrom.min = "0";
  sliderFrom.max = String(Math.max(appIds.length - 1, 0));
  sliderFrom.value = "0";
  const sliderTo = document.createElement("input");
  sliderTo.type = "range";
  sliderTo.className = "sample-slider-to";
  sliderTo.min = "0";
  sliderTo.max = String(Math.max(appIds.length - 1, 0));
  sliderTo.value = "0";

  const trainButton = document.createElement("button");
  trainButton.className = "train-button";
  trainButton.textContent = "Infer preferences";

  const refreshButton = () => {
    const enabled = trainEnabled(state);
    trainButton.disabled = !enabled;
    trainButton.title = enabled
      ? `Train on ${state.selectedSamples.size} samples`
      : `Select more than ${MIN_TRAINING_SAMPLES - 1} scored applications`;
  };

  const applySlider = () => {
    const from = Math.min(Number(sliderFrom.value), Number(sliderTo.value));
    const to = Math.max(Number(sliderFrom.value), Number(sliderTo.value));
    selectRange(state, appIds, from, to);
    renderExsituTable(container, summary, state, callbacks, sort);
  };
  sliderFrom.addEventListener("change", applySlider);
  sliderTo.addEventListener("change", applySlider);

  trainButton.addEventListener("click", () => {
    if (trainEnabled(state)) callbacks.onTrain([...state.selectedSamples].sort((a, b) => a - b));
  });

  controls.append(sliderFrom, sliderTo, trainButton);
  container.appendChild(controls);

  const table = document.createElement("table");
  table.className = "exsitu-table";
  const thead = document.createElement("thead");
  const headRow = document.createElement("tr");
  const columns: [string, SortKey | null][] = [
    ["Sample", null],
    ["ID", "app_id"],
    ["Name", "name"],
    ["Time", "time"],
    [summary.section, "score"],
  ];
  if (summary.model_version != null) columns.push(["Mitigate", "mitigate"]);
  for (const [label, key] of columns) {
    const th = document.createElement("th");
    th.textContent = label;
    if (key != null) {
      th.classList.add("sortable");
      th.dataset.sort = key;
      th.addEventListener("click", () => {
        const next: SortState =
          sort.key === key ? { key, desc: !sort.desc } : { key, desc: false };
        renderExsituTable(container, summary, state, callbacks, next);
      });
    }
    headRow.appendChild(th);
  }
  thead.appendChild(headRow);
  table.appendChild(thead);

  const rows = [...summary.rows].sort((a, b) => {
    const va = rowSortValue(a, sort.key, summary.section);
    const vb = rowSortValue(b, sort.key, summary.section);
    const cmp = va < vb ? -1 : va > vb ? 1 : a.app_id - b.app_id;
    return sort.desc ? -cmp : cmp;
  });

  const tbody = document.createElement("tbody");
  for (const row of rows) {
    const tr = document.createElement("tr");
    tr.dataset.appId = String(row.app_id);
    if (state.selectedApp === row.app_id) tr.classList.add("selected-row");
    tr.addEventListener("click", () => callbacks.onRowClick(row.app_id));

    const sampleCell = document.createElement("td");
    const checkbox = document.createElement("input");
    checkbox.type = "checkbox";
    checkbox.className = "sample-checkbox";
    checkbox.dataset.appId = String(row.app_id);
    checkbox.checked = state.selectedSamples.has(row.app_id);
    checkbox.addEventListener("click", (event) => event.stopPropagation());
    checkbox.addEventListener("change", () => {
      toggleSample(state, row.app_id);
      refreshButton();
    });
    sampleCell.appendChild(checkbox);
    tr.appendChild(sampleCell);

    const idCell = document.createElement("td");
    idCell.className = "cell-id";
    idCell.textContent = fmtInt(row.app_id);
    tr.appendChild(idCell);

    const nameCell = document.createElement("td");
    nameCell.textContent = row.name;
    tr.appendChild(nameCell);

    const timeCell = document.createElement("td");
    timeCell.appendChild(timeBar(row));
    tr.appendChild(timeCell);

    const scoreCell = document.createElement("td");
    scoreCell.appendChild(scoreEditor(row, summary.section, callbacks.onScoreEdit));
    tr.appendChild(scoreCell);

    if (summary.model_version != null) {
      const mitigateCell = document.createElement("td");
      mitigateCell.className = "cell-mitigate";
      mitigateCell.textContent = row.mitigate == null ? "" : fmtScore(row.mitigate);
      tr.appendChild(mitigateCell);
    }
    tbody.appendChild(tr);
  }
  table.appendChild(tbody);
  container.appendChild(table);
  refreshButton();
}
