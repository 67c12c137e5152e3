/** Page shell: Student List, Assessing, and Summary pages sharing the
 * Statistical sidebar. All numbers on screen are relayed from service
 * payloads; the only writes are score posts and train requests. */

import { api } from "./api.js";
import { renderComparisonView } from "./comparison.js";
import { renderExsituTable, renderNotificationCard } from "./exsitu.js";
import { fmtInt, fmtStat } from "./format.js";
import { initialState, summaryUnlocked } from "./state.js";
import type { Page, ViewState } from "./state.js";
import { renderStatisticalView } from "./statistical.js";
import { SECTION_COLORS } from "./theme.js";
import type { Section } from "./types.js";
import { SECTIONS } from "./types.js";

const state: ViewState = initialState(
  new URLSearchParams(window.location.search).get("baseline") === "1",
);

function el(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node;
}

async function refreshSidebar(): Promise<void> {
  if (state.baselineMode) {
    el("sidebar").classList.add("hidden");
    return;
  }
  el("sidebar").classList.toggle("hidden", !state.sidebarOpen);
  if (state.sidebarOpen) {
    const stats = await api.stats(state.selectedApp ?? undefined);
    renderStatisticalView(el("sidebar"), stats);
  }
}

async function renderStudentList(): Promise<void> {
  const group = await api.group();
  const container = el("page-student-list");
  container.innerHTML = "";
  const table = document.createElement("table");
  table.className = "student-list";
  const head = document.createElement("tr");
  for (const label of ["ID", "Name", "School", "Major", ...SECTIONS]) {
    const th = document.createElement("th");
    th.textContent = label;
    head.appendChild(th);
  }
  table.appendChild(head);
  for (const app of group.applications) {
    const tr = document.createElement("tr");
    tr.addEventListener("click", () => {
      state.selectedApp = app.app_id;
      showPage("Assessing");
    });
    const cells = [fmtInt(app.app_id), app.name, app.school, app.major];
    for (const text of cells) {
      const td = document.createElement("td");
      td.textContent = text;
      tr.appendChild(td);
    }
    for (const section of SECTIONS) {
      const td = document.createElement("td");
      td.style.color = SECTION_COLORS[section];
      td.textContent = app.scores[section] === 0 ? "–" : fmtInt(app.scores[section]);
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  container.appendChild(table);
  el("nav-summary").toggleAttribute(
    "disabled",
    !summaryUnlocked(group.applications.map((a) => a.scores)),
  );
}

async function renderSheetInto(
  container: HTMLElement,
  appId: number,
  afterEdit: () => Promise<void>,
): Promise<void> {
  const detail = await api.application(appId);
  container.innerHTML = "";
  const sheet = document.createElement("div");
  sheet.className = "screening-sheet";
  const raw = document.createElement("pre");
  raw.className = "raw-record";
  raw.textContent = JSON.stringify(detail.application, null, 2);
  sheet.appendChild(raw);
  container.appendChild(sheet);

  for (const section of SECTIONS) {
    const block = document.createElement("div");
    block.className = "sheet-section";
    block.style.borderColor = SECTION_COLORS[section];
    const title = document.createElement("h3");
    title.textContent = section;
    block.appendChild(title);
    const attrs = document.createElement("dl");
    for (const [name, value] of Object.entries(detail.attributes[section])) {
      // Baseline mode withholds publication-tier information.
      if (state.baselineMode && name.includes("-tier Publication")) continue;
      const dt = document.createElement("dt");
      dt.textContent = name;
      const dd = document.createElement("dd");
      dd.textContent = fmtStat(value);
      attrs.append(dt, dd);
    }
    block.appendChild(attrs);

    const editor = document.createElement("select");
    for (let score = 0; score <= 5; score++) {
      const option = document.createElement("option");
      option.value = String(score);
      option.textContent = fmtInt(score);
      option.selected = score === detail.sheet.scores[section];
      editor.appendChild(option);
    }
    editor.addEventListener("change", async () => {
      await api.postScore(appId, section, Number(editor.value));
      await afterEdit();
    });
    block.appendChild(editor);
    container.appendChild(block);
  }
}

async function renderAssessing(): Promise<void> {
  const container = el("page-assessing");
  container.innerHTML = "";
  if (state.selectedApp == null) {
    container.textContent = "Pick an application from the student list.";
    return;
  }
  await renderSheetInto(container, state.selectedApp, async () => {
    await Promise.all([renderAssessing(), refreshSidebar()]);
  });
}

async function renderSummary(): Promise<void> {
  const container = el("page-summary");
  const summary = await api.summary(state.section, state.tau);
  state.modelVersion = summary.model_version;
  let layout = null;
  if (summary.model_version != null) {
    try {
      layout = await api.layout(state.section);
    } catch {
      layout = null;
    }
  }
  container.innerHTML = "";

  const bar = document.createElement("div");
  bar.className = "summary-bar";
  const sectionPick = document.createElement("select");
  sectionPick.id = "section-pick";
  for (const section of SECTIONS) {
    const option = document.createElement("option");
    option.value = section;
    option.textContent = section;
    option.selected = section === state.section;
    sectionPick.appendChild(option);
  }
  sectionPick.addEventListener("change", () => {
    state.section = sectionPick.value as Section;
    state.selectedSamples.clear();
    void renderSummary();
  });
  const tauInput = document.createElement("input");
  tauInput.type = "number";
  tauInput.step = "0.1";
  tauInput.min = "0.1";
  tauInput.id = "tau-input";
  tauInput.value = String(summary.tau);
  tauInput.addEventListener("change", () => {
    state.tau = Number(tauInput.value);
    void renderSummary();
  });
  const version = document.createElement("span");
  version.className = "model-version";
  version.textContent =
    summary.model_version == null ? "no model" : `model ${summary.model_version.slice(0, 8)}`;
  bar.append(sectionPick, tauInput, version);
  container.appendChild(bar);

  const sheetPane = document.createElement("div");
  sheetPane.id = "summary-sheet-pane";
  const tablePane = document.createElement("div");
  tablePane.id = "exsitu-pane";
  const comparisonPane = document.createElement("div");
  comparisonPane.id = "comparison-pane";
  const notification = document.createElement("div");
  notification.id = "notification-pane";
  container.append(sheetPane, tablePane, comparisonPane, notification);

  const refreshSheetPane = async () => {
    if (state.selectedApp != null) {
      await renderSheetInto(sheetPane, state.selectedApp, async () => {
        await Promise.all([renderSummary(), refreshSidebar()]);
      });
    }
  };

  renderExsituTable(tablePane, summary, state, {
    onScoreEdit: async (appId, section, score) => {
      await api.postScore(appId, section, score);
      await Promise.all([renderSummary(), refreshSidebar()]);
    },
    onTrain: async (appIds) => {
      const trained = await api.train(state.section, appIds);
      renderNotificationCard(el("notification-pane"), trained);
      await renderSummary();
    },
    onRowClick: async (appId) => {
      state.selectedApp = appId;
      renderComparisonView(comparisonPane, layout, summary, state);
      await Promise.all([refreshSheetPane(), refreshSidebar()]);
    },
  });
  renderComparisonView(comparisonPane, layout, summary, state);
  await refreshSheetPane();
}

function showPage(page: Page): void {
  state.page = page;
  el("page-student-list").classList.toggle("hidden", page !== "StudentList");
  el("page-assessing").classList.toggle("hidden", page !== "Assessing");
  el("page-summary").classList.toggle("hidden", page !== "Summary");
  const render =
    page === "StudentList" ? renderStudentList : page === "Assessing" ? renderAssessing : renderSummary;
  void render();
}

export function boot(): void {
  el("nav-student-list").addEventListener("click", () => showPage("StudentList"));
  el("nav-assessing").addEventListener("click", () => showPage("Assessing"));
  el("nav-summary").addEventListener("click", () => showPage("Summary"));
  el("nav-sidebar").addEventListener("click", () => {
    state.sidebarOpen = !state.sidebarOpen;
    void refreshSidebar();
  });
  showPage("StudentList");
  void refreshSidebar();
}

if (typeof document !== "undefined" && document.getElementById("nav-student-list")) {
  boot();
}
