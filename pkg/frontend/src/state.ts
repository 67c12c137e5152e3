import type { Section } from "./types.js";

export type Page = "StudentList" | "Assessing" | "Summary";

/** Client view state. The Summary page stays locked until at least one
 * application carries a score, and training needs strictly more than six
 * selected samples. */
export interface ViewState {
  page: Page;
  selectedApp: number | null;
  section: Section;
  tau: number;
  modelVersion: string | null;
  sidebarOpen: boolean;
  baselineMode: boolean;
  selectedSamples: Set<number>;
}

export function initialState(baselineMode = false): ViewState {
  return {
    page: "StudentList",
    selectedApp: null,
    section: "EB",
    tau: 0.5,
    modelVersion: null,
    sidebarOpen: !baselineMode,
    baselineMode,
    selectedSamples: new Set(),
  };
}

export function summaryUnlocked(scores: Record<string, number>[]): boolean {
  return scores.some((row) => Object.values(row).some((s) => s !== 0));
}

export const MIN_TRAINING_SAMPLES = 7; // the bound is strict: k > 6

export function trainEnabled(state: ViewState): boolean {
  return state.selectedSamples.size >= MIN_TRAINING_SAMPLES;
}

export function toggleSample(state: ViewState, appId: number): void {
  if (state.selectedSamples.has(appId)) {
    state.selectedSamples.delete(appId);
  } else {
    state.selectedSamples.add(appId);
  }
}

/** Slider selection: a contiguous run of rows in screening order. */
export function selectRange(state: ViewState, appIds: number[], from: number, to: number): void {
  state.selectedSamples = new Set(appIds.slice(from, to + 1));
}
