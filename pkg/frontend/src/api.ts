/** The only write paths are POST /scores and POST /model/train; everything
 * else is a read. All numbers shown in the UI originate from these
 * responses. */

import type {
  ApplicationDetail,
  GroupResponse,
  LayoutResponse,
  Section,
  StatsResponse,
  SummaryResponse,
  TrainResponse,
} from "./types.js";

export interface ApiErrorBody {
  code: string;
  message: string;
}

export class ApiError extends Error {
  constructor(public status: number, public body: ApiErrorBody) {
    super(body.message);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const response = await fetch(path, {
    headers: { "Content-Type": "application/json" },
    ...init,
  });
  if (!response.ok) {
    let body: ApiErrorBody = { code: "http_error", message: response.statusText };
    try {
      const parsed = await response.json();
      if (parsed && parsed.detail) body = parsed.detail;
    } catch {
      /* non-JSON error body */
    }
    throw new ApiError(response.status, body);
  }
  return response.json() as Promise<T>;
}

export const api = {
  group: () => request<GroupResponse>("/group"),
  application: (id: number) => request<ApplicationDetail>(`/applications/${id}`),
  stats: (selected?: number) =>
    request<StatsResponse>(selected == null ? "/stats" : `/stats?selected=${selected}`),
  summary: (section: Section, tau?: number) => {
    const params = new URLSearchParams({ section });
    if (tau != null) params.set("tau", String(tau));
    return request<SummaryResponse>(`/summary?${params}`);
  },
  layout: (section: Section) => request<LayoutResponse>(`/layout?section=${section}`),
  postScore: (app_id: number, section: Section, score: number) =>
    request<{ seq: number }>("/scores", {
      method: "POST",
      body: JSON.stringify({ app_id, section, score }),
    }),
  train: (section: Section, app_ids: number[], seed?: number) =>
    request<TrainResponse>("/model/train", {
      method: "POST",
      body: JSON.stringify(seed == null ? { section, app_ids } : { section, app_ids, seed }),
    }),
  submit: (phase: string) =>
    request<{ phase: string }>("/submit", {
      method: "POST",
      body: JSON.stringify({ phase }),
    }),
};
