import raw from "./fixtures.json";

import type {
  GroupResponse,
  LayoutResponse,
  StatsResponse,
  SummaryResponse,
  TrainResponse,
} from "../src/types.js";

interface Fixtures {
  group: GroupResponse;
  stats: StatsResponse;
  summary: SummaryResponse;
  layout: LayoutResponse;
  train: TrainResponse;
}

export const fixtures = raw as unknown as Fixtures;

export function freshSummary(): SummaryResponse {
  return JSON.parse(JSON.stringify(fixtures.summary));
}
