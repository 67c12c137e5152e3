/** Payload shapes as served by the scoring service. The client renders these
 * verbatim; it never derives new numbers from them. */

export type Section = "EB" | "Com" | "Ho" | "ExA";

export const SECTIONS: Section[] = ["EB", "Com", "Ho", "ExA"];

export interface BoxStatsPayload {
  min: number;
  q1: number;
  median: number;
  q3: number;
  max: number;
  lower_whisker: number;
  upper_whisker: number;
  outliers: number[];
}

export interface DensityPayload {
  grid: number[];
  density: number[];
  bandwidth: number;
}

export interface IndicatorPayload {
  name: string;
  values: number[];
  box: BoxStatsPayload;
  density: DensityPayload;
  highlight: number | null;
}

export interface StatsResponse {
  schema_version: string;
  group_id: string;
  indicators: IndicatorPayload[];
}

export interface SummaryRow {
  app_id: number;
  name: string;
  durations: Record<Section, number>;
  scores: Record<Section, number>;
  mitigate?: number;
}

export interface DeviationPayload {
  app_id: number;
  section: string;
  label: "Higher" | "Lower" | "Close";
  delta: number;
}

export interface InversionPayload {
  app_a: number;
  app_b: number;
}

export interface AttributeWeight {
  name: string;
  weight: number;
}

export interface SummaryResponse {
  schema_version: string;
  section: Section;
  tau: number;
  phase: string;
  model_version: string | null;
  rows: SummaryRow[];
  deviations: DeviationPayload[];
  inversions: InversionPayload[];
  attribute_report: AttributeWeight[];
  layout_ref: string;
}

export interface LayoutResponse {
  schema_version: string;
  positions: Record<string, [number, number]>;
  centroids: Record<string, [number, number]>;
  polyline: number[];
  kl_trace: number[];
}

export interface TrainResponse {
  schema_version: string;
  section: Section;
  model_version: string;
  top_attributes: AttributeWeight[];
  training_ids: number[];
  converged: boolean;
  iterations: number;
}

export interface GroupApplication {
  app_id: number;
  name: string;
  school: string;
  major: string;
  scores: Record<Section, number>;
}

export interface GroupResponse {
  schema_version: string;
  group_id: string;
  phase: string;
  applications: GroupApplication[];
}

export interface ApplicationDetail {
  schema_version: string;
  application: Record<string, unknown>;
  attributes: Record<Section, Record<string, number>>;
  sheet: { scores: Record<Section, number> };
  score_box_stats: Record<Section, BoxStatsPayload | null>;
}
