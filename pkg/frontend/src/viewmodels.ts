// Panel view models: a direct reshaping of API payloads into what each
// panel draws. No arithmetic beyond picking fields.

import type {
  ErrorSummaryPayload,
  ErrorsPayload,
  FeaturesPayload,
  InstanceSpacePayload,
  SelectResponse,
  SpacePoint,
  TransformResponse,
} from "./types";

export interface PanelA {
  points: SpacePoint[];
  selected: { id: string; c0: number; c1: number } | null; // green dot
  transformed: { c0: number; c1: number } | null;          // red dot
  histogram: InstanceSpacePayload["histogram"] | null;
}

export interface PanelB {
  id: string | null;
  values: number[];
  forecast: number[] | null;
  transformed: number[] | null;
}

export interface PanelC {
  metric: string;
  testMean: number[];
  bandLow: number[];
  bandHigh: number[];
  selected: number[] | null;
  transformed: number[] | null;
}

export interface PanelD {
  id: string | null;
  features: FeaturesPayload | null;
  transformedFeatures: FeaturesPayload | null;
  errors: ErrorsPayload | null;
  transformedErrors: ErrorsPayload | null;
  summary: { mean: number; median: number; std: number } | null;
}

export interface Panels {
  a: PanelA;
  b: PanelB;
  c: PanelC;
  d: PanelD;
  banner: string | null;
}

export function emptyPanels(): Panels {
  return {
    a: { points: [], selected: null, transformed: null, histogram: null },
    b: { id: null, values: [], forecast: null, transformed: null },
    c: { metric: "mase", testMean: [], bandLow: [], bandHigh: [], selected: null, transformed: null },
    d: { id: null, features: null, transformedFeatures: null, errors: null, transformedErrors: null, summary: null },
    banner: null,
  };
}

export function applyInstanceSpace(panels: Panels, payload: InstanceSpacePayload): void {
  panels.a.points = payload.points;
  panels.a.histogram = payload.histogram;
}

export function applyErrorSummary(panels: Panels, payload: ErrorSummaryPayload): void {
  panels.c.metric = payload.metric;
  panels.c.testMean = payload.horizon_mean;
  panels.c.bandLow = payload.band_low;
  panels.c.bandHigh = payload.band_high;
  panels.d.summary = { mean: payload.mean, median: payload.median, std: payload.std };
}

export function applySelection(panels: Panels, payload: SelectResponse): void {
  panels.a.selected = { id: payload.id, c0: payload.point.c0, c1: payload.point.c1 };
  panels.a.transformed = null;
  panels.b = {
    id: payload.id,
    values: payload.series.values,
    forecast: payload.forecast,
    transformed: null,
  };
  panels.c.selected = payload.errors ? payload.errors.per_horizon : null;
  panels.c.transformed = null;
  panels.d = {
    id: payload.id,
    features: payload.features,
    transformedFeatures: null,
    errors: payload.errors,
    transformedErrors: null,
    summary: panels.d.summary,
  };
}

export function applyTransform(panels: Panels, payload: TransformResponse): void {
  panels.a.transformed = { c0: payload.point.c0, c1: payload.point.c1 };
  panels.b.transformed = payload.transformed;
  panels.c.transformed = payload.errors ? payload.errors.per_horizon : null;
  panels.d.transformedFeatures = payload.features;
  panels.d.transformedErrors = payload.errors;
}

export function clearTransform(panels: Panels): void {
  panels.a.transformed = null;
  panels.b.transformed = null;
  panels.c.transformed = null;
  panels.d.transformedFeatures = null;
  panels.d.transformedErrors = null;
}
