// API payload contract. Every number the workbench displays originates
// from one of these payloads; the client performs no numeric work beyond
// mapping values onto screen coordinates.

export interface DatasetMeta {
  name: string;
  n_train: number;
  n_test: number;
  horizon: number;
  context_length: number;
  seasonal_period: number;
}

export interface SpacePoint {
  id: string;
  c0: number;
  c1: number;
  split: string;
}

export interface HistogramBin {
  lo: number;
  hi: number;
  counts: Record<string, number>;
}

export interface InstanceSpacePayload {
  points: SpacePoint[];
  basis: number[][];
  explained_variance: number[];
  capped: boolean;
  histogram: { axis: number; bins: HistogramBin[] };
}

export interface SeriesPayload {
  id: string;
  split: string;
  start: string;
  freq: string;
  seasonal_period: number;
  values: number[];
}

export interface ErrorsPayload {
  metric: string;
  per_horizon: number[];
  aggregate: number;
}

export interface FeaturesPayload {
  trend_strength: number;
  seasonal_strength: number;
  trend_linearity: number;
  trend_slope: number;
  flags: string[];
}

export interface SelectResponse {
  id: string;
  series: SeriesPayload;
  forecast: number[] | null;
  errors: ErrorsPayload | null;
  features: FeaturesPayload & { flags: string[] };
  point: { c0: number; c1: number };
}

export interface TransformResponse {
  id: string;
  transformed: number[];
  forecast: number[] | null;
  errors: ErrorsPayload | null;
  features: FeaturesPayload & { flags: string[] };
  point: { c0: number; c1: number };
  original_point: { c0: number; c1: number };
}

export interface ErrorSummaryPayload {
  metric: string;
  mean: number;
  median: number;
  std: number;
  horizon_mean: number[];
  band_low: number[];
  band_high: number[];
  n_series: number;
  aggregation: string;
}

export interface TransformStepJson {
  kind: "trend" | "seasonal" | "translate" | "noise";
  params: Record<string, number>;
  interval?: [number, number];
  seed?: number;
}
