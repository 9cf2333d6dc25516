// Panel state and the pipeline it implies. Slider defaults are the
// identity parameters, so a untouched panel never produces a transform
// request.

import type { TransformStepJson } from "./types";

export interface SliderState {
  f: number;
  h: number;
  m: number;
  k: number;
  noiseFraction: number;
  noiseScale: number;
}

export interface LocalState {
  interval: [number, number] | null; // 1-based inclusive, snapped to integers
  translate: number;
  k: number;
  noiseFraction: number;
  noiseScale: number;
}

export interface PanelState {
  selectedId: string | null;
  activeView: "scatter" | "histogram";
  sliders: SliderState;
  local: LocalState;
  generalShift: number;
  noiseSeed: number;
  seriesLength: number | null;
  pendingPipeline: TransformStepJson[];
  appliedPipeline: TransformStepJson[];
}

export const IDENTITY_SLIDERS: SliderState = {
  f: 1,
  h: 1,
  m: 0,
  k: 1,
  noiseFraction: 0,
  noiseScale: 0,
};

export const IDENTITY_LOCAL: LocalState = {
  interval: null,
  translate: 0,
  k: 1,
  noiseFraction: 0,
  noiseScale: 0,
};

export function initialState(): PanelState {
  return {
    selectedId: null,
    activeView: "scatter",
    sliders: { ...IDENTITY_SLIDERS },
    local: { ...IDENTITY_LOCAL },
    generalShift: 0,
    noiseSeed: 0,
    seriesLength: null,
    pendingPipeline: [],
    appliedPipeline: [],
  };
}

export function clampInterval(
  interval: [number, number],
  seriesLength: number,
): [number, number] {
  const lo = Math.max(1, Math.min(Math.round(interval[0]), seriesLength));
  const hi = Math.max(lo, Math.min(Math.round(interval[1]), seriesLength));
  return [lo, hi];
}

// The pipeline contains only steps whose parameters differ from the
// identity; an untouched panel therefore yields [] and no request.
// Interval clamping happens at the drag-gesture layer; the pipeline uses
// the stored interval verbatim so server-side validation stays honest.
export function buildPipeline(state: PanelState): TransformStepJson[] {
  const steps: TransformStepJson[] = [];
  const s = state.sliders;
  if (s.f !== 1 || s.h !== 1 || s.m !== 0) {
    steps.push({ kind: "trend", params: { f: s.f, h: s.h, m: s.m } });
  }
  if (s.k !== 1) {
    steps.push({ kind: "seasonal", params: { k: s.k } });
  }
  if (s.noiseFraction > 0 && s.noiseScale > 0) {
    steps.push({
      kind: "noise",
      params: { p: s.noiseFraction, sigma_rel: s.noiseScale },
      seed: state.noiseSeed,
    });
  }
  const local = state.local;
  if (local.interval !== null) {
    const interval = local.interval;
    if (local.translate !== 0) {
      steps.push({ kind: "translate", params: { c: local.translate }, interval });
    }
    if (local.k !== 1) {
      steps.push({ kind: "seasonal", params: { k: local.k }, interval });
    }
    if (local.noiseFraction > 0 && local.noiseScale > 0) {
      steps.push({
        kind: "noise",
        params: { p: local.noiseFraction, sigma_rel: local.noiseScale },
        interval,
        seed: state.noiseSeed,
      });
    }
  }
  if (state.generalShift !== 0) {
    steps.push({ kind: "translate", params: { c: state.generalShift } });
  }
  return steps;
}

export function isIdentity(state: PanelState): boolean {
  return buildPipeline(state).length === 0;
}
