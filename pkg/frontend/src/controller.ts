// Orchestrates the five panels against the API: selection, slider
// gestures (debounced, latest-wins), and error banners. Panels hold
// exactly what the API returned; a failed request leaves them untouched.

import { ApiClient, ApiError } from "./api";
import { debounce, Debounced, LatestWins } from "./debounce";
import {
  buildPipeline,
  initialState,
  isIdentity,
  IDENTITY_LOCAL,
  IDENTITY_SLIDERS,
  LocalState,
  PanelState,
  SliderState,
} from "./state";
import {
  applyErrorSummary,
  applyInstanceSpace,
  applySelection,
  applyTransform,
  clearTransform,
  emptyPanels,
  Panels,
} from "./viewmodels";

export const SLIDER_DEBOUNCE_MS = 150;

export class WorkbenchController {
  state: PanelState = initialState();
  panels: Panels = emptyPanels();
  invalidPipeline = false;
  transformRequests = 0; // instrumentation: number of POST /transform issued
  onRender: (() => void) | null = null;

  private tickets = new LatestWins();
  private debouncedTransform: Debounced<[]>;

  constructor(private api: ApiClient, debounceMs: number = SLIDER_DEBOUNCE_MS) {
    this.debouncedTransform = debounce(() => {
      void this.runTransform();
    }, debounceMs);
  }

  private render(): void {
    if (this.onRender) this.onRender();
  }

  async loadOverview(): Promise<void> {
    try {
      const [space, summary] = await Promise.all([
        this.api.instanceSpace(),
        this.api.errorSummary(),
      ]);
      applyInstanceSpace(this.panels, space);
      applyErrorSummary(this.panels, summary);
      this.panels.banner = null;
    } catch (err) {
      this.panels.banner = describe(err);
    }
    this.render();
  }

  setView(view: "scatter" | "histogram"): void {
    this.state.activeView = view;
    this.render();
  }

  async selectPoint(id: string): Promise<void> {
    try {
      const payload = await this.api.select(id);
      this.state.selectedId = id;
      this.state.seriesLength = payload.series.values.length;
      this.state.sliders = { ...IDENTITY_SLIDERS };
      this.state.local = { ...IDENTITY_LOCAL };
      this.state.generalShift = 0;
      this.state.pendingPipeline = [];
      this.state.appliedPipeline = [];
      this.invalidPipeline = false;
      applySelection(this.panels, payload);
      this.panels.banner = null;
    } catch (err) {
      // selection failure leaves every panel as it was
      this.panels.banner = describe(err);
    }
    this.render();
  }

  setSlider(name: keyof SliderState, value: number): void {
    this.state.sliders[name] = value;
    this.pipelineChanged();
  }

  setLocalInterval(start: number, end: number): void {
    this.state.local.interval = [start, end];
    this.pipelineChanged();
  }

  setLocal(name: Exclude<keyof LocalState, "interval">, value: number): void {
    this.state.local[name] = value;
    this.pipelineChanged();
  }

  setGeneralShift(value: number): void {
    this.state.generalShift = value;
    this.pipelineChanged();
  }

  resetSliders(): void {
    this.state.sliders = { ...IDENTITY_SLIDERS };
    this.state.local = { ...IDENTITY_LOCAL };
    this.state.generalShift = 0;
    this.pipelineChanged();
  }

  private pipelineChanged(): void {
    if (this.state.selectedId === null) return;
    this.state.pendingPipeline = buildPipeline(this.state);
    if (isIdentity(this.state)) {
      // identity sliders never issue a transform request
      this.debouncedTransform.cancel();
      this.state.appliedPipeline = [];
      this.invalidPipeline = false;
      clearTransform(this.panels);
      this.render();
      return;
    }
    this.debouncedTransform();
  }

  private async runTransform(): Promise<void> {
    const steps = this.state.pendingPipeline;
    if (steps.length === 0) return;
    const ticket = this.tickets.next();
    this.transformRequests += 1;
    try {
      const payload = await this.api.transform(steps);
      if (!this.tickets.isCurrent(ticket)) return; // superseded: drop
      this.state.appliedPipeline = steps;
      this.invalidPipeline = false;
      applyTransform(this.panels, payload);
      this.panels.banner = null;
    } catch (err) {
      if (!this.tickets.isCurrent(ticket)) return;
      if (err instanceof ApiError && err.status === 400) {
        this.invalidPipeline = true; // slider flagged invalid, panels untouched
      }
      this.panels.banner = describe(err);
    }
    this.render();
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return err.detail;
  if (err instanceof Error) return err.message;
  return String(err);
}
