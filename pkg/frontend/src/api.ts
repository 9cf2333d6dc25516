// Thin JSON client over the workbench API. The fetch implementation is
// injectable so tests can replay a recorded fixture.

import type {
  DatasetMeta,
  ErrorSummaryPayload,
  InstanceSpacePayload,
  SelectResponse,
  SeriesPayload,
  TransformResponse,
  TransformStepJson,
} from "./types";

export type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`API ${status}: ${detail}`);
  }
}

export class ApiClient {
  constructor(
    private baseUrl: string = "",
    private fetchImpl: FetchLike = (url, init) => fetch(url, init),
  ) {}

  private async request<T>(method: "GET" | "POST", path: string, body?: unknown): Promise<T> {
    const init: RequestInit = { method };
    if (body !== undefined) {
      init.headers = { "content-type": "application/json" };
      init.body = JSON.stringify(body);
    }
    const resp = await this.fetchImpl(this.baseUrl + path, init);
    const payload = await resp.json();
    if (!resp.ok) {
      const detail = payload && typeof payload.detail === "string"
        ? payload.detail
        : `request failed (${resp.status})`;
      throw new ApiError(resp.status, detail);
    }
    return payload as T;
  }

  datasetMeta(): Promise<DatasetMeta> {
    return this.request("GET", "/dataset/meta");
  }

  instanceSpace(): Promise<InstanceSpacePayload> {
    return this.request("GET", "/instance-space");
  }

  series(id: string): Promise<SeriesPayload> {
    return this.request("GET", `/series/${encodeURIComponent(id)}`);
  }

  features(id: string): Promise<SelectResponse["features"] & { id: string }> {
    return this.request("GET", `/features/${encodeURIComponent(id)}`);
  }

  errorSummary(metric = "mase"): Promise<ErrorSummaryPayload> {
    return this.request("GET", `/errors/summary?metric=${metric}`);
  }

  select(id: string): Promise<SelectResponse> {
    return this.request("POST", "/select", { id });
  }

  transform(steps: TransformStepJson[]): Promise<TransformResponse> {
    return this.request("POST", "/transform", { steps });
  }
}
