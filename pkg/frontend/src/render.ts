// SVG/DOM rendering of the five panels. Pure presentation: everything
// drawn comes out of the controller's panel view models.

import { WorkbenchController } from "./controller";
import type { SpacePoint } from "./types";

const SVG_NS = "http://www.w3.org/2000/svg";

const SPLIT_COLORS: Record<string, string> = {
  train: "#4477cc",
  test: "#ee8833",
};

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, v);
  if (text !== undefined) node.textContent = text;
  return node;
}

function svgEl(tag: string, attrs: Record<string, string | number>): SVGElement {
  const node = document.createElementNS(SVG_NS, tag);
  for (const [k, v] of Object.entries(attrs)) node.setAttribute(k, String(v));
  return node;
}

interface Scale {
  (v: number): number;
}

function linearScale(domain: [number, number], range: [number, number]): Scale {
  const span = domain[1] - domain[0] || 1;
  return (v) => range[0] + ((v - domain[0]) / span) * (range[1] - range[0]);
}

function extent(values: number[]): [number, number] {
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!isFinite(lo)) return [0, 1];
  return lo === hi ? [lo - 0.5, hi + 0.5] : [lo, hi];
}

function polyline(points: Array<[number, number]>, stroke: string, width = 1.5): SVGElement {
  return svgEl("polyline", {
    points: points.map(([x, y]) => `${x},${y}`).join(" "),
    fill: "none",
    stroke,
    "stroke-width": width,
  });
}

export function renderScatter(
  container: HTMLElement,
  controller: WorkbenchController,
  width = 480,
  height = 380,
): void {
  const { points, selected, transformed } = controller.panels.a;
  container.textContent = "";
  const svg = svgEl("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  const xs = points.map((p) => p.c0);
  const ys = points.map((p) => p.c1);
  for (const extra of [selected, transformed]) {
    if (extra) {
      xs.push(extra.c0);
      ys.push(extra.c1);
    }
  }
  const sx = linearScale(extent(xs), [20, width - 10]);
  const sy = linearScale(extent(ys), [height - 20, 10]);
  const draw = (p: SpacePoint) => {
    const dot = svgEl("circle", {
      cx: sx(p.c0),
      cy: sy(p.c1),
      r: 3,
      fill: SPLIT_COLORS[p.split] ?? "#888888",
      "fill-opacity": 0.7,
      "data-id": p.id,
      cursor: "pointer",
    });
    dot.addEventListener("click", () => void controller.selectPoint(p.id));
    svg.appendChild(dot);
  };
  points.forEach(draw);
  if (selected) {
    svg.appendChild(svgEl("circle", {
      cx: sx(selected.c0), cy: sy(selected.c1), r: 6,
      fill: "#22aa44", stroke: "#114422", "data-role": "selected-marker",
    }));
  }
  if (transformed) {
    svg.appendChild(svgEl("circle", {
      cx: sx(transformed.c0), cy: sy(transformed.c1), r: 6,
      fill: "#cc2222", stroke: "#551111", "data-role": "transformed-marker",
    }));
  }
  container.appendChild(svg);
}

export function renderHistogram(
  container: HTMLElement,
  controller: WorkbenchController,
  width = 480,
  height = 380,
): void {
  const { histogram: hist, selected, transformed } = controller.panels.a;
  container.textContent = "";
  if (!hist || hist.bins.length === 0) return;
  const svg = svgEl("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  const splits = Object.keys(hist.bins[0].counts).sort();
  const maxCount = Math.max(
    1,
    ...hist.bins.map((b) => splits.reduce((acc, s) => acc + (b.counts[s] ?? 0), 0)),
  );
  const barWidth = (width - 30) / hist.bins.length;
  const axisValue = (p: { c0: number; c1: number }) => (hist.axis === 0 ? p.c0 : p.c1);
  const binOf = (v: number) =>
    hist.bins.findIndex((b, i) => v >= b.lo && (v < b.hi || i === hist.bins.length - 1));
  const selectedBin = selected ? binOf(axisValue(selected)) : -1;
  const transformedBin = transformed ? binOf(axisValue(transformed)) : -1;
  hist.bins.forEach((bin, i) => {
    let yBase = height - 20;
    for (const split of splits) {
      const count = bin.counts[split] ?? 0;
      const h = ((height - 40) * count) / maxCount;
      if (count > 0) {
        svg.appendChild(svgEl("rect", {
          x: 20 + i * barWidth,
          y: yBase - h,
          width: Math.max(1, barWidth - 2),
          height: h,
          fill: SPLIT_COLORS[split] ?? "#888888",
          "fill-opacity": 0.8,
        }));
      }
      yBase -= h;
    }
    // green outline marks the selected series' bin, red the transformed one
    if (i === selectedBin || i === transformedBin) {
      svg.appendChild(svgEl("rect", {
        x: 20 + i * barWidth,
        y: 10,
        width: Math.max(1, barWidth - 2),
        height: height - 30,
        fill: "none",
        stroke: i === transformedBin ? "#cc2222" : "#22aa44",
        "stroke-width": 2,
        "data-role": i === transformedBin ? "transformed-bin" : "selected-bin",
      }));
    }
  });
  container.appendChild(svg);
}

export function renderSeriesPanel(
  container: HTMLElement,
  controller: WorkbenchController,
  width = 980,
  height = 260,
): void {
  const panel = controller.panels.b;
  container.textContent = "";
  if (panel.values.length === 0) {
    container.appendChild(el("p", { class: "placeholder" }, "select a series in the instance space"));
    return;
  }
  const svg = svgEl("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  const all = [...panel.values];
  if (panel.forecast) all.push(...panel.forecast);
  if (panel.transformed) all.push(...panel.transformed);
  const sx = linearScale([0, panel.values.length - 1], [35, width - 10]);
  const sy = linearScale(extent(all), [height - 18, 8]);
  const line = (values: number[], offset: number, color: string, widthPx: number) =>
    polyline(values.map((v, i) => [sx(offset + i), sy(v)] as [number, number]), color, widthPx);
  svg.appendChild(line(panel.values, 0, "#22aa44", 1.5));
  if (panel.transformed) {
    svg.appendChild(line(panel.transformed, 0, "#cc2222", 1.2));
  }
  if (panel.forecast) {
    const start = panel.values.length - panel.forecast.length;
    svg.appendChild(line(panel.forecast, start, "#dd55bb", 2));
  }
  container.appendChild(svg);

  // drag on the plot selects the local-transform interval
  let dragStartIndex: number | null = null;
  const toIndex = (clientX: number) => {
    const rect = (svg as unknown as SVGGraphicsElement).getBoundingClientRect();
    const frac = (clientX - rect.left - 35) / (rect.width - 45);
    const idx = Math.round(frac * (panel.values.length - 1)) + 1;
    return Math.max(1, Math.min(panel.values.length, idx));
  };
  svg.addEventListener("mousedown", (ev) => {
    dragStartIndex = toIndex((ev as MouseEvent).clientX);
  });
  svg.addEventListener("mouseup", (ev) => {
    if (dragStartIndex === null) return;
    const end = toIndex((ev as MouseEvent).clientX);
    const lo = Math.min(dragStartIndex, end);
    const hi = Math.max(dragStartIndex, end);
    dragStartIndex = null;
    if (hi > lo) controller.setLocalInterval(lo, hi);
  });
}

export function renderErrorPanel(
  container: HTMLElement,
  controller: WorkbenchController,
  width = 480,
  height = 260,
): void {
  const panel = controller.panels.c;
  container.textContent = "";
  if (panel.testMean.length === 0) return;
  const svg = svgEl("svg", { width, height, viewBox: `0 0 ${width} ${height}` });
  const all = [...panel.testMean, ...panel.bandLow, ...panel.bandHigh];
  if (panel.selected) all.push(...panel.selected);
  if (panel.transformed) all.push(...panel.transformed);
  const sx = linearScale([0, panel.testMean.length - 1], [35, width - 10]);
  const sy = linearScale(extent(all), [height - 18, 8]);
  const bandPoints = [
    ...panel.bandLow.map((v, i) => `${sx(i)},${sy(v)}`),
    ...[...panel.bandHigh].reverse().map((v, i, arr) => {
      const idx = arr.length - 1 - i;
      return `${sx(idx)},${sy(panel.bandHigh[idx])}`;
    }),
  ].join(" ");
  svg.appendChild(svgEl("polygon", {
    points: bandPoints, fill: "#ee8833", "fill-opacity": 0.25, stroke: "none",
  }));
  svg.appendChild(polyline(panel.testMean.map((v, i) => [sx(i), sy(v)]), "#ee8833", 2));
  if (panel.selected) {
    svg.appendChild(polyline(panel.selected.map((v, i) => [sx(i), sy(v)]), "#22aa44", 1.5));
  }
  if (panel.transformed) {
    svg.appendChild(polyline(panel.transformed.map((v, i) => [sx(i), sy(v)]), "#cc2222", 1.5));
  }
  container.appendChild(svg);
}

export function renderNumericPanel(
  container: HTMLElement,
  controller: WorkbenchController,
  activeTab: "features" | "metrics",
): void {
  const panel = controller.panels.d;
  container.textContent = "";
  const table = el("table", { class: "numeric" });
  const header = el("tr");
  ["", "selected", "transformed"].forEach((h) => header.appendChild(el("th", {}, h)));
  table.appendChild(header);
  const row = (label: string, a: number | null | undefined, b: number | null | undefined) => {
    const tr = el("tr", { "data-row": label });
    tr.appendChild(el("td", {}, label));
    tr.appendChild(el("td", {}, a === null || a === undefined ? "-" : String(a)));
    tr.appendChild(el("td", {}, b === null || b === undefined ? "-" : String(b)));
    table.appendChild(tr);
  };
  if (activeTab === "features") {
    row("trend strength", panel.features?.trend_strength, panel.transformedFeatures?.trend_strength);
    row("seasonal strength", panel.features?.seasonal_strength, panel.transformedFeatures?.seasonal_strength);
    row("trend linearity", panel.features?.trend_linearity, panel.transformedFeatures?.trend_linearity);
    row("trend slope", panel.features?.trend_slope, panel.transformedFeatures?.trend_slope);
  } else {
    row("aggregate", panel.errors?.aggregate, panel.transformedErrors?.aggregate);
    row("test mean", panel.summary?.mean, null);
    row("test median", panel.summary?.median, null);
    row("test std", panel.summary?.std, null);
  }
  container.appendChild(table);
}

export function renderBanner(container: HTMLElement, controller: WorkbenchController): void {
  container.textContent = "";
  if (controller.panels.banner) {
    container.appendChild(el("div", { class: "banner", role: "alert" }, controller.panels.banner));
  }
  if (controller.invalidPipeline) {
    container.appendChild(el("div", { class: "banner invalid" }, "transformation rejected by the API"));
  }
}
