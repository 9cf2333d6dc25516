// Workbench bootstrap: builds the panel layout, wires sliders and tabs
// to the controller, and re-renders on every controller update.

import { ApiClient } from "./api";
import { WorkbenchController } from "./controller";
import {
  renderBanner,
  renderErrorPanel,
  renderHistogram,
  renderNumericPanel,
  renderScatter,
  renderSeriesPanel,
} from "./render";

interface SliderSpec {
  label: string;
  min: number;
  max: number;
  step: number;
  initial: number;
  apply: (c: WorkbenchController, v: number) => void;
}

const GLOBAL_SLIDERS: SliderSpec[] = [
  { label: "trend strength (f)", min: -3, max: 5, step: 0.1, initial: 1,
    apply: (c, v) => c.setSlider("f", v) },
  { label: "trend linearity (h)", min: 0.1, max: 10, step: 0.1, initial: 1,
    apply: (c, v) => c.setSlider("h", v) },
  { label: "trend slope (m)", min: -0.05, max: 0.05, step: 0.001, initial: 0,
    apply: (c, v) => c.setSlider("m", v) },
  { label: "seasonal strength (k)", min: -2, max: 5, step: 0.1, initial: 1,
    apply: (c, v) => c.setSlider("k", v) },
  { label: "noise fraction", min: 0, max: 1, step: 0.05, initial: 0,
    apply: (c, v) => c.setSlider("noiseFraction", v) },
  { label: "noise scale", min: 0, max: 2, step: 0.05, initial: 0,
    apply: (c, v) => c.setSlider("noiseScale", v) },
];

const LOCAL_SLIDERS: SliderSpec[] = [
  { label: "vertical shift", min: -100, max: 100, step: 1, initial: 0,
    apply: (c, v) => c.setLocal("translate", v) },
  { label: "seasonal strength (k)", min: -2, max: 5, step: 0.1, initial: 1,
    apply: (c, v) => c.setLocal("k", v) },
  { label: "noise fraction", min: 0, max: 1, step: 0.05, initial: 0,
    apply: (c, v) => c.setLocal("noiseFraction", v) },
  { label: "noise scale", min: 0, max: 2, step: 0.05, initial: 0,
    apply: (c, v) => c.setLocal("noiseScale", v) },
];

function sliderRow(spec: SliderSpec, controller: WorkbenchController): HTMLElement {
  const row = document.createElement("label");
  row.className = "slider-row";
  const caption = document.createElement("span");
  caption.textContent = spec.label;
  const value = document.createElement("span");
  value.className = "slider-value";
  value.textContent = String(spec.initial);
  const input = document.createElement("input");
  input.type = "range";
  input.min = String(spec.min);
  input.max = String(spec.max);
  input.step = String(spec.step);
  input.value = String(spec.initial);
  input.addEventListener("input", () => {
    value.textContent = input.value;
    spec.apply(controller, Number(input.value));
  });
  row.append(caption, input, value);
  return row;
}

function tabbed(tabs: Array<[string, HTMLElement]>): HTMLElement {
  const root = document.createElement("div");
  root.className = "tabbed";
  const bar = document.createElement("div");
  bar.className = "tab-bar";
  const bodies: HTMLElement[] = [];
  tabs.forEach(([name, body], i) => {
    const button = document.createElement("button");
    button.textContent = name;
    button.addEventListener("click", () => {
      bodies.forEach((b, j) => (b.style.display = i === j ? "block" : "none"));
    });
    bar.appendChild(button);
    body.style.display = i === 0 ? "block" : "none";
    bodies.push(body);
  });
  root.appendChild(bar);
  tabs.forEach(([, body]) => root.appendChild(body));
  return root;
}

export function boot(root: HTMLElement, baseUrl = ""): WorkbenchController {
  const controller = new WorkbenchController(new ApiClient(baseUrl));

  root.innerHTML = `
    <div id="banner"></div>
    <div class="grid">
      <section id="panel-a"><div class="tab-bar" id="view-tabs"></div><div id="space-view"></div></section>
      <section id="panel-c"><h3>horizon errors</h3><div id="error-view"></div></section>
      <section id="panel-d"><div id="numeric-tabs"></div></section>
      <section id="panel-b"><h3>series</h3><div id="series-view"></div></section>
      <section id="panel-e"><h3>transformations</h3><div id="transform-tabs"></div></section>
    </div>`;

  const spaceView = root.querySelector<HTMLElement>("#space-view")!;
  const seriesView = root.querySelector<HTMLElement>("#series-view")!;
  const errorView = root.querySelector<HTMLElement>("#error-view")!;
  const bannerView = root.querySelector<HTMLElement>("#banner")!;

  // panel A view switcher
  const viewTabs = root.querySelector<HTMLElement>("#view-tabs")!;
  (["scatter", "histogram"] as const).forEach((view) => {
    const button = document.createElement("button");
    button.textContent = view;
    button.addEventListener("click", () => controller.setView(view));
    viewTabs.appendChild(button);
  });

  // panel D tabs
  let numericTab: "features" | "metrics" = "features";
  const numericBody = document.createElement("div");
  const numericTabs = root.querySelector<HTMLElement>("#numeric-tabs")!;
  (["features", "metrics"] as const).forEach((tab) => {
    const button = document.createElement("button");
    button.textContent = tab === "features" ? "feature values" : "metric scores";
    button.addEventListener("click", () => {
      numericTab = tab;
      renderNumericPanel(numericBody, controller, numericTab);
    });
    numericTabs.appendChild(button);
  });
  numericTabs.appendChild(numericBody);

  // panel E: global / local / general transformation tabs
  const globalBody = document.createElement("div");
  GLOBAL_SLIDERS.forEach((spec) => globalBody.appendChild(sliderRow(spec, controller)));

  const localBody = document.createElement("div");
  const hint = document.createElement("p");
  hint.className = "hint";
  hint.textContent = "drag on the series plot to choose the interval";
  localBody.appendChild(hint);
  LOCAL_SLIDERS.forEach((spec) => localBody.appendChild(sliderRow(spec, controller)));

  const generalBody = document.createElement("div");
  const shift: SliderSpec = {
    label: "vertical shift (whole series)", min: -100, max: 100, step: 1, initial: 0,
    apply: (c, v) => c.setGeneralShift(v),
  };
  generalBody.appendChild(sliderRow(shift, controller));
  const reset = document.createElement("button");
  reset.textContent = "reset to identity";
  reset.addEventListener("click", () => controller.resetSliders());
  generalBody.appendChild(reset);

  root.querySelector<HTMLElement>("#transform-tabs")!.appendChild(
    tabbed([
      ["feature transformations", globalBody],
      ["local transformations", localBody],
      ["general transformations", generalBody],
    ]),
  );

  controller.onRender = () => {
    if (controller.state.activeView === "scatter") {
      renderScatter(spaceView, controller);
    } else {
      renderHistogram(spaceView, controller);
    }
    renderSeriesPanel(seriesView, controller);
    renderErrorPanel(errorView, controller);
    renderNumericPanel(numericBody, controller, numericTab);
    renderBanner(bannerView, controller);
  };

  void controller.loadOverview();
  return controller;
}

declare global {
  interface Window {
    tsprobeWorkbench?: WorkbenchController;
  }
}

if (typeof document !== "undefined" && document.getElementById("workbench-root")) {
  window.tsprobeWorkbench = boot(document.getElementById("workbench-root")!);
}
