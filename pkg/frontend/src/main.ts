/**
 * DOM wiring. All decision making lives in the imported modules; this
 * file moves values between them and the document.
 */

import { HttpApi } from "./api.js";
import { exportDesign, exportPattern, exportSvg, type ExportFile } from "./exports.js";
import { viewModelOf } from "./render.js";
import type { Control } from "./schema.js";
import { ConfiguratorStore, type StoreState } from "./store.js";
import { initialView, panBy, viewBoxOf, zoomAt, type View } from "./viewport.js";

const serviceUrl =
  new URLSearchParams(location.search).get("service") ?? "http://127.0.0.1:8000";

const store = new ConfiguratorStore({ api: new HttpApi(serviceUrl) });

const el = {
  garment: document.getElementById("garment") as HTMLSelectElement,
  bodyFile: document.getElementById("body-file") as HTMLInputElement,
  bodyFields: document.getElementById("body-fields") as HTMLDivElement,
  controls: document.getElementById("controls") as HTMLDivElement,
  status: document.getElementById("status") as HTMLDivElement,
  viewport: document.getElementById("viewport") as HTMLDivElement,
  exportDesign: document.getElementById("export-design") as HTMLButtonElement,
  exportPattern: document.getElementById("export-pattern") as HTMLButtonElement,
  exportSvg: document.getElementById("export-svg") as HTMLButtonElement,
};

// ---------------------------------------------------------------------------
// garment picker
// ---------------------------------------------------------------------------

function renderGarments(state: StoreState): void {
  if (el.garment.options.length === state.garments.length) return;
  el.garment.innerHTML = "";
  for (const g of state.garments) {
    const opt = document.createElement("option");
    opt.value = g.name;
    opt.textContent = g.tags.length ? `${g.name} (${g.tags.join(", ")})` : g.name;
    el.garment.appendChild(opt);
  }
}

el.garment.addEventListener("change", () => {
  void store.selectGarment(el.garment.value);
});

// ---------------------------------------------------------------------------
// style controls (rebuilt on garment switch, updated in place otherwise)
// ---------------------------------------------------------------------------

interface ControlEls {
  input: HTMLInputElement | HTMLSelectElement;
  number?: HTMLInputElement;
  warn: HTMLElement;
}

let controlEls = new Map<string, ControlEls>();
let controlsKey = "";

function buildControl(c: Control): HTMLElement {
  const row = document.createElement("div");
  row.className = "control";
  const label = document.createElement("label");
  label.textContent = c.name.replace(/__/g, " / ");
  row.appendChild(label);

  let input: HTMLInputElement | HTMLSelectElement;
  let number: HTMLInputElement | undefined;
  if (c.kind === "numerical" || c.kind === "integer") {
    input = document.createElement("input");
    input.type = "range";
    number = document.createElement("input");
    number.type = "number";
    for (const i of [input, number]) {
      i.min = String(c.low);
      i.max = String(c.high);
      i.step = String(c.step);
    }
    input.addEventListener("input", () => store.setValue(c.name, input.value));
    number.addEventListener("change", () => store.setValue(c.name, number!.value));
    row.appendChild(input);
    row.appendChild(number);
  } else if (c.kind === "boolean") {
    input = document.createElement("input");
    input.type = "checkbox";
    input.addEventListener("change", () =>
      store.setValue(c.name, (input as HTMLInputElement).checked),
    );
    row.appendChild(input);
  } else {
    input = document.createElement("select");
    for (const opt of c.options ?? []) {
      const o = document.createElement("option");
      o.value = opt;
      o.textContent = opt;
      input.appendChild(o);
    }
    input.addEventListener("change", () => store.setValue(c.name, input.value));
    row.appendChild(input);
  }

  const warn = document.createElement("div");
  warn.className = "warn";
  row.appendChild(warn);
  controlEls.set(c.name, { input, number, warn });
  return row;
}

function renderControls(state: StoreState, warningsByParam: Map<string, string[]>): void {
  const key = state.garment + "|" + state.controls.map((c) => c.name).join(",");
  if (key !== controlsKey) {
    controlsKey = key;
    controlEls = new Map();
    el.controls.innerHTML = "";
    for (const c of state.controls) el.controls.appendChild(buildControl(c));
  }
  for (const c of state.controls) {
    const els = controlEls.get(c.name);
    if (!els) continue;
    const value = state.values[c.name];
    if (c.kind === "numerical" || c.kind === "integer") {
      for (const i of [els.input as HTMLInputElement, els.number!]) {
        i.min = String(c.low);
        i.max = String(c.high);
        i.step = String(c.step);
        if (document.activeElement !== i) i.value = String(value);
      }
    } else if (c.kind === "boolean") {
      (els.input as HTMLInputElement).checked = Boolean(value);
    } else if (document.activeElement !== els.input) {
      els.input.value = String(value);
    }
    const warnings = warningsByParam.get(c.name) ?? [];
    els.warn.textContent = warnings.join("; ");
    els.warn.style.display = warnings.length ? "block" : "none";
  }
}

// ---------------------------------------------------------------------------
// body measurements
// ---------------------------------------------------------------------------

let bodyDoc: { body: Record<string, number> } | null = null;
let bodyFieldsKey = "";

function renderBodyFields(state: StoreState): void {
  const fields = state.schema?.body_fields ?? [];
  const key = fields.join(",");
  if (key !== bodyFieldsKey) {
    bodyFieldsKey = key;
    el.bodyFields.innerHTML = "";
    for (const name of fields) {
      const row = document.createElement("div");
      row.className = "control";
      const label = document.createElement("label");
      label.textContent = name;
      const input = document.createElement("input");
      input.type = "number";
      input.step = "0.5";
      input.dataset.field = name;
      input.addEventListener("change", () => {
        if (bodyDoc === null) return;
        const v = Number(input.value);
        if (Number.isFinite(v) && v > 0) {
          bodyDoc.body[name] = v;
          store.setBody(bodyDoc);
        }
      });
      row.appendChild(label);
      row.appendChild(input);
      el.bodyFields.appendChild(row);
    }
  }
  for (const input of el.bodyFields.querySelectorAll<HTMLInputElement>("input")) {
    input.disabled = bodyDoc === null;
    if (bodyDoc !== null && document.activeElement !== input) {
      const v = bodyDoc.body[input.dataset.field!];
      if (v !== undefined) input.value = String(v);
    } else if (bodyDoc === null) {
      input.placeholder = "service default";
    }
  }
}

el.bodyFile.addEventListener("change", async () => {
  const file = el.bodyFile.files?.[0];
  if (!file) return;
  try {
    const doc = JSON.parse(await file.text());
    const body = typeof doc === "object" && doc !== null && "body" in doc ? doc : { body: doc };
    bodyDoc = body as { body: Record<string, number> };
    store.setBody(bodyDoc);
  } catch (err) {
    el.status.textContent = `body file is not valid JSON: ${err}`;
  }
});

// ---------------------------------------------------------------------------
// SVG viewport with pan/zoom
// ---------------------------------------------------------------------------

let view: View = initialView();
let baseW = 1;
let baseH = 1;
let lastSvg = "";

function svgElement(): SVGSVGElement | null {
  return el.viewport.querySelector("svg");
}

function applyView(): void {
  const svg = svgElement();
  if (svg) svg.setAttribute("viewBox", viewBoxOf(view, baseW, baseH));
}

function renderSvg(markup: string): void {
  if (markup === lastSvg) return;
  const firstDrawing = lastSvg === "";
  lastSvg = markup;
  el.viewport.innerHTML = markup;
  const svg = svgElement();
  if (!svg) return;
  baseW = Number(svg.getAttribute("width")) || 1;
  baseH = Number(svg.getAttribute("height")) || 1;
  svg.removeAttribute("width");
  svg.removeAttribute("height");
  if (firstDrawing) view = initialView();
  applyView();
}

el.viewport.addEventListener("wheel", (e) => {
  e.preventDefault();
  const rect = el.viewport.getBoundingClientRect();
  const factor = e.deltaY < 0 ? 1.15 : 1 / 1.15;
  view = zoomAt(
    view,
    baseW,
    baseH,
    factor,
    (e.clientX - rect.left) / rect.width,
    (e.clientY - rect.top) / rect.height,
  );
  applyView();
});

let dragging: { x: number; y: number } | null = null;
el.viewport.addEventListener("pointerdown", (e) => {
  dragging = { x: e.clientX, y: e.clientY };
  el.viewport.setPointerCapture(e.pointerId);
});
el.viewport.addEventListener("pointermove", (e) => {
  if (!dragging) return;
  const rect = el.viewport.getBoundingClientRect();
  view = panBy(
    view,
    baseW,
    baseH,
    (e.clientX - dragging.x) / rect.width,
    (e.clientY - dragging.y) / rect.height,
  );
  dragging = { x: e.clientX, y: e.clientY };
  applyView();
});
el.viewport.addEventListener("pointerup", () => (dragging = null));
el.viewport.addEventListener("dblclick", () => {
  view = initialView();
  applyView();
});

// ---------------------------------------------------------------------------
// exports
// ---------------------------------------------------------------------------

function download(file: ExportFile): void {
  const url = URL.createObjectURL(new Blob([file.text], { type: file.mime }));
  const a = document.createElement("a");
  a.href = url;
  a.download = file.filename;
  a.click();
  URL.revokeObjectURL(url);
}

el.exportDesign.addEventListener("click", () => {
  if (store.state.garment) download(exportDesign(store.state.garment, store.state.values));
});
el.exportPattern.addEventListener("click", () => {
  const { garment, response } = store.state;
  if (garment && response) download(exportPattern(garment, response));
});
el.exportSvg.addEventListener("click", () => {
  const { garment, response } = store.state;
  if (garment && response) download(exportSvg(garment, response));
});

// ---------------------------------------------------------------------------
// state -> screen
// ---------------------------------------------------------------------------

function renderStatus(state: StoreState, general: string[]): void {
  if (state.error) {
    const path = typeof state.error.path === "string" ? ` (${state.error.path})` : "";
    el.status.textContent = `${state.error.code}: ${state.error.message}${path}`;
    el.status.className = "error";
    return;
  }
  const parts: string[] = [];
  if (state.busy) parts.push("evaluating…");
  parts.push(...general);
  el.status.textContent = parts.join("  ");
  el.status.className = state.busy ? "busy" : "";
}

store.subscribe((state) => {
  renderGarments(state);
  if (state.garment) el.garment.value = state.garment;
  const vm = viewModelOf(state.response, Object.keys(state.values));
  renderControls(state, vm.warnings.byParam);
  renderBodyFields(state);
  if (vm.svg) renderSvg(vm.svg);
  renderStatus(state, vm.warnings.general);
  const haveResult = state.response !== null;
  el.exportPattern.disabled = !haveResult;
  el.exportSvg.disabled = !haveResult;
  el.exportDesign.disabled = state.garment === null;
});

void store.init().catch((err) => {
  el.status.textContent = `cannot reach the pattern service at ${serviceUrl}: ${err}`;
  el.status.className = "error";
});
