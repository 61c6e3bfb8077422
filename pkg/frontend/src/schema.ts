/**
 * Schema-driven form model: turn a garment's parameter schema into typed
 * control descriptors, clamp user input to the displayed ranges, and
 * attach server clamp warnings to the control that caused them.
 */

import type { GarmentSchema, ParamKind, SchemaParam } from "./api.js";

export interface Control {
  name: string;
  kind: ParamKind;
  value: number | boolean | string;
  /** numerical/integer: displayed bounds, mirroring the latest schema */
  low?: number;
  high?: number;
  step?: number;
  /** categorical only */
  options?: string[];
  dependsOn: string[];
}

function numericControl(name: string, p: SchemaParam): Control {
  const low = Number(p.low);
  const high = Number(p.high);
  const step =
    p.type === "integer" ? 1 : Math.max((high - low) / 200, 1e-6);
  return {
    name,
    kind: p.type,
    value: Number(p.value),
    low,
    high,
    step,
    dependsOn: p.depends_on ?? [],
  };
}

/** Controls in schema resolution order. */
export function controlsOf(schema: GarmentSchema): Control[] {
  return schema.order.map((name) => {
    const p = schema.params[name];
    if (p.type === "numerical" || p.type === "integer") {
      return numericControl(name, p);
    }
    if (p.type === "categorical") {
      return {
        name,
        kind: p.type,
        value: String(p.value),
        options: (p.options ?? []).map(String),
        dependsOn: p.depends_on ?? [],
      };
    }
    return { name, kind: p.type, value: Boolean(p.value), dependsOn: p.depends_on ?? [] };
  });
}

/**
 * Coerce raw input to a value inside the control's displayed range.
 * Unparseable input keeps the current value, so a control can never
 * submit anything outside what it shows.
 */
export function clampToControl(control: Control, raw: unknown): number | boolean | string {
  switch (control.kind) {
    case "boolean":
      return typeof raw === "string" ? raw === "true" || raw === "on" : Boolean(raw);
    case "categorical": {
      const v = String(raw);
      return control.options && control.options.includes(v) ? v : control.value;
    }
    case "integer": {
      const n = Math.round(Number(raw));
      if (!Number.isFinite(n)) return control.value;
      return Math.min(Math.max(n, Math.ceil(control.low!)), Math.floor(control.high!));
    }
    case "numerical": {
      const n = Number(raw);
      if (!Number.isFinite(n)) return control.value;
      return Math.min(Math.max(n, control.low!), control.high!);
    }
  }
}

/** Current control values as the bare-value design document the service
 * merges over the garment template. */
export function designDocOf(values: Record<string, number | boolean | string>): {
  design: Record<string, number | boolean | string>;
} {
  return { design: { ...values } };
}

export interface SortedWarnings {
  /** warnings attributable to one parameter, keyed by its name */
  byParam: Map<string, string[]>;
  /** everything else */
  general: string[];
}

/**
 * Split warning lines between controls and the general pile. Clamp
 * warnings start with the parameter name followed by a colon.
 */
export function sortWarnings(warnings: string[], paramNames: Iterable<string>): SortedWarnings {
  const known = new Set(paramNames);
  const byParam = new Map<string, string[]>();
  const general: string[] = [];
  for (const line of warnings) {
    const colon = line.indexOf(":");
    const name = colon > 0 ? line.slice(0, colon) : "";
    if (known.has(name)) {
      const rest = line.slice(colon + 1).trim();
      const list = byParam.get(name) ?? [];
      list.push(rest);
      byParam.set(name, list);
    } else {
      general.push(line);
    }
  }
  return { byParam, general };
}
