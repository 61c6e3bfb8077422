/**
 * Configurator state machine, free of any DOM dependency.
 *
 * Edits are debounced (300 ms); when the timer settles, exactly one
 * evaluation request goes out. A fresh edit while one is in flight aborts
 * it, and a response that is not the latest one scheduled is dropped, so
 * the state only ever reflects the newest inputs (latest wins). After
 * every successful evaluation the schema is re-fetched with the current
 * values so dependent ranges (and the values the server clamped) come
 * back without duplicating the dependency logic client-side.
 */

import type { Api, EvaluateResponse, GarmentListing, GarmentSchema, ServiceReport } from "./api.js";
import { ServiceError } from "./api.js";
import { clampToControl, controlsOf, designDocOf, type Control } from "./schema.js";

export const DEBOUNCE_MS = 300;

export interface StoreState {
  garments: GarmentListing[];
  garment: string | null;
  schema: GarmentSchema | null;
  controls: Control[];
  values: Record<string, number | boolean | string>;
  /** full body document ({"body": {...}}), null until a file is loaded */
  body: unknown | null;
  response: EvaluateResponse | null;
  error: ServiceReport | null;
  busy: boolean;
  /** completed (non-stale) evaluations, for tests and status display */
  settled: number;
}

export interface StoreDeps {
  api: Api;
  debounceMs?: number;
  schedule?: (fn: () => void, ms: number) => unknown;
  cancel?: (handle: unknown) => void;
}

type Listener = (state: StoreState) => void;

export class ConfiguratorStore {
  readonly state: StoreState = {
    garments: [],
    garment: null,
    schema: null,
    controls: [],
    values: {},
    body: null,
    response: null,
    error: null,
    busy: false,
    settled: 0,
  };

  private readonly api: Api;
  private readonly debounceMs: number;
  private readonly scheduleFn: (fn: () => void, ms: number) => unknown;
  private readonly cancelFn: (handle: unknown) => void;
  private listeners: Listener[] = [];
  private timer: unknown = null;
  private inflight: AbortController | null = null;
  private seq = 0;

  constructor(deps: StoreDeps) {
    this.api = deps.api;
    this.debounceMs = deps.debounceMs ?? DEBOUNCE_MS;
    this.scheduleFn = deps.schedule ?? ((fn, ms) => setTimeout(fn, ms));
    this.cancelFn = deps.cancel ?? ((h) => clearTimeout(h as ReturnType<typeof setTimeout>));
  }

  subscribe(fn: Listener): () => void {
    this.listeners.push(fn);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== fn);
    };
  }

  private emit(): void {
    for (const fn of this.listeners) fn(this.state);
  }

  async init(): Promise<void> {
    this.state.garments = await this.api.listGarments();
    this.emit();
    if (this.state.garments.length > 0) {
      await this.selectGarment(this.state.garments[0].name);
    }
  }

  /** A change was accepted: whatever is in flight no longer reflects the
   * current inputs and must never be adopted. */
  private invalidate(): void {
    this.seq += 1;
    this.inflight?.abort();
    this.inflight = null;
    this.state.busy = false;
  }

  async selectGarment(name: string): Promise<void> {
    this.invalidate();
    this.state.garment = name;
    this.state.response = null;
    this.state.error = null;
    try {
      const schema = await this.api.schema(name, this.payload(null));
      this.adoptSchema(schema);
    } catch (err) {
      this.fail(err);
      this.emit();
      return;
    }
    this.emit();
    this.scheduleEvaluate();
  }

  setValue(name: string, raw: unknown): void {
    const control = this.state.controls.find((c) => c.name === name);
    if (!control) return;
    const value = clampToControl(control, raw);
    if (value === this.state.values[name]) return;
    this.invalidate();
    this.state.values[name] = value;
    control.value = value;
    this.emit();
    this.scheduleEvaluate();
  }

  /** Accepts either a bare measurement map or a {"body": {...}} document. */
  setBody(doc: unknown): void {
    if (doc === null || typeof doc !== "object") return;
    const wrapped = "body" in (doc as Record<string, unknown>) ? doc : { body: doc };
    this.invalidate();
    this.state.body = wrapped;
    this.emit();
    this.scheduleEvaluate();
  }

  private payload(design: { design: Record<string, unknown> } | null) {
    const out: { body?: unknown; design?: unknown } = {};
    if (this.state.body !== null) out.body = this.state.body;
    if (design !== null) out.design = design;
    return out;
  }

  private adoptSchema(schema: GarmentSchema): void {
    this.state.schema = schema;
    this.state.controls = controlsOf(schema);
    this.state.values = {};
    for (const c of this.state.controls) this.state.values[c.name] = c.value;
  }

  private scheduleEvaluate(): void {
    if (this.timer !== null) this.cancelFn(this.timer);
    this.timer = this.scheduleFn(() => {
      this.timer = null;
      void this.fire();
    }, this.debounceMs);
  }

  private fail(err: unknown): void {
    if (err instanceof ServiceError) {
      this.state.error = err.report;
    } else {
      this.state.error = { code: "network", message: String(err) };
    }
  }

  private async fire(): Promise<void> {
    if (this.state.garment === null) return;
    const seq = ++this.seq;
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    this.state.busy = true;
    this.emit();
    const garment = this.state.garment;
    const payload = this.payload(designDocOf(this.state.values));
    try {
      const response = await this.api.evaluate(garment, payload, controller.signal);
      if (seq !== this.seq) return; // a newer evaluation superseded this one
      this.state.response = response;
      this.state.error = null;
      // refresh dependent ranges and adopt server-side clamps
      const schema = await this.api.schema(garment, payload, controller.signal);
      if (seq !== this.seq) return;
      this.adoptSchema(schema);
    } catch (err) {
      if (controller.signal.aborted || seq !== this.seq) return;
      this.fail(err);
    } finally {
      if (seq === this.seq) {
        this.state.busy = false;
        this.state.settled += 1;
        this.inflight = null;
        this.emit();
      }
    }
  }
}
