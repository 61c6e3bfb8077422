/**
 * Typed client for the pattern service. The configurator talks to the
 * backend through this module only; everything else is pure logic on the
 * response payloads.
 */

export type ParamKind = "numerical" | "integer" | "boolean" | "categorical";

export interface SchemaParam {
  type: ParamKind;
  value: number | boolean | string;
  low?: number;
  high?: number;
  range?: unknown[];
  options?: string[];
  depends_on?: string[];
}

export interface GarmentSchema {
  garment: string;
  tags: string[];
  body_fields: string[];
  order: string[];
  params: Record<string, SchemaParam>;
  warnings: string[];
}

export interface GarmentListing {
  name: string;
  tags: string[];
}

/** Panel/stitch document exactly as serialized by the backend. */
export interface PatternDoc {
  pattern: {
    panels: Record<string, unknown>;
    stitches: unknown[];
  };
  properties: Record<string, unknown>;
}

export interface EvaluateResponse {
  pattern: PatternDoc;
  svg: string;
  warnings: string[];
}

/** Structured error report the service returns for every failure. */
export interface ServiceReport {
  code: string;
  message: string;
  [detail: string]: unknown;
}

export class ServiceError extends Error {
  constructor(
    readonly status: number,
    readonly report: ServiceReport,
  ) {
    super(report.message ?? `service error ${status}`);
    this.name = "ServiceError";
  }
}

export interface EvalPayload {
  body?: unknown;
  design?: unknown;
}

export interface Api {
  listGarments(signal?: AbortSignal): Promise<GarmentListing[]>;
  schema(name: string, payload: EvalPayload | null, signal?: AbortSignal): Promise<GarmentSchema>;
  evaluate(name: string, payload: EvalPayload, signal?: AbortSignal): Promise<EvaluateResponse>;
}

export class HttpApi implements Api {
  constructor(private readonly baseUrl: string = "") {}

  private async request<T>(path: string, init: RequestInit, signal?: AbortSignal): Promise<T> {
    const resp = await fetch(this.baseUrl + path, { ...init, signal });
    let doc: unknown;
    try {
      doc = await resp.json();
    } catch {
      throw new ServiceError(resp.status, {
        code: "format",
        message: `service returned non-JSON (HTTP ${resp.status})`,
      });
    }
    if (!resp.ok) {
      throw new ServiceError(resp.status, doc as ServiceReport);
    }
    return doc as T;
  }

  private post<T>(path: string, payload: unknown, signal?: AbortSignal): Promise<T> {
    return this.request<T>(
      path,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify(payload),
      },
      signal,
    );
  }

  async listGarments(signal?: AbortSignal): Promise<GarmentListing[]> {
    const doc = await this.request<{ garments: GarmentListing[] }>("/garments", {}, signal);
    return doc.garments;
  }

  schema(name: string, payload: EvalPayload | null, signal?: AbortSignal): Promise<GarmentSchema> {
    const path = `/garments/${encodeURIComponent(name)}/schema`;
    if (payload === null) {
      return this.request<GarmentSchema>(path, {}, signal);
    }
    return this.post<GarmentSchema>(path, payload, signal);
  }

  evaluate(name: string, payload: EvalPayload, signal?: AbortSignal): Promise<EvaluateResponse> {
    return this.post<EvaluateResponse>(
      `/garments/${encodeURIComponent(name)}/evaluate`,
      payload,
      signal,
    );
  }
}
