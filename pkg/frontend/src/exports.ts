/**
 * Download payload builders. The pattern export reproduces the backend
 * CLI's bytes exactly; the SVG export is the server's markup verbatim
 * (without the hover titles the viewport injects).
 */

import type { EvaluateResponse } from "./api.js";
import { canonicalPatternJson } from "./canonical.js";

export interface ExportFile {
  filename: string;
  mime: string;
  text: string;
}

export function exportDesign(
  garment: string,
  values: Record<string, number | boolean | string>,
): ExportFile {
  return {
    filename: `${garment}_design.json`,
    mime: "application/json",
    text: JSON.stringify({ design: values }, null, 2) + "\n",
  };
}

export function exportPattern(garment: string, response: EvaluateResponse): ExportFile {
  return {
    filename: `${garment}_pattern.json`,
    mime: "application/json",
    text: canonicalPatternJson(response.pattern),
  };
}

export function exportSvg(garment: string, response: EvaluateResponse): ExportFile {
  return {
    filename: `${garment}_pattern.svg`,
    mime: "image/svg+xml",
    text: response.svg,
  };
}
