import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import type { EvaluateResponse } from "../src/api.js";
import { exportDesign, exportPattern, exportSvg } from "../src/exports.js";

function fixture(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8");
}

const response: EvaluateResponse = JSON.parse(fixture("response_skirt_many_panels.json"));

describe("exports", () => {
  it("exports the pattern byte-for-byte as the CLI writes it", () => {
    const file = exportPattern("skirt_many_panels", response);
    expect(file.text).toBe(fixture("pattern_skirt_many_panels.json"));
    expect(file.filename).toBe("skirt_many_panels_pattern.json");
    expect(file.mime).toBe("application/json");
  });

  it("exports the current values as a replayable design document", () => {
    const file = exportDesign("gather_skirt", {
      band_height: 4,
      fullness: 2.2,
      length_frac: 0.5,
    });
    expect(file.filename).toBe("gather_skirt_design.json");
    expect(file.text.endsWith("\n")).toBe(true);
    expect(JSON.parse(file.text)).toEqual({
      design: { band_height: 4, fullness: 2.2, length_frac: 0.5 },
    });
  });

  it("exports the server SVG verbatim", () => {
    const file = exportSvg("skirt_many_panels", response);
    expect(file.text).toBe(response.svg);
    expect(file.mime).toBe("image/svg+xml");
    expect(file.text).not.toContain("<title>"); // hover titles are viewer-only
  });
});
