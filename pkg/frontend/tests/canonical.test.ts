import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import { canonicalPatternJson, pyFloatRepr } from "../src/canonical.js";

function fixture(name: string): string {
  return readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8");
}

describe("pyFloatRepr", () => {
  it("matches the backend formatter on the oracle table", () => {
    const cases: [number, string][] = JSON.parse(fixture("float_repr_cases.json"));
    expect(cases.length).toBeGreaterThan(400);
    for (const [value, want] of cases) {
      expect(pyFloatRepr(value), `value ${value}`).toBe(want);
    }
  });

  it("rejects non-finite input", () => {
    expect(() => pyFloatRepr(Infinity)).toThrow();
    expect(() => pyFloatRepr(NaN)).toThrow();
  });
});

describe("canonicalPatternJson", () => {
  const patternFixtures = [
    "pattern_skirt_many_panels.json",
    "pattern_meta_garment.json",
    "pattern_edge_numbers.json",
  ];

  for (const name of patternFixtures) {
    it(`reproduces the backend CLI bytes of ${name}`, () => {
      const bytes = fixture(name);
      expect(canonicalPatternJson(JSON.parse(bytes))).toBe(bytes);
    });
  }

  it("turns a service evaluate response into the exact CLI file", () => {
    // same garment, same body: the CLI wrote pattern_skirt_many_panels.json
    // and the captured response came over the wire from the service
    const response = JSON.parse(fixture("response_skirt_many_panels.json"));
    expect(canonicalPatternJson(response.pattern)).toBe(
      fixture("pattern_skirt_many_panels.json"),
    );
  });

  it("is idempotent through a parse round trip", () => {
    const doc = JSON.parse(fixture("pattern_meta_garment.json"));
    const once = canonicalPatternJson(doc);
    expect(canonicalPatternJson(JSON.parse(once))).toBe(once);
  });

  it("keeps integer fields integral and everything else float", () => {
    const text = canonicalPatternJson({
      edge: 3,
      endpoints: [0, 1],
      units_in_meter: 100,
      vertices: [[0, 25]],
    });
    expect(text).toContain('"edge": 3');
    expect(text).toContain('"units_in_meter": 100');
    expect(text).toMatch(/"endpoints": \[\n\s+0,\n\s+1\n/);
    expect(text).toContain("0.0");
    expect(text).toContain("25.0");
  });

  it("escapes strings the way the backend does", () => {
    expect(canonicalPatternJson({ a: "café\n" })).toBe(
      '{\n  "a": "caf\\u00e9\\n"\n}\n',
    );
  });

  it("writes empty containers inline", () => {
    expect(canonicalPatternJson({ stitches: [], properties: {} })).toBe(
      '{\n  "properties": {},\n  "stitches": []\n}\n',
    );
  });
});
