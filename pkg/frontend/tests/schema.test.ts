import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import type { GarmentSchema } from "../src/api.js";
import { clampToControl, controlsOf, designDocOf, sortWarnings, type Control } from "../src/schema.js";

function schemaFixture(name: string): GarmentSchema {
  return JSON.parse(
    readFileSync(new URL(`./fixtures/${name}`, import.meta.url), "utf-8"),
  );
}

describe("controlsOf", () => {
  it("builds controls in schema order with resolved bounds", () => {
    const schema = schemaFixture("schema_gather_skirt.json");
    const controls = controlsOf(schema);
    expect(controls.map((c) => c.name)).toEqual(schema.order);
    const band = controls.find((c) => c.name === "band_height")!;
    expect(band.kind).toBe("numerical");
    expect(band.low).toBe(2);
    expect(band.high).toBe(6);
    const frac = controls.find((c) => c.name === "length_frac")!;
    expect(frac.low!).toBeLessThan(frac.high!);
    expect(frac.dependsOn).toContain("band_height");
  });

  it("maps every parameter kind to a matching control kind", () => {
    const controls = controlsOf(schemaFixture("schema_meta_garment.json"));
    const kinds = new Set(controls.map((c) => c.kind));
    expect(kinds).toContain("numerical");
    expect(kinds).toContain("integer");
    expect(kinds).toContain("categorical");
    const bottom = controls.find((c) => c.name === "bottom")!;
    expect(bottom.options).toContain("pencil_skirt");
    expect(bottom.options).toContain("skirt_many_panels");
    for (const c of controls) {
      if (c.kind === "integer") expect(c.step).toBe(1);
    }
  });
});

describe("clampToControl", () => {
  const numeric: Control = {
    name: "w", kind: "numerical", value: 10, low: 2, high: 16, step: 0.07, dependsOn: [],
  };
  const integer: Control = {
    name: "n", kind: "integer", value: 4, low: 2, high: 12, step: 1, dependsOn: [],
  };
  const cat: Control = {
    name: "c", kind: "categorical", value: "round", options: ["round", "v"], dependsOn: [],
  };
  const flag: Control = { name: "b", kind: "boolean", value: false, dependsOn: [] };

  it("never returns a value outside the displayed range", () => {
    expect(clampToControl(numeric, 99)).toBe(16);
    expect(clampToControl(numeric, -5)).toBe(2);
    expect(clampToControl(numeric, "7.25")).toBe(7.25);
    expect(clampToControl(numeric, "not a number")).toBe(10);
    expect(clampToControl(integer, 3.6)).toBe(4);
    expect(clampToControl(integer, 99)).toBe(12);
    expect(clampToControl(integer, 0)).toBe(2);
  });

  it("rejects unknown categorical options and coerces booleans", () => {
    expect(clampToControl(cat, "v")).toBe("v");
    expect(clampToControl(cat, "hexagon")).toBe("round");
    expect(clampToControl(flag, "true")).toBe(true);
    expect(clampToControl(flag, "off")).toBe(false);
    expect(clampToControl(flag, 1)).toBe(true);
  });
});

describe("sortWarnings", () => {
  it("attaches clamp warnings to their parameter", () => {
    const line = "collar_width: value 99 outside range [12, 16], clamped to 16";
    const sorted = sortWarnings([line, "panel count reduced"], ["collar_width", "n_panels"]);
    expect(sorted.byParam.get("collar_width")).toEqual([
      "value 99 outside range [12, 16], clamped to 16",
    ]);
    expect(sorted.general).toEqual(["panel count reduced"]);
  });

  it("routes warnings for unknown names to the general pile", () => {
    const sorted = sortWarnings(["mystery: something"], ["collar_width"]);
    expect(sorted.byParam.size).toBe(0);
    expect(sorted.general).toEqual(["mystery: something"]);
  });
});

describe("designDocOf", () => {
  it("wraps bare values so the service merges them over the template", () => {
    const doc = designDocOf({ n_panels: 6, with_cuff: true, bottom: "pencil_skirt" });
    expect(doc).toEqual({
      design: { n_panels: 6, with_cuff: true, bottom: "pencil_skirt" },
    });
  });
});
