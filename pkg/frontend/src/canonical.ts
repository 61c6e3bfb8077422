/**
 * Canonical pattern-file serialization.
 *
 * Exported pattern files must be byte-identical to the files the backend
 * CLI writes: keys sorted, 2-space indent, trailing newline, and floats
 * printed the way the backend prints them. JSON.stringify gets the digits
 * right (both sides use shortest round-trip formatting of IEEE doubles)
 * but disagrees on presentation: it writes `0` where the backend writes
 * `0.0` and `0.000001` where the backend writes `1e-06`. Since parsing
 * erases the int/float distinction, the pattern schema's integer fields
 * (edge endpoint indices, stitch edge indices, units_in_meter) are known
 * by name and everything else numeric is formatted as a float.
 */

/** Format a finite double exactly like the backend's float formatter. */
export function pyFloatRepr(x: number): string {
  if (!Number.isFinite(x)) {
    throw new Error(`cannot serialize non-finite number ${x}`);
  }
  if (x === 0) {
    return Object.is(x, -0) ? "-0.0" : "0.0";
  }
  const neg = x < 0;
  const s = Math.abs(x).toString();

  // decompose into significant digits and a power-of-ten exponent
  // (d1.d2...dk * 10^p form)
  let digits: string;
  let p: number;
  const e = s.indexOf("e");
  if (e >= 0) {
    const mant = s.slice(0, e);
    p = parseInt(s.slice(e + 1), 10);
    digits = mant.replace(".", "");
  } else {
    const dot = s.indexOf(".");
    if (dot < 0) {
      digits = s;
      p = s.length - 1;
    } else if (s.startsWith("0.")) {
      const frac = s.slice(2);
      let lead = 0;
      while (lead < frac.length && frac[lead] === "0") lead++;
      digits = frac.slice(lead);
      p = -lead - 1;
    } else {
      digits = s.slice(0, dot) + s.slice(dot + 1);
      p = dot - 1;
    }
  }
  digits = digits.replace(/0+$/, "") || "0";

  let out: string;
  if (p >= -4 && p < 16) {
    if (p >= 0) {
      if (digits.length <= p + 1) {
        out = digits.padEnd(p + 1, "0") + ".0";
      } else {
        out = digits.slice(0, p + 1) + "." + digits.slice(p + 1);
      }
    } else {
      out = "0." + "0".repeat(-p - 1) + digits;
    }
  } else {
    const mant = digits.length > 1 ? digits[0] + "." + digits.slice(1) : digits;
    const exp = String(Math.abs(p)).padStart(2, "0");
    out = `${mant}e${p < 0 ? "-" : "+"}${exp}`;
  }
  return neg ? "-" + out : out;
}

/** Backend-compatible string escaping (ASCII-only output). */
function escapeString(s: string): string {
  let out = '"';
  for (let i = 0; i < s.length; i++) {
    const c = s.charCodeAt(i);
    const ch = s[i];
    if (ch === '"') out += '\\"';
    else if (ch === "\\") out += "\\\\";
    else if (ch === "\n") out += "\\n";
    else if (ch === "\r") out += "\\r";
    else if (ch === "\t") out += "\\t";
    else if (ch === "\b") out += "\\b";
    else if (ch === "\f") out += "\\f";
    else if (c < 0x20 || c > 0x7e) out += "\\u" + c.toString(16).padStart(4, "0");
    else out += ch;
  }
  return out + '"';
}

// pattern-schema fields whose numbers are integers; all other numbers in a
// pattern document are floats
const INT_KEYS = new Set(["endpoints", "edge", "units_in_meter"]);

function emit(value: unknown, depth: number, ints: boolean): string {
  if (typeof value === "string") return escapeString(value);
  if (typeof value === "boolean") return value ? "true" : "false";
  if (typeof value === "number") {
    if (ints) {
      if (!Number.isInteger(value)) {
        throw new Error(`integer field holds non-integer ${value}`);
      }
      return String(value);
    }
    return pyFloatRepr(value);
  }
  const pad = "  ".repeat(depth);
  const inner = "  ".repeat(depth + 1);
  if (Array.isArray(value)) {
    if (value.length === 0) return "[]";
    const items = value.map((v) => inner + emit(v, depth + 1, ints));
    return "[\n" + items.join(",\n") + "\n" + pad + "]";
  }
  if (value !== null && typeof value === "object") {
    const keys = Object.keys(value as Record<string, unknown>).sort();
    if (keys.length === 0) return "{}";
    const items = keys.map((k) => {
      const child = (value as Record<string, unknown>)[k];
      return inner + escapeString(k) + ": " + emit(child, depth + 1, INT_KEYS.has(k));
    });
    return "{\n" + items.join(",\n") + "\n" + pad + "}";
  }
  throw new Error(`cannot serialize value of type ${typeof value}`);
}

/**
 * The exact bytes the backend CLI would write for this pattern document.
 */
export function canonicalPatternJson(doc: unknown): string {
  return emit(doc, 0, false) + "\n";
}
