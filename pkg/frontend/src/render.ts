/**
 * Pure view construction: everything shown on screen is a function of the
 * last evaluate response (plus the static parameter names), so replaying
 * the same responses always reproduces the same markup.
 */

import type { EvaluateResponse } from "./api.js";
import { sortWarnings, type SortedWarnings } from "./schema.js";

export interface ViewModel {
  /** panel names in the order their outline paths appear in the SVG */
  panelNames: string[];
  /** server SVG with a hover <title> injected into each panel outline */
  svg: string;
  warnings: SortedWarnings;
}

const OUTLINE_PATH = /<path [^>]*fill="#f3ede2"[^>]*\/>/g;

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

/**
 * Attach a <title> (the browser-native hover label) to every panel
 * outline. The backend draws exactly one outline path per panel, in
 * sorted panel-name order; if the markup does not look like that, it is
 * returned untouched rather than guessed at.
 */
export function injectPanelTitles(svg: string, namesSorted: string[]): string {
  const matches = svg.match(OUTLINE_PATH);
  if (!matches || matches.length !== namesSorted.length) return svg;
  let i = 0;
  return svg.replace(OUTLINE_PATH, (path) => {
    const name = namesSorted[i++];
    return (
      path.slice(0, -2) + ` data-panel="${escapeXml(name)}">` +
      `<title>${escapeXml(name)}</title></path>`
    );
  });
}

export function viewModelOf(
  response: EvaluateResponse | null,
  paramNames: Iterable<string>,
): ViewModel {
  if (response === null) {
    return { panelNames: [], svg: "", warnings: sortWarnings([], paramNames) };
  }
  const panelNames = Object.keys(response.pattern.pattern.panels).sort();
  return {
    panelNames,
    svg: injectPanelTitles(response.svg, panelNames),
    warnings: sortWarnings(response.warnings, paramNames),
  };
}
