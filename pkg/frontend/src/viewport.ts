/**
 * Pan/zoom state for the SVG viewport, expressed as a viewBox over the
 * drawing's natural size. Pointer positions come in as fractions of the
 * viewport (0..1) so none of this needs to know about client pixels.
 */

export interface View {
  /** world coordinates of the viewBox origin */
  x: number;
  y: number;
  /** zoom factor; 1 shows the whole drawing */
  scale: number;
}

export const MIN_SCALE = 0.2;
export const MAX_SCALE = 40;

export function initialView(): View {
  return { x: 0, y: 0, scale: 1 };
}

export function viewBoxOf(view: View, baseWidth: number, baseHeight: number): string {
  const w = baseWidth / view.scale;
  const h = baseHeight / view.scale;
  return `${view.x} ${view.y} ${w} ${h}`;
}

/**
 * Zoom by `factor` keeping the world point under the viewport fraction
 * (fx, fy) fixed on screen.
 */
export function zoomAt(
  view: View,
  baseWidth: number,
  baseHeight: number,
  factor: number,
  fx: number,
  fy: number,
): View {
  const scale = Math.min(Math.max(view.scale * factor, MIN_SCALE), MAX_SCALE);
  const anchorX = view.x + fx * (baseWidth / view.scale);
  const anchorY = view.y + fy * (baseHeight / view.scale);
  return {
    scale,
    x: anchorX - fx * (baseWidth / scale),
    y: anchorY - fy * (baseHeight / scale),
  };
}

/** Pan by a fraction of the currently visible area. */
export function panBy(
  view: View,
  baseWidth: number,
  baseHeight: number,
  dfx: number,
  dfy: number,
): View {
  return {
    scale: view.scale,
    x: view.x - dfx * (baseWidth / view.scale),
    y: view.y - dfy * (baseHeight / view.scale),
  };
}
