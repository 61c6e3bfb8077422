"""Flat-pattern SVG rendering.

Panels are laid out on a uniform grid sized by the largest panel, each
drawn as a single closed path using native line/arc/Bezier commands.
Edges that belong to a stitch are overdrawn in a color shared by both
sides of that stitch, so matching seam lines can be spotted across
panels.  One pattern centimeter maps to ``SCALE`` SVG units; the y axis
is flipped because patterns use y-up and SVG y-down.
"""

from __future__ import annotations

import math
from xml.sax.saxutils import escape

SCALE = 2.0
MARGIN = 12.0
LABEL_SIZE = 7.0

_OUTLINE = "#1a1a1a"
_FILL = "#f3ede2"


def _color(k: int) -> str:
    """Deterministic well-spread palette (golden-angle hue walk)."""
    hue = (k * 137.508) % 360.0
    return f"hsl({hue:.1f}, 72%, 42%)"


def _abs_control(v0, v1, rel):
    dx, dy = v1[0] - v0[0], v1[1] - v0[1]
    u, v = rel
    return (v0[0] + u * dx - v * dy, v0[1] + u * dy + v * dx)


def _sample_edge(v0, v1, curvature, k=16):
    """Points along one edge in pattern space, for bounding boxes."""
    if curvature is None:
        return [v0, v1]
    kind = curvature["type"]
    params = curvature["params"]
    if kind == "circle":
        apex = _arc_apex(v0, v1, params[0])
        ctrl = [v0, apex, v1]
    elif kind == "quadratic":
        ctrl = [v0, _abs_control(v0, v1, params[0]), v1]
    else:
        ctrl = [v0, _abs_control(v0, v1, params[0]),
                _abs_control(v0, v1, params[1]), v1]
    pts = []
    for i in range(k + 1):
        t = i / k
        poly = list(ctrl)
        while len(poly) > 1:
            poly = [
                ((1 - t) * a[0] + t * b[0], (1 - t) * a[1] + t * b[1])
                for a, b in zip(poly, poly[1:])
            ]
        pts.append(poly[0])
    if kind == "circle":
        # Bezier through the apex is only used as a rough bound; widen it
        # a touch so shallow sampling never clips the true arc
        pts.append(_arc_apex(v0, v1, params[0] * 1.1))
    return pts


def _arc_apex(v0, v1, rel_sagitta):
    cx, cy = 0.5 * (v0[0] + v1[0]), 0.5 * (v0[1] + v1[1])
    dx, dy = v1[0] - v0[0], v1[1] - v0[1]
    chord = math.hypot(dx, dy)
    if chord == 0:
        return (cx, cy)
    nx, ny = -dy / chord, dx / chord
    h = rel_sagitta * chord
    return (cx + h * nx, cy + h * ny)


def _arc_command(p0, p1, apex):
    """SVG 'A' parameters for the circular arc through apex, computed in
    final (y-flipped) coordinates so the sweep flag is unambiguous."""
    ax, ay = p0
    bx, by = p1
    px, py = apex
    d = 2.0 * (ax * (by - py) + bx * (py - ay) + px * (ay - by))
    if abs(d) < 1e-12:
        return f"L {bx:.4f} {by:.4f}"
    ux = ((ax * ax + ay * ay) * (by - py) + (bx * bx + by * by) * (py - ay)
          + (px * px + py * py) * (ay - by)) / d
    uy = ((ax * ax + ay * ay) * (px - bx) + (bx * bx + by * by) * (ax - px)
          + (px * px + py * py) * (bx - ax)) / d
    r = math.hypot(ax - ux, ay - uy)
    # traverse direction and span are fixed by where the apex sits
    ta = math.atan2(ay - uy, ax - ux)
    tp = math.atan2(py - uy, px - ux)
    tb = math.atan2(by - uy, bx - ux)
    two_pi = 2.0 * math.pi
    dp = (tp - ta) % two_pi
    db = (tb - ta) % two_pi
    sweep = 1 if dp < db else 0
    span = db if sweep else two_pi - db
    large = 1 if span > math.pi else 0
    return f"A {r:.4f} {r:.4f} 0 {large} {sweep} {bx:.4f} {by:.4f}"


class _Frame:
    """Maps one panel's pattern coordinates into its grid cell."""

    def __init__(self, offset_x, offset_y, min_x, max_y):
        self.ox = offset_x - SCALE * min_x
        self.oy = offset_y + SCALE * max_y

    def __call__(self, p):
        return (self.ox + SCALE * p[0], self.oy - SCALE * p[1])


def _edge_command(frame, v0, v1, curvature) -> str:
    p1 = frame(v1)
    if curvature is None:
        return f"L {p1[0]:.4f} {p1[1]:.4f}"
    kind = curvature["type"]
    params = curvature["params"]
    if kind == "circle":
        apex = frame(_arc_apex(v0, v1, params[0]))
        return _arc_command(frame(v0), p1, apex)
    if kind == "quadratic":
        c = frame(_abs_control(v0, v1, params[0]))
        return f"Q {c[0]:.4f} {c[1]:.4f} {p1[0]:.4f} {p1[1]:.4f}"
    c1 = frame(_abs_control(v0, v1, params[0]))
    c2 = frame(_abs_control(v0, v1, params[1]))
    return (f"C {c1[0]:.4f} {c1[1]:.4f} {c2[0]:.4f} {c2[1]:.4f} "
            f"{p1[0]:.4f} {p1[1]:.4f}")


def render(pattern) -> str:
    """Render a serialized pattern (FlatPattern or its document form)."""
    doc = pattern.to_doc() if hasattr(pattern, "to_doc") else pattern
    panels = doc["pattern"]["panels"]
    stitches = doc["pattern"].get("stitches", [])

    names = sorted(panels)
    boxes = {}
    for name in names:
        p = panels[name]
        pts = []
        verts = p["vertices"]
        for e in p["edges"]:
            i, j = e["endpoints"]
            pts.extend(_sample_edge(verts[i], verts[j], e.get("curvature")))
        xs = [q[0] for q in pts]
        ys = [q[1] for q in pts]
        boxes[name] = (min(xs), min(ys), max(xs), max(ys))

    cell_w = max(SCALE * (b[2] - b[0]) for b in boxes.values()) + MARGIN
    cell_h = max(SCALE * (b[3] - b[1]) for b in boxes.values()) + MARGIN + LABEL_SIZE
    cols = max(1, math.ceil(math.sqrt(len(names))))
    rows = math.ceil(len(names) / cols)

    edge_color = {}
    for k, stitch in enumerate(stitches):
        for side in stitch:
            for entry in side:
                edge_color[(entry["panel"], entry["edge"])] = _color(k)

    body = []
    for idx, name in enumerate(names):
        p = panels[name]
        verts = p["vertices"]
        b = boxes[name]
        cx = MARGIN + (idx % cols) * cell_w
        cy = MARGIN + LABEL_SIZE + (idx // cols) * cell_h
        frame = _Frame(cx, cy, b[0], b[3])

        start = frame(verts[p["edges"][0]["endpoints"][0]])
        cmds = [f"M {start[0]:.4f} {start[1]:.4f}"]
        for e in p["edges"]:
            i, j = e["endpoints"]
            cmds.append(_edge_command(frame, verts[i], verts[j],
                                      e.get("curvature")))
        # Z already draws the closing line, so a straight last edge is redundant
        if cmds[-1].startswith("L "):
            cmds.pop()
        cmds.append("Z")
        body.append(
            f'<path d="{" ".join(cmds)}" fill="{_FILL}" stroke="{_OUTLINE}" '
            f'stroke-width="0.6"/>'
        )

        for ei, e in enumerate(p["edges"]):
            color = edge_color.get((name, ei))
            if color is None:
                continue
            i, j = e["endpoints"]
            s = frame(verts[i])
            seam = [f"M {s[0]:.4f} {s[1]:.4f}",
                    _edge_command(frame, verts[i], verts[j],
                                  e.get("curvature"))]
            body.append(
                f'<path d="{" ".join(seam)}" fill="none" stroke="{color}" '
                f'stroke-width="1.1"/>'
            )

        label_y = cy - 0.35 * LABEL_SIZE
        body.append(
            f'<text x="{cx:.2f}" y="{label_y:.2f}" '
            f'font-size="{LABEL_SIZE}" font-family="sans-serif" '
            f'fill="{_OUTLINE}">{escape(name)}</text>'
        )

    width = MARGIN + cols * cell_w
    height = MARGIN + rows * cell_h
    head = (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width:.1f}" height="{height:.1f}" '
        f'viewBox="0 0 {width:.1f} {height:.1f}">'
    )
    return "\n".join([head, *body, "</svg>"])
