"""Set-in sleeve with an optimizer-built cap curve and an optional cuff.

The component carries two shapes for the same opening: the scooped curve it
projects onto a bodice (the ``armhole`` construction interface) and the cap
curve actually drawn on the sleeve panels (the ``cap`` interface).  The cap
is the length-preserving flip of the opening computed by
:func:`sewkit.solvers.invert_sleeve_curve`, so the two sew together without
easing even though their shapes differ.

Each half panel is drafted with the fold line along +x from the wrist at
``(-L, 0)`` to the shoulder at the origin, and the cap chord dropping
straight down from the shoulder.  The cap's top tangent is pinned to
``(0, -1)`` so the mirrored back half continues it smoothly across the fold;
the bottom tangent leans toward the wrist by the rest angle, which is what
tilts the drape of the finished sleeve.
"""

import math

from ..components import Component, Interface, InterfaceEntry, Panel
from ..edges import Edge, RelControl
from ..edgeseq import EdgeSequence
from ..errors import GeometryError
from ..solvers import SleeveCapTask, invert_sleeve_curve
from .common import rect_panel, two_panel_tube
from .registry import GarmentSpec, register

# cubic-fits-a-quarter-ellipse control distance
_KAPPA = 0.5522847498307936

# ease added to the wrist circumference so a hand fits through
WRIST_EASE = 3.0


def sleeve_opening(body, depth_frac: float = 1.0) -> Edge:
    """Scoop curve removed from one bodice quarter at the shoulder corner.

    Runs from the shoulder end ``(0, 0)`` to the underarm end ``(w, -d)``
    with both control points on the inside of the chord, approximating a
    quarter ellipse: vertical start tangent, horizontal end tangent.
    """
    w = (body["bust"] - body["back_width"]) / 4.0
    d = body["armhole_depth"] * depth_frac
    if w <= 0 or d <= 0:
        raise GeometryError("armhole opening has non-positive extent")
    h2 = w * w + d * d
    du = _KAPPA * d * d / h2
    dv = -_KAPPA * d * w / h2
    return Edge.cubic(
        (0.0, 0.0),
        (w, -d),
        RelControl(du, dv),
        RelControl((w * w * (1.0 - _KAPPA) + d * d) / h2, dv),
    )


def make_cap_task(opening: Edge, rest_angle_deg: float) -> SleeveCapTask:
    """Inversion task turning an opening scoop into a sleeve cap curve.

    Targets live in the frame where the cap hangs straight down from the
    shoulder: the top tangent crosses the fold perpendicularly and the
    bottom one deviates from vertical by the rest angle, toward the wrist.
    """
    th = math.radians(rest_angle_deg)
    return SleeveCapTask(
        base=opening,
        target_length=opening.length(),
        start_tangent=(0.0, -1.0),
        end_tangent=(-math.sin(th), -math.cos(th)),
    )


def _half_panel(name: str, cap: Edge, fold_len: float, wrist_half: float) -> Panel:
    """One sleeve half on one side of the fold line.

    ``wrist_half`` is signed: negative drafts the half below the fold
    (front), positive above it (back, with the cap reflected to match).
    Loop order: cap (shoulder toward underarm), underarm seam, wrist, fold.
    """
    u = cap.end
    seam = Edge.line(u, (-fold_len, wrist_half))
    wrist = Edge.line((-fold_len, wrist_half), (-fold_len, 0.0))
    fold = Edge.line((-fold_len, 0.0), (0.0, 0.0))
    panel = Panel(name, EdgeSequence([cap, seam, wrist, fold]))
    panel.set_interface("cap", cap)
    panel.set_interface("seam", seam)
    panel.set_interface("wrist", wrist)
    panel.set_interface("fold", fold)
    return panel


def sleeve_component(
    body,
    length_frac: float = 0.9,
    rest_angle_deg: float = 20.0,
    gather_frac: float = 0.0,
    cuff: bool = False,
    cuff_height: float = 4.0,
    opening_depth_frac: float = 1.0,
    name: str = "sleeve",
) -> Component:
    if gather_frac < 0:
        raise GeometryError("gather fraction cannot be negative")
    opening = sleeve_opening(body, opening_depth_frac)
    cap = invert_sleeve_curve(make_cap_task(opening, rest_angle_deg))

    wrist_half = (body["wrist"] + WRIST_EASE) * (1.0 + gather_frac) / 2.0
    asked = length_frac * body["arm_length"] - (cuff_height if cuff else 0.0)
    # keep the wrist edge clear of the cap's sideways reach
    reach = -min(cap.point_at(k / 32.0)[0] for k in range(33))
    fold_len = max(asked, reach + 2.0, 3.0)

    front = _half_panel("front", cap, fold_len, -wrist_half)
    front.translate_by((0.0, 0.0, 2.0))
    back = _half_panel("back", cap.reflected((0.0, 0.0), (1.0, 0.0)),
                       fold_len, wrist_half)
    back.translate_by((0.0, 0.0, -2.0))

    comp = Component(name)
    comp.add(front)
    comp.add(back)
    comp.add_stitch(front.interfaces["fold"], back.interfaces["fold"])
    comp.add_stitch(front.interfaces["seam"], back.interfaces["seam"])

    # bodice-side scoops, one per quarter; carried as construction geometry
    comp.set_interface("armhole", Interface([
        InterfaceEntry(None, opening),
        InterfaceEntry(None, opening.translated((0.0, 0.0))),
    ], role="construction"))
    comp.set_interface("cap", front.interfaces["cap"] + back.interfaces["cap"])

    wrist_ring = Interface(front.interfaces["wrist"].entries
                           + back.interfaces["wrist"].reversed().entries)
    if cuff:
        band = two_panel_tube(
            "cuff",
            lambda nm: rect_panel(nm, (body["wrist"] + WRIST_EASE) / 2.0, cuff_height),
            2.0,
        )
        for panel in band.panels():
            panel.translate_by((-fold_len, 0.0, 0.0))
        comp.add(band)
        comp.add_stitch(wrist_ring, band.interfaces["top"])
        comp.set_interface("wrist", band.interfaces["bottom"])
    else:
        comp.set_interface("wrist", wrist_ring)
    return comp


def _sleeve_template() -> dict:
    return {"design": {
        "length_frac": {"type": "numerical", "value": 0.9, "range": [0.15, 1.0]},
        "rest_angle": {"type": "numerical", "value": 20.0, "range": [0.0, 45.0]},
        "gather_frac": {"type": "numerical", "value": 0.0, "range": [0.0, 0.3]},
        "cuff": {"type": "boolean", "value": False},
        "cuff_height": {"type": "numerical", "value": 4.0, "range": [2.0, 6.0]},
        "opening_depth_frac": {"type": "numerical", "value": 1.0, "range": [0.85, 1.05]},
    }}


def build_sleeve(body, vals: dict, name: str = "sleeve") -> Component:
    """Value-dict entry point, shared by the registry and combinators."""
    return sleeve_component(
        body,
        length_frac=vals["length_frac"],
        rest_angle_deg=vals["rest_angle"],
        gather_frac=vals["gather_frac"],
        cuff=vals["cuff"],
        cuff_height=vals["cuff_height"],
        opening_depth_frac=vals["opening_depth_frac"],
        name=name,
    )


register(GarmentSpec(
    name="sleeve",
    build_values=build_sleeve,
    design_template=_sleeve_template,
    waist_interfaces=(),
    tags=frozenset(),
))
