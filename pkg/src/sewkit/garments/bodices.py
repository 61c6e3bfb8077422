"""Fitted and straight bodices.

A bodice is four quarter panels rising from the waist plane (y = 0):
front/back on the right of the body, mirrored to the left.  The fitted
variant shapes the front quarters with a waist dart and a side dart so
the sewn waist comes out at the true waist measurement and the sewn
front side seam matches the back side seam.

Quarter panel loop layout (all quarters): edge 0 waist (center to side),
1 side (up), 2 top (side to center), 3 center line (down).
"""

from __future__ import annotations

import math

from ..components import Component, Interface, Panel, mirror
from ..edgeseq import from_verts
from ..errors import GeometryError
from ..params import BodyParams
from .common import panel_interfaces, splice_dart
from .registry import GarmentSpec, register

WAIST, SIDE, TOP, CENTER = 0, 1, 2, 3


def _quarter(name: str, bottom_w: float, top_w: float, height: float) -> Panel:
    p = Panel(name, from_verts(
        (0.0, 0.0), (bottom_w, 0.0), (top_w, height), (0.0, height), loop=True
    ))
    p.set_interface("bottom", p.edges[WAIST])
    p.set_interface("side", p.edges[SIDE])
    p.set_interface("top", p.edges[TOP])
    p.set_interface("center", p.edges[CENTER])
    return p


def bodice_right_half(body: BodyParams, ease: float, fitted: bool,
                      radius: float | None = None) -> Component:
    """Right-side half: front and back quarters, side and shoulder seams.

    Quarters are chest/4 wide rectangles so the side seams stay vertical
    and the shoulder line sits at the same x front and back.  The fitted
    variant takes the bust-to-waist excess out with darts of
    (chest - waist)/4 each: a waist dart on both quarters plus a side
    dart on the front, where chest = bust + ease.
    """
    chest = float(body["bust"]) + float(ease)
    waist = float(body["waist"])
    back_h = float(body["waist_line"])
    if chest <= 0 or waist <= 0 or back_h <= 0:
        raise GeometryError("bodice needs positive chest, waist, and length")
    radius = chest / (2.0 * math.pi) if radius is None else radius
    dart_w = max(chest - waist, 0.0) / 4.0 if fitted else 0.0
    shaped = dart_w > 0.05

    back = _quarter("back", chest / 4.0, chest / 4.0, back_h)
    back.translate_by((0.0, 0.0, -radius))

    # front side is drafted longer by one dart width: closing the side
    # dart brings its sewn length back to the back side seam's
    front_h = back_h + dart_w if fitted else back_h
    front_w = chest / 4.0
    front = _quarter("front", front_w, front_w, front_h)
    front.translate_by((0.0, 0.0, radius))

    half = Component("right")
    half.add(front)
    half.add(back)

    if shaped:
        if dart_w > 0.3 * front_h:
            raise GeometryError(
                f"side dart of {dart_w:.1f} cm exceeds the side seam capacity"
            )
        itfs = panel_interfaces(half)
        bust_drop = float(body["bust_line"])
        # side dart a touch below the bust line, pointing at the apex
        side_t = max(0.15, min(0.85, (front_h - bust_drop - 5.0) / front_h))
        splice_dart(front, front.edges[SIDE], dart_w, 0.6 * front_w,
                    side_t, itfs)
        waist_edge = front.interfaces["bottom"].entries[0].edge
        splice_dart(front, waist_edge, dart_w,
                    0.5 * (front_h - bust_drop), 0.5, itfs)
        back_waist = back.interfaces["bottom"].entries[0].edge
        splice_dart(back, back_waist, dart_w, 0.4 * back_h, 0.5, itfs)

    half.add_stitch(front.interfaces["side"], back.interfaces["side"])
    half.add_stitch(front.interfaces["top"], back.interfaces["top"])
    return half


def assemble_bodice(right: Component, name: str) -> Component:
    """Mirror the right half and compose the waist interface, walked from
    the right side seam: back-right, back-left, front-left, front-right."""
    left = mirror(right)
    left.name = "left"
    comp = Component(name)
    comp.add(right)
    comp.add(left)
    # close the mirror seam: both center lines run top to waist at x = 0
    for side in ("front", "back"):
        comp.add_stitch(right[side].interfaces["center"],
                        left[side].interfaces["center"])
    comp.set_interface(
        "bottom",
        right["back"].interfaces["bottom"].reversed()
        + left["back"].interfaces["bottom"]
        + left["front"].interfaces["bottom"].reversed()
        + right["front"].interfaces["bottom"],
    )
    return comp


def fitted_bodice(body: BodyParams, ease: float = 0.0,
                  name: str = "fitted_bodice") -> Component:
    return assemble_bodice(bodice_right_half(body, ease, fitted=True), name)


def straight_bodice(body: BodyParams, ease: float = 6.0,
                    name: str = "straight_bodice") -> Component:
    return assemble_bodice(bodice_right_half(body, ease, fitted=False), name)


register(GarmentSpec(
    name="fitted_bodice",
    build_values=lambda body, v: fitted_bodice(body, v["ease"]),
    design_template=lambda: {"design": {
        "ease": {"type": "numerical", "value": 0.0, "range": [0.0, 10.0]},
    }},
    waist_interfaces=("bottom",),
    tags=frozenset({"upper"}),
    build_half=lambda body, v: bodice_right_half(body, v["ease"], fitted=True),
))

register(GarmentSpec(
    name="straight_bodice",
    build_values=lambda body, v: straight_bodice(body, v["ease"]),
    design_template=lambda: {"design": {
        "ease": {"type": "numerical", "value": 6.0, "range": [0.0, 12.0]},
    }},
    waist_interfaces=(),
    tags=frozenset({"upper"}),
    build_half=lambda body, v: bodice_right_half(body, v["ease"], fitted=False),
))
