"""Skirt programs: flared multi-panel, pencil, gathered, and stacked.

Every builder here takes a ``top_circ`` argument (defaulting to the body
waist) so a skirt can be re-sized to sit under another one; the stacked
skirt uses exactly that to chain levels.
"""

from __future__ import annotations

import math

from scipy.spatial.transform import Rotation

from ..components import (
    Component,
    Interface,
    Panel,
    distribute_circle,
    place_by_interface,
)
from ..edges import Edge
from ..edgeseq import EdgeSequence
from ..errors import GeometryError, ParamError
from ..params import BodyParams
from ..solvers import quad_with_apex
from .common import rect_panel, trapezoid_panel, two_panel_tube
from .registry import GarmentSpec, register


def flare_skirt(body: BodyParams, length_cm: float, n_panels: int,
                flare_suns: float, top_circ: float | None = None,
                name: str = "skirt_many_panels") -> Component:
    """Ring of identical trapezoid panels.

    Hem circumference is ``flare_suns`` times the full-circle hem for this
    waist and length, split evenly across panels.
    """
    top_circ = float(body["waist"] if top_circ is None else top_circ)
    n = int(n_panels)
    if n < 2:
        raise ParamError(f"panel count must be at least 2, got {n}")
    if flare_suns <= 0:
        raise ParamError("flare must be positive")
    if length_cm <= 0:
        raise GeometryError("skirt length must be positive")
    top_w = top_circ / n
    hem_w = flare_suns * (top_circ + 2.0 * math.pi * length_cm) / n

    proto = trapezoid_panel("panel", top_w, hem_w, length_cm)
    proto.translate_by((0.0, 0.0, top_circ / (2.0 * math.pi)))
    ring = distribute_circle(proto, n)
    # start the ring at the right side seam so its waist walk lines up with
    # every other garment's
    ring.rotate_by(Rotation.from_euler("y", 90.0 + 180.0 / n, degrees=True))

    comp = Component(name)
    comp.add(ring)
    panels = [ring[f"panel_{k}"] for k in range(n)]
    top = Interface([])
    bottom = Interface([])
    for k, p in enumerate(panels):
        nxt = panels[(k + 1) % n]
        comp.add_stitch(Interface.of(p, p.edges[1]),
                        Interface.of(nxt, nxt.edges[3], reverse=True))
        top = top + Interface.of(p, p.edges[2], reverse=True)
        bottom = bottom + Interface.of(p, p.edges[0])
    comp.set_interface("top", top)
    comp.set_interface("bottom", bottom)
    return comp


def pencil_skirt(body: BodyParams, length_cm: float,
                 top_circ: float | None = None,
                 name: str = "pencil_skirt",
                 hip_drop: float | None = None) -> Component:
    """Close-fitting skirt: front/back halves whose side seams curve out
    to the hip line and drop straight to the hem."""
    top_circ = float(body["waist"] if top_circ is None else top_circ)
    hip_circ = max(float(body["hips"]), top_circ + 2.0)
    hip_drop = float(body["hip_line"] if hip_drop is None else hip_drop)
    if length_cm <= hip_drop:
        raise GeometryError(
            f"pencil skirt length {length_cm:.1f} cm must exceed the "
            f"waist-to-hip drop {hip_drop:.1f} cm"
        )
    wt = top_circ / 4.0
    wh = hip_circ / 4.0

    def half(pname: str):
        hem = Edge.line((-wh, -length_cm), (wh, -length_cm))
        right = quad_with_apex((wh, -length_cm), (wt, 0.0), (wh, -hip_drop))
        top = Edge.line((wt, 0.0), (-wt, 0.0))
        left = quad_with_apex((-wt, 0.0), (-wh, -length_cm), (-wh, -hip_drop))
        return Panel(pname, EdgeSequence([hem, right, top, left]))

    return two_panel_tube(name, half, hip_circ / (2.0 * math.pi))


def gather_skirt(body: BodyParams, length_cm: float, fullness: float,
                 band_height: float, top_circ: float | None = None,
                 name: str = "gather_skirt") -> Component:
    """Rectangle skirt gathered into a snug waistband.

    The band carries the "top" interface (so the skirt meets the waist at
    its true circumference); the band-to-skirt stitch joins sides of
    unequal length and relies on fraction matching downstream.
    """
    top_circ = float(body["waist"] if top_circ is None else top_circ)
    if fullness <= 1.0:
        raise ParamError("gathering needs fullness above 1")
    body_len = length_cm - band_height
    if body_len <= 2.0:
        raise GeometryError("skirt body vanishes under the waistband height")
    radius = top_circ / (2.0 * math.pi)

    band = two_panel_tube(
        "band", lambda p: rect_panel(p, top_circ / 2.0, band_height), radius
    )
    skirt = two_panel_tube(
        "body", lambda p: rect_panel(p, fullness * top_circ / 2.0, body_len),
        radius,
    )
    skirt.translate_by((0.0, -band_height, 0.0))

    comp = Component(name)
    comp.add(band)
    comp.add(skirt)
    comp.add_stitch(band.interfaces["bottom"], skirt.interfaces["top"])
    comp.set_interface("top", band.interfaces["top"])
    comp.set_interface("bottom", skirt.interfaces["bottom"])
    return comp


_LEVEL_BUILDERS = {
    "flare": lambda body, length, circ, nm: flare_skirt(
        body, length, 4, 1.0, top_circ=circ, name=nm
    ),
    # a shortened level cannot reach the true hip line, so cap the drop
    "pencil": lambda body, length, circ, nm: pencil_skirt(
        body, length, top_circ=circ, name=nm,
        hip_drop=min(float(body["hip_line"]), 0.45 * length),
    ),
    "gather": lambda body, length, circ, nm: gather_skirt(
        body, length, 1.8, min(3.0, length / 3.0), top_circ=circ, name=nm
    ),
}


def compound_skirt(body: BodyParams, length_cm: float, level_types: list[str],
                   top_circ: float | None = None,
                   name: str = "compound_skirt") -> Component:
    """Stack of skirt levels: each level is sized from the hem length of
    the one above it and stitched top-to-bottom."""
    top_circ = float(body["waist"] if top_circ is None else top_circ)
    if not level_types:
        raise ParamError("a stacked skirt needs at least one level")
    for t in level_types:
        if t not in _LEVEL_BUILDERS:
            raise ParamError(
                f"unknown skirt level type {t!r} "
                f"(available: {', '.join(sorted(_LEVEL_BUILDERS))})"
            )
    per_level = length_cm / len(level_types)
    comp = Component(name)
    prev = None
    for k, kind in enumerate(level_types):
        circ = top_circ if prev is None else prev.interfaces["bottom"].length()
        level = _LEVEL_BUILDERS[kind](body, per_level, circ, f"level{k}_{kind}")
        comp.add(level)
        if prev is not None:
            place_by_interface(level, level.interfaces["top"],
                               prev.interfaces["bottom"])
            comp.add_stitch(prev.interfaces["bottom"], level.interfaces["top"])
        prev = level
    comp.set_interface("top", comp.children[0].interfaces["top"])
    comp.set_interface("bottom", prev.interfaces["bottom"])
    return comp


# ---------------------------------------------------------------------------
# registration
# ---------------------------------------------------------------------------


def _flare_template() -> dict:
    return {"design": {
        "length_frac": {"type": "numerical", "value": 0.6, "range": [0.2, 0.95]},
        "n_panels": {"type": "integer", "value": 4, "range": [2, 12]},
        "flare_suns": {"type": "numerical", "value": 1.0, "range": [0.3, 2.0]},
    }}


def _flare_values(body: BodyParams, v: dict) -> Component:
    return flare_skirt(body, v["length_frac"] * body["leg_length"],
                       v["n_panels"], v["flare_suns"])


def _pencil_template() -> dict:
    return {"design": {
        "length_frac": {
            "type": "numerical", "value": 0.55,
            "range": ["hip_line / leg_length + 0.1", 0.95],
        },
    }}


def _pencil_values(body: BodyParams, v: dict) -> Component:
    return pencil_skirt(body, v["length_frac"] * body["leg_length"])


def _gather_template() -> dict:
    return {"design": {
        "band_height": {"type": "numerical", "value": 3.0, "range": [2.0, 6.0]},
        "length_frac": {
            "type": "numerical", "value": 0.5,
            "range": ["(band_height + 8) / leg_length", 0.95],
            "depends_on": ["band_height"],
        },
        "fullness": {"type": "numerical", "value": 1.8, "range": [1.1, 3.0]},
    }}


def _gather_values(body: BodyParams, v: dict) -> Component:
    return gather_skirt(body, v["length_frac"] * body["leg_length"],
                        v["fullness"], v["band_height"])


def _compound_template() -> dict:
    kinds = sorted(_LEVEL_BUILDERS)
    return {"design": {
        "levels": {"type": "integer", "value": 2, "range": [1, 3]},
        "base_type": {"type": "categorical", "value": "flare", "range": kinds},
        "level2_type": {"type": "categorical", "value": "gather", "range": kinds},
        "level3_type": {"type": "categorical", "value": "flare", "range": kinds},
        "length_frac": {"type": "numerical", "value": 0.7, "range": [0.3, 0.95]},
    }}


def _compound_values(body: BodyParams, v: dict) -> Component:
    kinds = [v["base_type"], v["level2_type"], v["level3_type"]][: v["levels"]]
    return compound_skirt(body, v["length_frac"] * body["leg_length"], kinds)


def _spec(name, build_values, template, tags=("bottom",), waist=("top",)):
    return register(GarmentSpec(
        name=name,
        build_values=build_values,
        design_template=template,
        waist_interfaces=tuple(waist),
        tags=frozenset(tags),
    ))


for _name, _bv, _tpl in (
    ("skirt_many_panels", _flare_values, _flare_template),
    ("pencil_skirt", _pencil_values, _pencil_template),
    ("gather_skirt", _gather_values, _gather_template),
    ("compound_skirt", _compound_values, _compound_template),
):
    _spec(_name, _bv, _tpl)
