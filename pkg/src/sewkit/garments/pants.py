"""Pants drafted as four quarter panels: two per leg, mirrored legs.

Each quarter hangs from the waist plane with the center line (front or back
rise) at local x = 0 and the side seam toward +x.  The hip curve bows out to
the full hip quarter at hip depth; the rise curve hooks below the crotch
point before climbing to the waist.  Back quarters get a deeper crotch
extension than front ones, which is what keeps the inseam from pulling
forward when worn.
"""

from ..components import Component, Interface, mirror
from ..edges import Edge
from ..edgeseq import EdgeSequence
from ..errors import GeometryError
from ..components import Panel
from ..solvers import quad_with_apex
from .registry import GarmentSpec, register

# crotch extension as a fraction of the hip circumference, per quarter
FRONT_EXTENSION = 0.055
BACK_EXTENSION = 0.11

WAIST, OUTER, HEM, INSEAM, RISE = range(5)


def _quarter(name: str, body, length_cm: float, flare: float, extension_frac: float) -> Panel:
    quarter_waist = body["waist"] / 4.0
    quarter_hip = body["hips"] / 4.0
    ext = extension_frac * body["hips"]
    depth = body["crotch_depth"]
    hem_w = flare * quarter_hip
    leg_center = (quarter_hip - ext) / 2.0

    a = (0.0, 0.0)
    b = (quarter_waist, 0.0)
    o = (leg_center + hem_w / 2.0, -length_cm)
    i = (leg_center - hem_w / 2.0, -length_cm)
    c = (-ext, -depth)

    waist = Edge.line(a, b)
    outer = quad_with_apex(b, o, (quarter_hip, -body["hip_line"]))
    hem = Edge.line(o, i)
    inseam = Edge.line(i, c)
    rise = quad_with_apex(c, a, (-1.3 * ext, -0.75 * depth))

    panel = Panel(name, EdgeSequence([waist, outer, hem, inseam, rise]))
    panel.set_interface("top", waist)
    panel.set_interface("outer", outer)
    panel.set_interface("inseam", inseam)
    panel.set_interface("rise", rise)
    return panel


def _leg(body, length_cm: float, flare: float) -> Component:
    front = _quarter("front", body, length_cm, flare, FRONT_EXTENSION)
    front.translate_by((0.0, 0.0, 2.0))
    back = _quarter("back", body, length_cm, flare, BACK_EXTENSION)
    back.translate_by((0.0, 0.0, -2.0))
    leg = Component("right")
    leg.add(front)
    leg.add(back)
    leg.add_stitch(front.interfaces["outer"], back.interfaces["outer"])
    leg.add_stitch(front.interfaces["inseam"], back.interfaces["inseam"])
    return leg


def pants(body, length_cm: float, flare: float, name: str = "pants") -> Component:
    if length_cm <= body["crotch_depth"]:
        raise GeometryError(
            f"pants length {length_cm:.1f} cm does not clear the "
            f"{body['crotch_depth']:.1f} cm crotch depth"
        )
    if flare <= 0:
        raise GeometryError("flare must be positive")

    right = _leg(body, length_cm, flare)
    left = mirror(right)
    left.name = "left"

    comp = Component(name)
    comp.add(right)
    comp.add(left)
    # center front and center back seams join the two legs
    comp.add_stitch(right["front"].interfaces["rise"],
                    left["front"].interfaces["rise"])
    comp.add_stitch(right["back"].interfaces["rise"],
                    left["back"].interfaces["rise"])

    comp.set_interface("top", (
        right["back"].interfaces["top"].reversed()
        + left["back"].interfaces["top"]
        + left["front"].interfaces["top"].reversed()
        + right["front"].interfaces["top"]
    ))
    return comp


def _pants_template() -> dict:
    return {"design": {
        "length_frac": {
            "type": "numerical",
            "value": 0.6,
            "range": ["(crotch_depth + 10) / waist_level", 0.95],
        },
        "flare": {"type": "numerical", "value": 0.9, "range": [0.5, 1.1]},
    }}


def _pants_values(body, v: dict) -> Component:
    return pants(body, v["length_frac"] * body["waist_level"], v["flare"])


register(GarmentSpec(
    name="pants",
    build_values=_pants_values,
    design_template=_pants_template,
    waist_interfaces=("top",),
    tags=frozenset({"bottom"}),
))
