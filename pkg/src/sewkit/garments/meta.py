"""Combined garment: a chosen upper joined to a chosen bottom at the
waist, with optional set-in sleeves and a neckline cut.

The style choices are categorical parameters whose options enumerate the
registry at template-build time, so registering a new bottom (or upper)
makes it selectable here without touching this module.  Every registered
part also contributes its own parameters to the combined template under a
``<part>__`` prefix; range expressions and dependency lists inside those
sub-templates are rewritten to the prefixed names so cross-parameter
references keep working.

Construction: build the upper's right half, open both shoulder corners
with the sleeve scoop and both neckline corners with the collar shape,
mirror into a full upper, then join it to the bottom with one abstract
waist stitch ("bottom" interface on the upper, "top" on the bottom).
Sleeve caps sew onto the armhole scoops; the scoop and the cap have equal
length by construction, so the seam needs no easing.
"""

from __future__ import annotations

import ast

from ..components import Component, Interface, InterfaceEntry, mirror
from ..edgeseq import EdgeSequence
from ..errors import StitchError
from ..params import BodyParams
from .bodices import assemble_bodice
from .collars import COLLAR_STYLES, collar_shape
from .common import panel_interfaces, splice_corner
from .registry import GarmentSpec, bottoms, get, register, uppers
from .sleeves import build_sleeve, sleeve_opening

# flat-layout clearance between the bodice and the sleeve panels
_SLEEVE_GAP = 2.0


class _Prefixer(ast.NodeTransformer):
    """Rewrite bare names in a range expression to their prefixed form."""

    def __init__(self, rename: dict):
        self.rename = rename

    def visit_Name(self, node):
        if node.id in self.rename:
            node.id = self.rename[node.id]
        return node


def _prefix_expr(expr: str, rename: dict) -> str:
    tree = _Prefixer(rename).visit(ast.parse(expr, mode="eval"))
    return ast.unparse(tree)


def _namespaced(part: str) -> dict:
    """A registered garment's template with every parameter, and every
    sibling reference inside it, moved under ``<part>__``."""
    sub = get(part).design_template()["design"]
    rename = {key: f"{part}__{key}" for key in sub}
    out = {}
    for key, entry in sub.items():
        entry = dict(entry)
        rng = entry.get("range")
        if rng is not None and entry.get("type") in ("numerical", "integer"):
            entry["range"] = [
                _prefix_expr(b, rename) if isinstance(b, str) else b
                for b in rng
            ]
        deps = entry.get("depends_on")
        if deps:
            entry["depends_on"] = [rename.get(d, d) for d in deps]
        out[rename[key]] = entry
    return out


def combined_template() -> dict:
    design = {
        "upper": {"type": "categorical", "value": "fitted_bodice",
                  "range": uppers()},
        "bottom": {"type": "categorical", "value": "skirt_many_panels",
                   "range": bottoms()},
        "sleeves": {"type": "boolean", "value": True},
        "collar": {"type": "categorical", "value": "round",
                   "range": sorted(COLLAR_STYLES)},
        "collar_width": {"type": "numerical", "value": 13.0,
                         "range": ["neck_width", "back_width / 2 - 2"]},
        "collar_depth": {"type": "numerical", "value": 6.0,
                         "range": [3.0, 10.0]},
    }
    for part in uppers() + bottoms() + ["sleeve"]:
        design.update(_namespaced(part))
    return {"design": design}


def _sub_values(vals: dict, part: str) -> dict:
    keys = get(part).design_template()["design"]
    return {k: vals[f"{part}__{k}"] for k in keys}


def _underarm_up(cap: Interface) -> Interface:
    """Cap entries run shoulder to underarm; armhole inserts run the other
    way.  Flip each entry's direction, keeping the front/back order."""
    return Interface(
        [InterfaceEntry(e.panel, e.edge, not e.reverse) for e in cap.entries]
    )


def combined_garment(body: BodyParams, vals: dict,
                     name: str = "meta_garment") -> Component:
    upper_spec = get(vals["upper"])
    bottom_spec = get(vals["bottom"])
    if upper_spec.build_half is None:
        raise StitchError(
            f"garment {upper_spec.name!r} cannot serve as an upper: "
            "it has no half builder to cut into"
        )

    right = upper_spec.build_half(body, _sub_values(vals, upper_spec.name))
    front, back = right["front"], right["back"]
    shoulder = front.interfaces["top"].entries[0].edge.start

    sleeve_vals = _sub_values(vals, "sleeve")
    if vals["sleeves"]:
        left_sleeve = build_sleeve(body, sleeve_vals, name="left_sleeve")
        scoops = [e.edge for e in left_sleeve.interfaces["armhole"].entries]
    else:
        left_sleeve = None
        scoop = sleeve_opening(body, sleeve_vals["opening_depth_frac"])
        scoops = [scoop, scoop.translated((0.0, 0.0))]

    itfs = panel_interfaces(right)
    inserts = {}
    for panel, scoop in ((front, scoops[0]), (back, scoops[1])):
        e_in = panel.interfaces["side"].entries[-1].edge
        e_out = panel.interfaces["top"].entries[0].edge
        _, inserted, _ = splice_corner(
            panel, e_in, e_out, EdgeSequence([scoop]), itfs
        )
        inserts[panel.name] = inserted
    right.set_interface(
        "armhole",
        Interface.of(front, *inserts["front"])
        + Interface.of(back, *inserts["back"]),
    )

    # back neckline sits higher than the front scoop
    half_w = vals["collar_width"] / 2.0
    itfs = panel_interfaces(right)
    for panel, depth in ((front, vals["collar_depth"]),
                         (back, vals["collar_depth"] / 3.0)):
        shape = collar_shape(vals["collar"], half_w, depth)
        e_in = panel.interfaces["top"].entries[-1].edge
        e_out = panel.interfaces["center"].entries[0].edge
        splice_corner(panel, e_in, e_out, shape, itfs)

    upper = assemble_bodice(right, upper_spec.name)
    bottom = bottom_spec.build_values(body, _sub_values(vals, bottom_spec.name))
    for role, itf_name, comp in (("upper", "bottom", upper),
                                 ("bottom", "top", bottom)):
        if itf_name not in comp.interfaces:
            raise StitchError(
                f"{role} part {comp.name!r} does not expose "
                f"a {itf_name!r} interface"
            )

    root = Component(name)
    root.add(upper)
    root.add(bottom)
    root.add_stitch(upper.interfaces["bottom"], bottom.interfaces["top"])
    root.set_interface("waist", bottom.interfaces["top"])

    if left_sleeve is not None:
        sx, sy = float(shoulder[0]), float(shoulder[1])
        for panel in left_sleeve.panels():
            panel.translate_by((-(sx + _SLEEVE_GAP), sy + _SLEEVE_GAP, 0.0))
        right_sleeve = mirror(left_sleeve)
        right_sleeve.name = "right_sleeve"
        root.add(left_sleeve)
        root.add(right_sleeve)
        root.add_stitch(upper["left"].interfaces["armhole"],
                        _underarm_up(left_sleeve.interfaces["cap"]))
        root.add_stitch(upper["right"].interfaces["armhole"],
                        _underarm_up(right_sleeve.interfaces["cap"]))
    return root


register(GarmentSpec(
    name="meta_garment",
    build_values=combined_garment,
    design_template=combined_template,
    waist_interfaces=("waist",),
))
