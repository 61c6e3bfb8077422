"""Shared drafting helpers for the garment library.

World conventions used by every garment here: the body stands on the y
axis, waist plane at y = 0, front toward +z.  Waist-ring interfaces
("top" of bottoms, "bottom" of bodices) all walk the same way: starting
at the right side seam (+x) and passing back, left side, front - so any
upper's waist interface lines up fraction-for-fraction with any bottom's.
"""

from __future__ import annotations

import numpy as np

from ..components import (
    Component,
    Interface,
    Panel,
    outline_polyline,
    remap_interface_entries,
)
from ..edges import Edge
from ..edgeseq import EdgeSequence, dart_shape, from_verts
from ..errors import GeometryError
from ..solvers import SNAP_PARAM, project_on_corner, project_on_edge


def rect_panel(name: str, width: float, height: float, y_top: float = 0.0) -> Panel:
    """Axis-aligned rectangle hanging down from y_top, centered on x = 0.

    Loop order: bottom (+x), right side (up), top (-x), left side (down).
    """
    if width <= 0 or height <= 0:
        raise GeometryError(f"panel {name!r} needs positive dimensions")
    h = width / 2.0
    return Panel(name, from_verts(
        (-h, y_top - height), (h, y_top - height), (h, y_top), (-h, y_top),
        loop=True,
    ))


def trapezoid_panel(name: str, top_width: float, bottom_width: float,
                    height: float, y_top: float = 0.0) -> Panel:
    """Isosceles trapezoid, top edge at y_top, centered on x = 0."""
    if top_width <= 0 or bottom_width <= 0 or height <= 0:
        raise GeometryError(f"panel {name!r} needs positive dimensions")
    ht, hb = top_width / 2.0, bottom_width / 2.0
    return Panel(name, from_verts(
        (-hb, y_top - height), (hb, y_top - height), (ht, y_top), (-ht, y_top),
        loop=True,
    ))


def two_panel_tube(name: str, make_panel, radius: float) -> Component:
    """Front/back panel pair stitched at the sides, with waist-ring
    interfaces walked from the right side seam (back first, then front).

    ``make_panel`` must produce the standard quadrilateral loop layout:
    edge 0 bottom (+x), 1 right side (up), 2 top (-x), 3 left side (down).
    """
    back = make_panel("back")
    back.translate_by((0.0, 0.0, -radius))
    front = make_panel("front")
    front.translate_by((0.0, 0.0, radius))

    comp = Component(name)
    comp.add(back)
    comp.add(front)
    comp.add_stitch(Interface.of(front, front.edges[1]),
                    Interface.of(back, back.edges[1]))
    comp.add_stitch(Interface.of(front, front.edges[3]),
                    Interface.of(back, back.edges[3]))
    # +azimuth at the back runs against local +x, at the front along it
    comp.set_interface("top", Interface.of(back, back.edges[2])
                       + Interface.of(front, front.edges[2], reverse=True))
    comp.set_interface("bottom", Interface.of(back, back.edges[0], reverse=True)
                       + Interface.of(front, front.edges[0]))
    return comp


def _pieces_of_splice(edited: EdgeSequence, t_head: float, t_tail: float,
                      n_insert: int):
    """Split a projection result into (head pieces, inserted, tail pieces).

    The solvers drop a cut below SNAP_PARAM of an edge, so the head/tail
    slots may be empty; piece counts follow directly from the cut params.
    """
    has_head = t_head > SNAP_PARAM
    has_tail = t_tail < 1.0 - SNAP_PARAM
    expect = int(has_head) + n_insert + int(has_tail)
    if len(edited) != expect:
        raise GeometryError(
            f"splice produced {len(edited)} pieces, expected {expect}"
        )
    head = [edited[0]] if has_head else []
    tail = [edited[-1]] if has_tail else []
    insert = list(edited[len(head):len(edited) - len(tail)])
    return head, insert, tail


def _centroid_2d(panel: Panel) -> np.ndarray:
    pts = outline_polyline(panel.edges)
    return pts.mean(axis=0)


def splice_dart(panel: Panel, edge: Edge, width: float, depth: float,
                t: float, interfaces) -> tuple[list[Edge], list[Edge]]:
    """Cut a dart into a loop edge, apex pointing into the panel.

    Replaces ``edge`` in the panel loop, remaps ``interfaces`` so the
    stitched span excludes the dart legs, and sews the legs together with
    an internal stitch.  Returns ([head, tail] surviving pieces, legs).
    """
    shape = dart_shape(width, depth)
    centroid = _centroid_2d(panel)
    chosen = None
    for reflect in (False, True):
        t1, t2, edited = project_on_edge(edge, shape, t, reflect=reflect)
        head, legs, tail = _pieces_of_splice(edited, t - t2, t + t1, 2)
        apex = np.array(legs[0].end)
        base_mid = np.array(edge.point_at(t))
        # apex must sit on the panel's side of the cut
        if (apex - base_mid) @ (centroid - base_mid) > 0:
            chosen = (head, legs, tail, edited)
            break
    if chosen is None:
        raise GeometryError("dart apex cannot point into the panel")
    head, legs, tail, edited = chosen
    if not head or not tail:
        raise GeometryError("dart reaches the end of its edge")
    panel.edges.substitute(edge, edited)
    remap_interface_entries(interfaces, {id(edge): (head + tail, False)})
    panel.add_internal_stitch(
        Interface.of(panel, legs[0]),
        Interface.of(panel, legs[1], reverse=True),
    )
    return head + tail, legs


def splice_corner(panel: Panel, e1: Edge, e2: Edge, shape: EdgeSequence,
                  interfaces, orientation_deg: float = 0.0):
    """Open the corner between consecutive loop edges and splice a shape.

    Remaps ``interfaces`` so entries on the cut edges keep only the
    surviving piece.  Returns (e1 pieces, inserted edges, e2 pieces).
    """
    t1, t2, edited = project_on_corner(e1, e2, shape, orientation_deg)
    has_head = t1 > SNAP_PARAM
    has_tail = t2 < 1.0 - SNAP_PARAM
    expect = int(has_head) + len(shape) + int(has_tail)
    if len(edited) != expect:
        raise GeometryError(
            f"corner splice produced {len(edited)} pieces, expected {expect}"
        )
    head = [edited[0]] if has_head else []
    tail = [edited[-1]] if has_tail else []
    insert = list(edited[len(head):len(edited) - len(tail)])
    panel.edges.substitute([e1, e2], edited)
    remap_interface_entries(interfaces, {
        id(e1): (head, False),
        id(e2): (tail, False),
    })
    return head, insert, tail


def panel_interfaces(*nodes):
    """Every interface reachable from the given panels/components, for
    remapping during splices."""
    from ..components import iter_interfaces

    seen = {}
    for node in nodes:
        for itf in iter_interfaces(node):
            seen[id(itf)] = itf
    return list(seen.values())
