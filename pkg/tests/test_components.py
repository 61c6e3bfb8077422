import copy
import math
import random

import numpy as np
import pytest
from scipy.spatial.transform import Rotation

from sewkit.components import (
    Component,
    Interface,
    InterfaceEntry,
    Panel,
    Placement,
    StitchingRule,
    distribute_circle,
    distribute_line,
    is_ccw,
    iter_interfaces,
    mirror,
    orient_all_normals,
    orient_normal,
    place_by_interface,
)
from sewkit.edges import Edge
from sewkit.edgeseq import EdgeSequence, from_verts
from sewkit.errors import GeometryError, StitchError


def square_panel(name="p", size=4.0, ccw=True):
    if ccw:
        loop = from_verts((0, 0), (size, 0), (size, size), (0, size), loop=True)
    else:
        loop = from_verts((0, 0), (0, size), (size, size), (size, 0), loop=True)
    return Panel(name, loop)


def rand_rotation(rng):
    return Rotation.from_euler(
        "XYZ", [rng.uniform(-180, 180) for _ in range(3)], degrees=True
    )


# ---- placement algebra ---------------------------------------------------------

@pytest.mark.filterwarnings("ignore:Gimbal lock")
def test_placement_lift_and_euler_roundtrip():
    pl = Placement.from_euler_degrees((0, 90, 0), (1, 2, 3))
    # +90 deg about y maps +x to -z
    assert pl.lift((1, 0)) == pytest.approx((1, 2, 2), abs=1e-12)
    assert pl.euler_degrees == pytest.approx((0, 90, 0), abs=1e-9)


def test_placement_composition_matches_matrix_product():
    rng = random.Random(3)
    for _ in range(30):
        a = Placement(rand_rotation(rng), [rng.uniform(-5, 5) for _ in range(3)])
        b = Placement(rand_rotation(rng), [rng.uniform(-5, 5) for _ in range(3)])
        combo = a.after(b)  # b ∘ a
        assert np.allclose(combo.matrix(), b.matrix() @ a.matrix(), atol=1e-12)
        p = np.array([rng.uniform(-3, 3) for _ in range(3)])
        assert np.allclose(combo.apply(p), b.apply(a.apply(p)), atol=1e-9)


# ---- transform propagation -------------------------------------------------------

def three_level():
    root = Component("root")
    mid = Component("mid")
    leaf = square_panel("leaf")
    mid.add(leaf)
    root.add(mid)
    root.add(square_panel("other"))
    return root, mid, leaf


def test_translate_propagates_to_descendants():
    root, _, leaf = three_level()
    before = leaf.placement.translation.copy()
    root.translate_by((0, 10, 0))
    assert np.allclose(leaf.placement.translation, before + (0, 10, 0))


def test_double_half_turn_restores_world_placement():
    root, _, leaf = three_level()
    leaf.placement = Placement.from_euler_degrees((10, 20, 30), (1, 2, 3))
    want = leaf.placement.matrix()
    half = Rotation.from_euler("y", 180, degrees=True)
    root.rotate_by(half)
    root.rotate_by(half)
    assert np.allclose(leaf.placement.matrix(), want, atol=1e-9)


def test_nested_transforms_match_matrix_oracle():
    root, mid, leaf = three_level()
    leaf.placement = Placement.from_euler_degrees((5, -40, 12), (2, -1, 0.5))
    base = leaf.placement.matrix()
    m1 = Placement(Rotation.from_euler("z", 37, degrees=True))
    m2 = Placement(translation=(0, 4, -2))
    m3 = Placement(Rotation.from_euler("x", -15, degrees=True))
    m4 = Placement(translation=(1, 1, 1))
    mid.rotate_by(m1.rotation)
    root.translate_by(m2.translation)
    root.rotate_by(m3.rotation)
    root.translate_by(m4.translation)
    want = m4.matrix() @ m3.matrix() @ m2.matrix() @ m1.matrix() @ base
    assert np.allclose(leaf.placement.matrix(), want, atol=1e-9)


# ---- interfaces ------------------------------------------------------------------

def test_interface_com_weighted_and_order_invariant():
    p = square_panel()
    p.placement = Placement(translation=(0, 0, 7))
    top = p.edges[2]      # (4,4) -> (0,4)
    right = p.edges[1]    # (4,0) -> (4,4)
    itf = Interface.of(p, top, right)
    com = itf.com()
    # equal lengths: average of the two placed midpoints
    assert com == pytest.approx([(2 + 4) / 2, (4 + 2) / 2, 7], abs=1e-12)
    assert itf.reversed().com() == pytest.approx(com, abs=1e-12)


def test_interface_combine_and_reverse_order():
    p = square_panel()
    a = Interface.of(p, p.edges[0])
    b = Interface.of(p, p.edges[1], reverse=True)
    combo = a + b
    assert len(combo) == 2
    rev = combo.reversed()
    assert rev.entries[0].edge is p.edges[1]
    assert rev.entries[0].reverse is False
    assert rev.entries[1].reverse is True


def test_construction_interface_has_no_com():
    e = Edge.line((0, 0), (1, 0))
    itf = Interface([InterfaceEntry(None, e)])
    with pytest.raises(GeometryError):
        itf.com()


def test_stitching_rule_rejects_empty_side():
    p = square_panel()
    with pytest.raises(StitchError):
        StitchingRule(Interface.of(p, p.edges[0]), Interface([]))


# ---- validation ---------------------------------------------------------------

def test_validate_accepts_wellformed_tree():
    root, _, leaf = three_level()
    other = root["other"]
    leaf.set_interface("side", leaf.edges[1])
    other.set_interface("side", other.edges[3])
    root.add_stitch(leaf.interfaces["side"], other.interfaces["side"])
    root.validate()


def test_validate_rejects_open_loop():
    p = Panel("bad", from_verts((0, 0), (4, 0), (4, 4)))
    c = Component("c")
    c.add(p)
    with pytest.raises(GeometryError):
        c.validate()


def test_validate_rejects_foreign_interface_edge():
    p = square_panel()
    stray = Edge.line((9, 9), (10, 9))
    p.interfaces["bad"] = Interface.of(p, stray)
    with pytest.raises(GeometryError):
        p.validate()


def test_validate_rejects_stitch_outside_subtree():
    inside = square_panel("inside")
    outside = square_panel("outside")
    c = Component("c")
    c.add(inside)
    c.add_stitch(
        Interface.of(inside, inside.edges[0]),
        Interface.of(outside, outside.edges[0]),
    )
    with pytest.raises(StitchError):
        c.validate()


def test_duplicate_child_names_rejected():
    c = Component("c")
    c.add(square_panel("twin"))
    with pytest.raises(GeometryError):
        c.add(square_panel("twin"))


# ---- collect_panels ----------------------------------------------------------------

def test_collect_panels_depth_first_with_qualified_names():
    root = Component("g")
    a = Component("a")
    a.add(square_panel("p1"))
    a.add(square_panel("p2"))
    b = Component("b")
    b.add(square_panel("p3"))
    root.add(a)
    root.add(b)
    root.add(square_panel("p4"))
    names = [n for n, _ in root.collect_panels()]
    assert names == ["g.a.p1", "g.a.p2", "g.b.p3", "g.p4"]


# ---- mirror ---------------------------------------------------------------------

def mirrored_pair():
    p = square_panel("half")
    p.placement = Placement.from_euler_degrees((0, 30, 0), (10, 2, 3))
    p.set_interface("side", p.edges[1])
    return p, mirror(p)


def test_mirror_negates_translation_x():
    p, m = mirrored_pair()
    assert m.placement.translation == pytest.approx([-10, 2, 3])
    assert p.placement.translation == pytest.approx([10, 2, 3])  # original untouched


def test_mirror_mirrors_world_geometry_exactly():
    p, m = mirrored_pair()
    for e_orig, e_mir in zip(p.edges, m.edges):
        for t in (0.0, 0.3, 0.7):
            w = p.placement.lift(e_orig.point_at(t))
            wm = m.placement.lift(e_mir.point_at(t))
            assert wm == pytest.approx([-w[0], w[1], w[2]], abs=1e-9)


def test_mirror_involution_and_lengths():
    p, m = mirrored_pair()
    back = mirror(m)
    for e1, e2 in zip(p.edges, back.edges):
        for t in (0.0, 0.5, 1.0):
            assert e2.point_at(t) == pytest.approx(e1.point_at(t), abs=1e-9)
    assert m.interfaces["side"].length() == pytest.approx(
        p.interfaces["side"].length(), abs=1e-9
    )
    # interface entries retargeted to the clone's own edges
    assert m.interfaces["side"].entries[0].edge in m.edges
    assert m.interfaces["side"].entries[0].panel is m


def test_mirror_about_offset_axis():
    p = square_panel()
    p.placement = Placement(translation=(3, 0, 0))
    m = mirror(p, axis_x=5.0)
    assert m.placement.translation == pytest.approx([7, 0, 0])


# ---- distribution -------------------------------------------------------------------

def test_distribute_line_offsets():
    row = distribute_line(square_panel(), 3, (5, 0, 0))
    offs = [child.placement.translation for child in row.children]
    assert np.allclose(offs, [(0, 0, 0), (5, 0, 0), (10, 0, 0)])
    assert [c.name for c in row.children] == ["p_0", "p_1", "p_2"]


def test_distribute_circle_rotations():
    p = square_panel()
    p.placement = Placement(translation=(0, 0, 10))
    ring = distribute_circle(p, 4)
    pts = [child.placement.apply((0, 0, 0)) for child in ring.children]
    assert np.allclose(pts[0], (0, 0, 10), atol=1e-9)
    assert np.allclose(pts[1], (10, 0, 0), atol=1e-9)   # +90 deg about y
    assert np.allclose(pts[2], (0, 0, -10), atol=1e-9)
    assert np.allclose(pts[3], (-10, 0, 0), atol=1e-9)


def test_distribute_preserves_total_interface_length():
    p = square_panel()
    p.set_interface("top", p.edges[2])
    ring = distribute_circle(p, 5)
    total = sum(child.interfaces["top"].length() for child in ring.children)
    assert total == pytest.approx(5 * 4.0, rel=1e-12)


def test_distribute_rejects_zero():
    with pytest.raises(GeometryError):
        distribute_line(square_panel(), 0, (1, 0, 0))


# ---- normal orientation -----------------------------------------------------------

def test_orient_normal_keeps_outward_ccw_panel():
    p = square_panel(ccw=True)
    p.placement = Placement(translation=(0, 0, 10))  # faces +z, body at origin
    edges_before = list(p.edges)
    assert orient_normal(p) is False
    assert list(p.edges) == edges_before


def test_orient_normal_flips_cw_panel_and_remaps_interfaces():
    p = square_panel(ccw=False)
    p.placement = Placement(translation=(0, 0, 10))
    target = p.edges[1]
    itf = p.set_interface("side", target)
    assert orient_normal(p) is True
    assert is_ccw(p.edges)
    entry = itf.entries[0]
    assert entry.reverse is True
    assert entry.edge in p.edges
    assert entry.edge.start == pytest.approx(target.end)
    assert entry.edge.end == pytest.approx(target.start)


def test_orient_normal_idempotent():
    p = square_panel(ccw=False)
    p.placement = Placement(translation=(0, 0, 10))
    orient_normal(p)
    edges_once = list(p.edges)
    assert orient_normal(p) is False
    assert list(p.edges) == edges_once


def test_orient_normal_ignores_vertical_offset():
    # panel far below the body center but in front of the axis: the vote
    # must use the horizontal direction only
    p = square_panel(ccw=True)
    p.placement = Placement(translation=(0, -200, 10))
    assert orient_normal(p, body_center=(0, 0, 0)) is False


def test_orient_normal_vote_matches_dense_polygon_oracle():
    rng = random.Random(11)
    for _ in range(40):
        n = rng.randint(3, 7)
        angles = sorted(rng.uniform(0, 2 * math.pi) for _ in range(n))
        if min(b - a for a, b in zip(angles, angles[1:])) < 0.3:
            continue
        radius = rng.uniform(3, 8)
        verts = [(radius * math.cos(a), radius * math.sin(a)) for a in angles]
        loop = EdgeSequence()
        for a, b in zip(verts, verts[1:] + verts[:1]):
            if rng.random() < 0.6:
                loop.append(Edge.arc(a, b, rng.choice([-1, 1]) * rng.uniform(0.05, 0.42)))
            else:
                loop.append(Edge.line(a, b))
        if rng.random() < 0.5:
            loop = loop.reversed()
        dense = []
        for e in loop:
            dense.extend(e.point_at(t) for t in np.linspace(0, 1, 150, endpoint=False))
        dense = np.array(dense)
        x, y = dense[:, 0], dense[:, 1]
        area = 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))
        assert is_ccw(loop) == (area > 0)


def test_orient_all_normals_remaps_component_level_interfaces():
    p = square_panel(ccw=False)
    p.placement = Placement(translation=(0, 0, 10))
    c = Component("c")
    c.add(p)
    itf = c.set_interface("side", Interface.of(p, p.edges[1]))
    orient_all_normals(c)
    assert itf.entries[0].edge in p.edges
    assert itf.entries[0].reverse is True
    c.validate()


# ---- place_by_interface ----------------------------------------------------------------

def test_place_by_interface_aligns_coms():
    a = square_panel("a")
    b = square_panel("b")
    b.placement = Placement(translation=(0, 5, 0))
    moved_if = Interface.of(a, a.edges[2])
    target_if = Interface.of(b, b.edges[0])
    place_by_interface(a, moved_if, target_if, gap=0)
    assert np.allclose(moved_if.com(), target_if.com(), atol=1e-12)
    # top-edge midpoint (2,4,0) must land on placed bottom-edge midpoint (2,5,0)
    assert a.placement.translation == pytest.approx([0, 1, 0])


def test_place_by_interface_gap_separation():
    rng = random.Random(5)
    for _ in range(10):
        a = square_panel("a")
        a.placement = Placement(
            rand_rotation(rng), [rng.uniform(-10, 10) for _ in range(3)]
        )
        b = square_panel("b")
        b.placement = Placement(
            rand_rotation(rng), [rng.uniform(-10, 10) for _ in range(3)]
        )
        gap = rng.uniform(0.1, 2.0)
        moved_if = Interface.of(a, a.edges[2])
        target_if = Interface.of(b, b.edges[0])
        place_by_interface(a, moved_if, target_if, gap=gap)
        dist = float(np.linalg.norm(moved_if.com() - target_if.com()))
        assert dist <= gap + 1e-6
        assert dist == pytest.approx(gap, abs=1e-6)


def test_place_by_interface_gap_direction():
    a = square_panel("a")          # com at (2,2,0); top edge com at (2,4,0): +y
    b = square_panel("b")
    b.placement = Placement(translation=(0, 5, 0))
    moved_if = Interface.of(a, a.edges[2])
    target_if = Interface.of(b, b.edges[0])
    place_by_interface(a, moved_if, target_if, gap=1.5)
    assert np.allclose(moved_if.com() - target_if.com(), (0, 1.5, 0), atol=1e-9)


# ---- interface iteration helper -----------------------------------------------------

def test_iter_interfaces_deduplicates_shared_objects():
    p = square_panel()
    shared = p.set_interface("side", p.edges[1])
    c = Component("c")
    c.add(p)
    c.set_interface("side", shared)
    other = p.set_interface("top", p.edges[2])
    c.add_stitch(shared, other)
    found = list(iter_interfaces(c))
    assert sum(1 for i in found if i is shared) == 1
    assert sum(1 for i in found if i is other) == 1
