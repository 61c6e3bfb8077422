"""Acceptance gate: one test per shipping criterion.

Every test prints one PASS line with its measured numbers when it
holds; a failing criterion shows up as an ordinary pytest failure.  All
oracles here are independent re-derivations (analytic circles, Bernstein
evaluation, finite differences, brute-force grids), not calls back into
the code under test.
"""

import json
import math
import random
import time
from importlib import resources

import numpy as np
import pytest

from sewkit.components import Component, Interface, Panel
from sewkit.edges import Edge, RelControl
from sewkit.edgeseq import EdgeSequence, from_verts
from sewkit.flattening import (
    match_fractions,
    pattern_from_json,
    pattern_to_json,
    serialize,
)
from sewkit.garments import GarmentSpec, all_specs, get, register
from sewkit.garments.registry import _REGISTRY
from sewkit.garments.sleeves import make_cap_task, sleeve_opening
from sewkit.params import body_from_dict, resolve_design, sample_design
from sewkit.solvers import invert_sleeve_curve, project_on_corner, project_on_edge


def _pass(label: str, detail: str = "") -> None:
    print(f"PASS {label}" + (f" ({detail})" if detail else ""))


def _bodies() -> dict:
    out = {}
    for name in ("average", "petite", "tall"):
        ref = resources.files("sewkit").joinpath(f"assets/bodies/{name}.json")
        out[name] = body_from_dict(json.loads(ref.read_text(encoding="utf-8")))
    return out


# ---- independent curve evaluators -------------------------------------------

def _frame(p0, p1):
    d = np.asarray(p1, float) - np.asarray(p0, float)
    return d, np.array([-d[1], d[0]])


def _abs_control(p0, p1, rel) -> np.ndarray:
    d, n = _frame(p0, p1)
    return np.asarray(p0, float) + rel[0] * d + rel[1] * n


def _bezier_controls(e: Edge) -> np.ndarray:
    p0, p1 = np.asarray(e.start, float), np.asarray(e.end, float)
    shape = e.shape
    if type(shape).__name__ == "QuadShape":
        return np.stack([p0, _abs_control(p0, p1, shape.control), p1])
    return np.stack([
        p0,
        _abs_control(p0, p1, shape.control1),
        _abs_control(p0, p1, shape.control2),
        p1,
    ])


def _bezier_points(ctrl: np.ndarray, t: np.ndarray) -> np.ndarray:
    n = len(ctrl) - 1
    t = t[:, None]
    out = np.zeros((len(t), 2))
    for i, p in enumerate(ctrl):
        out += math.comb(n, i) * (1 - t) ** (n - i) * t**i * p
    return out


def _bezier_derivative(ctrl: np.ndarray) -> np.ndarray:
    n = len(ctrl) - 1
    return n * np.diff(ctrl, axis=0)


def _peak_curvature(ctrl: np.ndarray, t_grid: np.ndarray) -> float:
    """Dense curvature scan plus ternary refinement around each local peak."""
    d1 = _bezier_derivative(ctrl)
    d2 = _bezier_derivative(d1)

    def kappa(t):
        t = np.atleast_1d(np.asarray(t, float))
        v1 = _bezier_points(d1, t) if len(d1) > 1 else np.repeat(d1, len(t), 0)
        v2 = _bezier_points(d2, t) if len(d2) > 1 else np.repeat(d2, len(t), 0)
        speed = np.hypot(*v1.T)
        return np.abs(v1[:, 0] * v2[:, 1] - v1[:, 1] * v2[:, 0]) / speed**3

    k = kappa(t_grid)
    best = float(np.max(k))
    interior = np.nonzero((k[1:-1] >= k[:-2]) & (k[1:-1] >= k[2:]))[0] + 1
    peaks = set(interior.tolist()) | {int(np.argmax(k))}
    for i in sorted(peaks, key=lambda j: -k[j])[:8]:
        a, b = t_grid[max(i - 1, 0)], t_grid[min(i + 1, len(t_grid) - 1)]
        for _ in range(100):
            m1, m2 = a + (b - a) / 3, b - (b - a) / 3
            if float(kappa(m1)[0]) < float(kappa(m2)[0]):
                a = m1
            else:
                b = m2
        best = max(best, float(kappa((a + b) / 2)[0]))
    return best


class _ArcOracle:
    """Analytic circle through the chord endpoints and the bulge apex.

    ``s`` is the sagitta as a fraction of chord length; the unnormalized
    left normal from ``_frame`` already carries one chord-length factor.
    """

    def __init__(self, p0, p1, s):
        p0 = np.asarray(p0, float)
        p1 = np.asarray(p1, float)
        d, n = _frame(p0, p1)
        apex = (p0 + p1) / 2 + s * n
        ax, ay = p0
        bx, by = apex
        cx, cy = p1
        det = 2 * (ax * (by - cy) + bx * (cy - ay) + cx * (ay - by))
        ux = ((ax**2 + ay**2) * (by - cy) + (bx**2 + by**2) * (cy - ay)
              + (cx**2 + cy**2) * (ay - by)) / det
        uy = ((ax**2 + ay**2) * (cx - bx) + (bx**2 + by**2) * (ax - cx)
              + (cx**2 + cy**2) * (bx - ax)) / det
        self.center = np.array([ux, uy])
        self.radius = float(np.hypot(*(p0 - self.center)))
        a0 = math.atan2(p0[1] - uy, p0[0] - ux)
        aa = math.atan2(apex[1] - uy, apex[0] - ux)
        a1 = math.atan2(p1[1] - uy, p1[0] - ux)
        d_apex = (aa - a0) % (2 * math.pi)
        d_end = (a1 - a0) % (2 * math.pi)
        self.a0 = a0
        self.span = d_end if d_apex <= d_end else d_end - 2 * math.pi

    def length(self) -> float:
        return self.radius * abs(self.span)

    def points(self, t: np.ndarray) -> np.ndarray:
        a = self.a0 + t * self.span
        return self.center + self.radius * np.stack([np.cos(a), np.sin(a)], axis=-1)

    def tangent(self, t: float) -> np.ndarray:
        a = self.a0 + t * self.span
        v = np.array([-math.sin(a), math.cos(a)]) * math.copysign(1.0, self.span)
        return v


def _random_edge(rng: random.Random, kind: str) -> Edge:
    def pt():
        return (rng.uniform(-30, 30), rng.uniform(-30, 30))

    while True:
        p0, p1 = pt(), pt()
        if math.dist(p0, p1) > 2.0:
            break
    if kind == "line":
        return Edge.line(p0, p1)
    if kind == "arc":
        s = rng.choice([-1, 1]) * rng.uniform(0.05, 1.2)
        return Edge.arc(p0, p1, s)
    def rel():
        return RelControl(rng.uniform(-0.3, 1.3),
                          rng.choice([-1, 1]) * rng.uniform(0.08, 1.2))
    if kind == "quad":
        return Edge.quad(p0, p1, rel())
    return Edge.cubic(p0, p1, rel(), rel())


KINDS = ("line", "arc", "quad", "cubic")


def test_edge_measurements_match_independent_oracles():
    """Length, tangent, and peak curvature on 1,000 random edges."""
    rng = random.Random(101)
    t_grid = np.linspace(0.0, 1.0, 1501)
    probe = (0.1, 0.3, 0.5, 0.7, 0.9)
    worst = {"len": 0.0, "tan": 0.0, "curv": 0.0}
    started = time.perf_counter()

    for k in range(1000):
        kind = KINDS[k % 4]
        e = _random_edge(rng, kind)

        if kind == "line":
            chord = math.dist(e.start, e.end)
            assert abs(e.length() - chord) <= 1e-4 * chord
            assert e.max_curvature() <= 1e-12
            continue

        if kind == "arc":
            oracle = _ArcOracle(e.start, e.end, e.shape.rel_sagitta)
            want_len = oracle.length()
            tangents = [(t, oracle.tangent(t)) for t in probe]
            want_curv = 1.0 / oracle.radius
        else:
            ctrl = _bezier_controls(e)
            pts = _bezier_points(ctrl, t_grid)
            want_len = float(np.sum(np.hypot(*np.diff(pts, axis=0).T)))
            tangents = []
            for t in probe:
                h = 1e-6
                fd = (_bezier_points(ctrl, np.array([t + h]))[0]
                      - _bezier_points(ctrl, np.array([t - h]))[0])
                tangents.append((t, fd / np.hypot(*fd)))
            want_curv = _peak_curvature(ctrl, t_grid)

        len_err = abs(e.length() - want_len) / want_len
        worst["len"] = max(worst["len"], len_err)
        assert len_err <= 1e-4, (kind, k)

        for t, want_tan in tangents:
            got = np.asarray(e.tangent_at(t))
            cross = float(got[0] * want_tan[1] - got[1] * want_tan[0])
            ang = abs(math.atan2(cross, float(got @ want_tan)))
            worst["tan"] = max(worst["tan"], ang)
            assert ang <= 1e-3, (kind, k, t)

        curv_err = abs(e.max_curvature() - want_curv) / want_curv
        worst["curv"] = max(worst["curv"], curv_err)
        assert curv_err <= 0.01, (kind, k)

    elapsed = time.perf_counter() - started
    assert elapsed < 10.0
    _pass("edge measurement oracles",
          f"1000 edges in {elapsed:.1f}s; worst rel len {worst['len']:.1e}, "
          f"tangent {worst['tan']:.1e} rad, curvature {worst['curv']:.1e}")


def test_relative_controls_survive_rigid_motions_bitwise():
    rng = random.Random(102)
    for k in range(1000):
        kind = KINDS[1 + k % 3]  # curved kinds carry controls
        e = _random_edge(rng, kind)
        angle = rng.uniform(-360, 360)
        pivot = (rng.uniform(-20, 20), rng.uniform(-20, 20))
        offset = (rng.uniform(-50, 50), rng.uniform(-50, 50))
        moved = e.rotated(angle, pivot).translated(offset)

        rad = math.radians(angle)
        c, s = math.cos(rad), math.sin(rad)

        def motion(p):
            x, y = p[0] - pivot[0], p[1] - pivot[1]
            return np.array([c * x - s * y + pivot[0] + offset[0],
                             s * x + c * y + pivot[1] + offset[1]])

        if kind == "arc":
            assert moved.shape.rel_sagitta == e.shape.rel_sagitta  # bitwise
            rel_pairs = []
        elif kind == "quad":
            assert moved.shape.control == e.shape.control
            rel_pairs = [(e.shape.control, moved.shape.control)]
        else:
            assert moved.shape.control1 == e.shape.control1
            assert moved.shape.control2 == e.shape.control2
            rel_pairs = [(e.shape.control1, moved.shape.control1),
                         (e.shape.control2, moved.shape.control2)]

        for rel_old, rel_new in rel_pairs:
            before = _abs_control(e.start, e.end, rel_old)
            after = _abs_control(moved.start, moved.end, rel_new)
            assert np.max(np.abs(after - motion(before))) <= 1e-9
    _pass("relative controls under rigid motion",
          "1000 edges x random rotations+translations, controls bitwise equal")


# ---- flattening --------------------------------------------------------------

def _strip(name: str, widths: list, y0: float) -> tuple[Panel, list]:
    """Rectangle whose bottom side is pre-split into len(widths) edges."""
    xs = [0.0]
    for w in widths:
        xs.append(xs[-1] + w)
    verts = [(x, y0) for x in xs] + [(xs[-1], y0 + 3.0), (0.0, y0 + 3.0)]
    panel = Panel(name, from_verts(*verts, loop=True))
    return panel, list(panel.edges)[: len(widths)]


def test_stitch_flattening_matches_fraction_oracle():
    rng = random.Random(103)
    checked = 0
    for trial in range(500):
        wa = [rng.uniform(0.5, 4.0) for _ in range(rng.randint(1, 6))]
        wb = [rng.uniform(0.5, 4.0) for _ in range(rng.randint(1, 6))]

        def fractions(ws):
            total = sum(ws)
            acc, out = 0.0, []
            for w in ws[:-1]:
                acc += w
                out.append(acc / total)
            return out

        ins_a, ins_b = match_fractions(fractions(wa), fractions(wb))
        merged_a = sorted(fractions(wa) + ins_a)
        merged_b = sorted(fractions(wb) + ins_b)
        assert len(merged_a) == len(merged_b)
        for fa, fb in zip(merged_a, merged_b):
            assert abs(fa - fb) <= 0.01

        root = Component("root")
        pa, edges_a = _strip("a", wa, 0.0)
        pb, edges_b = _strip("b", wb, 10.0)
        root.add(pa)
        root.add(pb)
        root.add_stitch(Interface.of(pa, *edges_a), Interface.of(pb, *edges_b))
        doc = serialize(root, (0.0, 0.0, 0.0)).to_doc()

        for name, widths, y0 in (("root.a", wa, 0.0), ("root.b", wb, 10.0)):
            p = doc["pattern"]["panels"][name]
            verts = p["vertices"]
            per = sum(
                math.dist(verts[e["endpoints"][0]], verts[e["endpoints"][1]])
                for e in p["edges"]
            )
            want = 2 * sum(widths) + 6.0
            assert abs(per - want) <= 1e-6 * want

        seen = set()
        counts = {"root.a": 0, "root.b": 0}
        for record in doc["pattern"]["stitches"]:
            assert len(record) == 2 and all(len(side) == 1 for side in record)
            for side in record:
                key = (side[0]["panel"], side[0]["edge"])
                assert key not in seen  # one stitch per edge
                seen.add(key)
                counts[side[0]["panel"]] += 1
        assert counts["root.a"] == counts["root.b"] == len(merged_a) + 1
        checked += 1
    assert checked == 500
    _pass("stitch flattening", "500 random interface pairs, fractions within 0.01, "
          "perimeters within 1e-6, one stitch per edge")


def test_unequal_sides_split_at_the_shared_midpoint():
    ins_a, ins_b = match_fractions([0.5], [])
    assert ins_a == [] and ins_b == [0.5]  # [2,2] against [6]: cut at exactly half
    root = Component("root")
    pa, edges_a = _strip("a", [2.0, 2.0], 0.0)
    pb, edges_b = _strip("b", [6.0], 10.0)
    root.add(pa)
    root.add(pb)
    root.add_stitch(Interface.of(pa, *edges_a), Interface.of(pb, *edges_b))
    doc = serialize(root, (0.0, 0.0, 0.0)).to_doc()
    b = doc["pattern"]["panels"]["root.b"]
    bottom = sorted(
        math.dist(b["vertices"][e["endpoints"][0]], b["vertices"][e["endpoints"][1]])
        for e in b["edges"]
        if b["vertices"][e["endpoints"][0]][1] == b["vertices"][e["endpoints"][1]][1] == 10.0
    )
    assert bottom == [3.0, 3.0]
    _pass("hand-checked gather case", "lengths [2,2] vs [6] split into [3,3]")


# ---- projection solvers -------------------------------------------------------

def _shape_for(vec) -> EdgeSequence:
    return EdgeSequence([Edge.line((0.0, 0.0), vec)])


def test_corner_projection_matches_closed_forms_and_grids():
    rng = random.Random(104)

    # straight corners: the optimum solves a 2x2 linear system exactly
    for _ in range(200):
        corner = (rng.uniform(-5, 5), rng.uniform(-5, 5))
        a_end = (corner[0] + rng.uniform(3, 12), corner[1] + rng.uniform(3, 12))
        b_end = (corner[0] + rng.uniform(3, 12), corner[1] - rng.uniform(3, 12))
        e1 = Edge.line(a_end, corner)
        e2 = Edge.line(corner, b_end)
        ta, tb = rng.uniform(0.15, 0.85), rng.uniform(0.15, 0.85)
        pv = np.asarray(e1.point_at(ta)) - np.asarray(e2.point_at(tb))
        t1, t2, edited = project_on_corner(e1, e2, _shape_for(tuple(pv)))
        assert abs(t1 - ta) <= 1e-6 and abs(t2 - tb) <= 1e-6
        assert edited.is_chained()

    # worked examples
    e1 = Edge.line((0, 2), (0, 0))
    e2 = Edge.line((0, 0), (2, 0))
    t1, t2, _ = project_on_corner(e1, e2, _shape_for((-1.0, 1.0)))
    assert abs(t1 - 0.5) <= 1e-6 and abs(t2 - 0.5) <= 1e-6
    t1, t2, _ = project_on_corner(e1, e2, _shape_for((0.0, 2.0)))
    assert abs(t1) <= 1e-6 and abs(t2) <= 1e-6

    # curved corners against a brute-force grid
    grid = np.linspace(0.0, 1.0, 200)
    for k in range(200):
        corner = (rng.uniform(-5, 5), rng.uniform(-5, 5))
        a_end = (corner[0] + rng.uniform(4, 12), corner[1] + rng.uniform(4, 12))
        b_end = (corner[0] + rng.uniform(4, 12), corner[1] - rng.uniform(4, 12))
        if k % 2:
            e1 = Edge.quad(a_end, corner, RelControl(rng.uniform(0.2, 0.8),
                                                     rng.uniform(-0.4, 0.4)))
            e2 = Edge.arc(corner, b_end, rng.uniform(-0.35, 0.35))
        else:
            e1 = Edge.arc(a_end, corner, rng.uniform(-0.35, 0.35))
            e2 = Edge.cubic(corner, b_end, RelControl(0.3, rng.uniform(-0.3, 0.3)),
                            RelControl(0.7, rng.uniform(-0.3, 0.3)))
        ta, tb = rng.uniform(0.2, 0.8), rng.uniform(0.2, 0.8)
        pv = np.asarray(e1.point_at(ta)) - np.asarray(e2.point_at(tb))
        t1, t2, _ = project_on_corner(e1, e2, _shape_for(tuple(pv)))

        p1 = np.array([e1.point_at(t) for t in grid])
        p2 = np.array([e2.point_at(t) for t in grid])
        diff = p1[:, None, :] - p2[None, :, :] - pv
        objective = np.sum(diff * diff, axis=-1)
        got = np.asarray(e1.point_at(t1)) - np.asarray(e2.point_at(t2)) - pv
        assert float(got @ got) <= float(objective.min()) + 1e-9
        i, j = np.unravel_index(int(objective.argmin()), objective.shape)
        assert abs(t1 - grid[i]) <= 1.5 / 200 and abs(t2 - grid[j]) <= 1.5 / 200
    _pass("corner projection", "200 straight corners at 1e-6, 200 curved corners "
          "beat or meet a 200x200 grid")


def test_edge_projection_matches_arc_length_closed_form():
    rng = random.Random(105)
    for _ in range(200):
        length = rng.uniform(5.0, 30.0)
        t = rng.uniform(0.2, 0.8)
        width = rng.uniform(0.2, 1.8) * min(t, 1.0 - t) * length
        target = Edge.line((0.0, 0.0), (length, 0.0))
        t1, t2, _ = project_on_edge(target, _shape_for((width, 0.0)), t)
        want = width / (2.0 * length)
        assert abs(t1 - want) <= 1e-6 and abs(t2 - want) <= 1e-6

    target = Edge.line((0.0, 0.0), (10.0, 0.0))
    t1, t2, edited = project_on_edge(target, _shape_for((2.0, 0.0)), 0.5)
    assert abs(t1 - 0.1) <= 1e-6 and abs(t2 - 0.1) <= 1e-6
    assert math.dist(edited[0].end, (4.0, 0.0)) <= 1e-6
    t1, t2, edited = project_on_edge(target, _shape_for((2.0, 0.0)), 0.9)
    assert abs(t1 - 0.1) <= 1e-6 and abs(t2 - 0.1) <= 1e-6
    assert math.dist(edited[0].end, (8.0, 0.0)) <= 1e-6
    _pass("edge projection", "200 straight targets match w/(2L) at 1e-6; "
          "interior and boundary worked cases exact")


# ---- sleeve cap inversion -----------------------------------------------------

def test_sleeve_inversion_meets_length_and_tangent_gates():
    rng = random.Random(106)
    solved = 0
    worst_len, worst_ang = 0.0, 0.0
    for case in range(50):
        w = rng.uniform(6.0, 15.0)
        d = rng.uniform(9.0, 22.0)
        opening = Edge.cubic(
            (0.0, 0.0), (w, -d),
            RelControl(rng.uniform(0.05, 0.25), -rng.uniform(0.05, 0.3)),
            RelControl(rng.uniform(0.6, 0.95), -rng.uniform(0.05, 0.3)),
        )
        for theta in (0.0, 15.0, 30.0, 45.0):
            task = make_cap_task(opening, theta)
            cap = invert_sleeve_curve(task)
            want = task.target_length
            len_err = abs(cap.length() - want)
            worst_len = max(worst_len, len_err / want)
            assert len_err <= 1e-3 * want, (case, theta)
            for t, target in ((0.0, task.start_tangent), (1.0, task.end_tangent)):
                got = np.asarray(cap.tangent_at(t))
                ang = math.degrees(math.acos(float(np.clip(got @ target, -1, 1))))
                worst_ang = max(worst_ang, ang)
                assert ang <= 1.0, (case, theta, t)
            solved += 1
    assert solved == 200

    # a straight chord with matching tangents is already optimal
    straight = Edge.cubic((0.0, 0.0), (0.0, -12.0),
                          RelControl(1 / 3, 0.0), RelControl(2 / 3, 0.0))
    task = make_cap_task(straight, 0.0)
    cap = invert_sleeve_curve(task)
    d0 = np.asarray(cap.tangent_at(0.0)) - np.asarray(task.start_tangent)
    d1 = np.asarray(cap.tangent_at(1.0)) - np.asarray(task.end_tangent)
    energy = ((cap.length() - task.target_length) ** 2 + float(d0 @ d0)
              + float(d1 @ d1) + task.curvature_weight * cap.max_curvature() ** 2)
    assert energy <= 1e-8
    _pass("sleeve cap inversion",
          f"50 openings x 4 rest angles; worst rel length {worst_len:.1e}, "
          f"worst tangent {worst_ang:.2f} deg; straight input energy {energy:.1e}")


# ---- end-to-end garment suite -------------------------------------------------

def test_full_garment_library_builds_and_serializes_byte_stably():
    bodies = _bodies()
    started = time.perf_counter()
    built = 0
    worst_waist = 0.0
    for spec in all_specs():
        for body in bodies.values():
            template = resolve_design(spec.design_template(), body)
            for seed in range(100):
                doc = sample_design(template, body, seed=seed)
                resolved = resolve_design(doc, body)
                assert resolved.warnings == []
                comp = spec.build(body, resolved)
                pattern = serialize(comp, (0.0, 0.0, 0.0))
                text = pattern_to_json(pattern)
                assert pattern_to_json(pattern_from_json(text)) == text
                for iname in spec.waist_interfaces:
                    err = abs(comp.interfaces[iname].length() - body["waist"])
                    worst_waist = max(worst_waist, err)
                    assert err <= 1e-3
                built += 1
    elapsed = time.perf_counter() - started
    assert built == len(all_specs()) * 3 * 100
    assert elapsed < 120.0
    _pass("end-to-end garment suite",
          f"{built} sampled builds round-tripped byte-stably in {elapsed:.0f}s; "
          f"worst waist error {worst_waist:.1e} cm")


# ---- component interchangeability ---------------------------------------------

def _upper_bytes(comp) -> bytes:
    doc = serialize(comp, (0.0, 0.0, 0.0)).to_doc()
    upper = {k: v for k, v in doc["pattern"]["panels"].items()
             if ".fitted_bodice." in k or "_sleeve." in k}
    return json.dumps(upper, sort_keys=True).encode()


def test_bottoms_swap_without_touching_the_upper():
    body = _bodies()["average"]
    spec = get("meta_garment")
    seen = set()
    bottom_names = sorted(
        s.name for s in all_specs() if "bottom" in s.tags
    )
    for bottom in bottom_names:
        doc = spec.design_template()
        doc["design"]["bottom"]["value"] = bottom
        comp = spec.build(body, resolve_design(doc, body))
        seen.add(_upper_bytes(comp))
    assert len(seen) == 1

    def build_tube(body, vals):
        comp = Component("late_tube")
        panel = Panel("p", from_verts(
            (0.0, 0.0), (35.0, 0.0), (35.0, -30.0), (0.0, -30.0), loop=True
        ))
        comp.add(panel)
        comp.set_interface("top", Interface.of(panel, panel.edges[0]))
        return comp

    register(GarmentSpec(name="late_tube", build_values=build_tube,
                         design_template=lambda: {"design": {}},
                         tags=frozenset({"bottom"})))
    try:
        doc = spec.design_template()
        assert "late_tube" in doc["design"]["bottom"]["range"]
        assert "compound_skirt" in doc["design"]["bottom"]["range"]
        doc["design"]["bottom"]["value"] = "late_tube"
        comp = spec.build(body, resolve_design(doc, body))
        assert "late_tube" in comp
        assert _upper_bytes(comp) in seen
    finally:
        del _REGISTRY["late_tube"]
    _pass("component interchangeability",
          f"upper bytes identical across {len(bottom_names)} bottoms; "
          "a bottom registered at runtime plugs in with zero combinator edits")
