"""Optimization-backed construction helpers.

Four operations garments lean on when plain vertex arithmetic is not
enough: splicing an opening shape into a corner, splicing it into the
interior of an edge, building a quadratic curve that peaks at a chosen
point, and inverting a sleeve-opening cubic so it keeps its length and
meets prescribed end tangents.

All parameter values (t, t1, t2) follow the edge parameterization
convention: arc-length-uniform for lines and circular arcs, polynomial
for Bezier edges.  The projections run a bounded Nelder-Mead search
restarted from a coarse grid, then a small bounded least-squares polish
so the returned optimum is accurate to ~1e-9 in the parameters, well
inside every documented tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .edges import CubicShape, Edge, Point2, RelControl, _dist, _to_rel
from .edgeseq import CHAIN_TOL, EdgeSequence
from .errors import GeometryError, SolverError

# Feasibility threshold for corner projection: distance (cm) between the
# achievable opening and the requested one.
CORNER_RESIDUAL_TOL = 1e-3
# Edge projection objective is a sum of squared lengths, so its threshold
# is in cm^2.
EDGE_RESIDUAL_TOL = 1e-3
# Parameters closer than this to 0/1 are treated as exact boundary hits
# (avoids slivers shorter than the minimum chord).
SNAP_PARAM = 1e-6
# Splice endpoints must land on the cut points at least this precisely
# before the final exact alignment is applied.
SPLICE_GAP_TOL = 1e-4

_NM_OPTIONS = {"fatol": 1e-10, "xatol": 1e-10, "maxiter": 500}


def _as_xy(p) -> Point2:
    return Point2(float(p[0]), float(p[1]))


def _nm_with_grid(objective, bounds, grid_per_axis, restarts=3):
    """Bounded Nelder-Mead restarted from the best coarse-grid cells."""
    axes = [np.linspace(lo, hi, grid_per_axis) for lo, hi in bounds]
    mesh = np.stack([m.ravel() for m in np.meshgrid(*axes, indexing="ij")], axis=1)
    scores = np.array([objective(x) for x in mesh])
    order = np.argsort(scores)
    best_x, best_val = mesh[order[0]], float(scores[order[0]])
    for idx in order[:restarts]:
        res = optimize.minimize(
            objective,
            mesh[idx],
            method="Nelder-Mead",
            bounds=bounds,
            options=_NM_OPTIONS,
        )
        if res.fun < best_val:
            best_x, best_val = res.x, float(res.fun)
        if best_val < 1e-16:
            break
    return np.asarray(best_x, dtype=float), best_val


def _polish(residual_vec, x0, bounds):
    """Bounded least-squares refinement of a Nelder-Mead optimum."""
    lo = [b[0] for b in bounds]
    hi = [b[1] for b in bounds]
    x0 = np.clip(np.asarray(x0, dtype=float), lo, hi)
    try:
        res = optimize.least_squares(
            residual_vec, x0, bounds=(lo, hi), xtol=1e-15, ftol=1e-15, gtol=1e-15
        )
    except Exception:
        return x0
    old = np.asarray(residual_vec(x0), dtype=float)
    return res.x if res.cost * 2.0 <= float(old @ old) else x0


def _aligned_copy(shape: EdgeSequence, new_start, new_end) -> EdgeSequence:
    """Rigidly move (plus an epsilon-level uniform rescale) an open chain so
    its endpoints land exactly on the given points.  Interior chaining is
    preserved because one similarity map is applied to every edge."""
    a, b = shape.start, shape.end
    va = (b.x - a.x, b.y - a.y)
    vb = (new_end[0] - new_start[0], new_end[1] - new_start[1])
    la = math.hypot(*va)
    lb = math.hypot(*vb)
    if la <= 0.0 or lb <= 0.0:
        raise GeometryError("cannot align a shape with a degenerate opening")
    angle = math.degrees(math.atan2(va[0] * vb[1] - va[1] * vb[0], va[0] * vb[0] + va[1] * vb[1]))
    moved = shape.translated((-a.x, -a.y)).rotated(angle).scaled(lb / la)
    return moved.translated(new_start)


def _check_open_shape(shape: EdgeSequence):
    if len(shape) < 1:
        raise GeometryError("projection shape needs at least one edge")
    if not shape.is_chained():
        raise GeometryError("projection shape must be a chained sequence")
    if shape.is_loop() or _dist(shape.start, shape.end) <= CHAIN_TOL:
        raise GeometryError("projection shape must have a nonzero opening")


def _head(edge: Edge, t: float) -> list[Edge]:
    """Portion of ``edge`` before parameter t ([] when t snaps to 0)."""
    if t <= SNAP_PARAM:
        return []
    if t >= 1.0 - SNAP_PARAM:
        return [edge]
    return [edge.split_at_params([t])[0]]


def _tail(edge: Edge, t: float) -> list[Edge]:
    """Portion of ``edge`` after parameter t ([] when t snaps to 1)."""
    if t >= 1.0 - SNAP_PARAM:
        return []
    if t <= SNAP_PARAM:
        return [edge]
    return [edge.split_at_params([t])[1]]


def project_on_corner(
    e1: Edge,
    e2: Edge,
    shape: EdgeSequence,
    orientation_deg: float = 0.0,
) -> tuple[float, float, EdgeSequence]:
    """Cut a corner open and splice ``shape`` into it.

    ``e1`` runs into the corner, ``e2`` runs out of it.  The shape is first
    rotated by ``orientation_deg`` (the caller decides how the opening should
    face; nothing about the corner constrains it).  The cut parameters
    minimize the distance between the achievable opening e1(t1) - e2(t2)
    and the shape's opening vector.  In the result, e1 keeps its part before
    t1 and e2 its part after t2; the corner-side leftovers are dropped and
    the shape bridges the gap, traversed end-to-start so the chain stays
    head-to-tail.

    Returns (t1, t2, edited sequence).
    """
    _check_open_shape(shape)
    if _dist(e1.end, e2.start) > CHAIN_TOL:
        raise GeometryError("corner edges must chain (e1.end == e2.start)")
    oriented = shape.rotated(orientation_deg, pivot=shape.start)
    pv = (oriented.end.x - oriented.start.x, oriented.end.y - oriented.start.y)

    def residual(x):
        p1 = e1.point_at(float(x[0]))
        p2 = e2.point_at(float(x[1]))
        return np.array([p1.x - p2.x - pv[0], p1.y - p2.y - pv[1]])

    def objective(x):
        r = residual(x)
        return float(r @ r)

    bounds = [(0.0, 1.0), (0.0, 1.0)]
    x, _ = _nm_with_grid(objective, bounds, grid_per_axis=5)
    x = _polish(residual, x, bounds)
    gap = math.sqrt(objective(x))
    if gap > CORNER_RESIDUAL_TOL:
        raise SolverError(
            f"shape opening does not fit the corner (best gap {gap:.3g} cm)",
            residuals={"opening_gap_cm": gap},
        )
    t1, t2 = float(x[0]), float(x[1])
    p1 = e1.point_at(t1)
    p2 = e2.point_at(t2)
    insert = _aligned_copy(oriented.reversed(), p1, p2)
    edited = EdgeSequence([*_head(e1, t1), *insert, *_tail(e2, t2)])
    if not edited.is_chained():
        raise SolverError("corner splice produced a broken chain")
    return t1, t2, edited


def project_on_edge(
    target: Edge,
    shape: EdgeSequence,
    t: float,
    reflect: bool = False,
) -> tuple[float, float, EdgeSequence]:
    """Open the interior of ``target`` around e(t) and splice ``shape`` in.

    The optimizer picks offsets t1 (forward) and t2 (backward) so the two
    cut points are separated by the shape's opening width and sit at equal
    straight-line distance from e(t).  The middle section is removed, the
    shape is rotated so its opening follows the insertion vector
    e(t+t1) - e(t-t2) (mirrored across that vector when ``reflect``), and
    spliced start-to-end.

    Returns (t1, t2, edited sequence).
    """
    _check_open_shape(shape)
    if not 0.0 < t < 1.0:
        raise GeometryError(f"placement fraction must be inside (0,1), got {t}")
    width = _dist(shape.start, shape.end)
    anchor = target.point_at(t)

    def residual(x):
        pa = target.point_at(t - float(x[1]))
        pb = target.point_at(t + float(x[0]))
        r1 = _dist(pb, pa) - width
        r2 = _dist(pb, anchor) - _dist(pa, anchor)
        return np.array([r1, r2])

    def objective(x):
        r = residual(x)
        return float(r @ r)

    bounds = [(0.0, 1.0 - t), (0.0, t)]
    x, _ = _nm_with_grid(objective, bounds, grid_per_axis=5)
    x = _polish(residual, x, bounds)
    val = objective(x)
    if val > EDGE_RESIDUAL_TOL:
        raise SolverError(
            f"shape does not fit edge at t={t:.3g} (objective {val:.3g})",
            residuals={"objective_cm2": val},
        )
    t1, t2 = float(x[0]), float(x[1])
    cut_a = t - t2
    cut_b = t + t1
    pa = target.point_at(cut_a)
    pb = target.point_at(cut_b)
    insert = _aligned_copy(shape, pa, pb)
    if reflect:
        insert = insert.reflected(pa, (pb.x - pa.x, pb.y - pa.y))
    edited = EdgeSequence([*_head(target, cut_a), *insert, *_tail(target, cut_b)])
    if not edited.is_chained():
        raise SolverError("edge splice produced a broken chain")
    return t1, t2, edited


def quad_with_apex(start, end, apex) -> Edge:
    """Quadratic edge whose farthest-from-chord point is exactly ``apex``.

    In the chord frame the perpendicular offset of a quadratic is
    2 t (1-t) v_c, so its peak always sits at t = 0.5 with offset v_c / 2
    and along-chord position 0.25 + 0.5 u_c.  Matching (u_apex, v_apex)
    therefore has the closed-form solution u_c = 2 u_apex - 0.5,
    v_c = 2 v_apex; no search is needed.
    """
    start = _as_xy(start)
    end = _as_xy(end)
    apex = _as_xy(apex)
    rel = _to_rel(start, end, apex)
    if abs(rel.v) < 1e-9:
        raise GeometryError("apex lies on the chord; a quadratic cannot peak there")
    edge = Edge.quad(start, end, RelControl(2.0 * rel.u - 0.5, 2.0 * rel.v))
    if _dist(edge.point_at(0.5), apex) > 1e-4:
        raise SolverError("apex-constrained quadratic missed its target point")
    return edge


@dataclass(frozen=True)
class SleeveCapTask:
    """Inputs for inverting a sleeve-opening curve.

    ``base`` is the cubic to invert (typically the curve cut out of an
    armhole).  ``start_tangent``/``end_tangent`` are the desired unit
    tangents of the finished curve, expressed in the hanging-straight-down
    frame; ``rest_angle_deg`` then rotates the finished curve, so solving at
    two angles gives exactly rotated copies of one another.
    """

    base: Edge
    target_length: float
    start_tangent: tuple[float, float]
    end_tangent: tuple[float, float]
    rest_angle_deg: float = 0.0
    curvature_weight: float = 0.1


# Search box for the sleeve unknowns: both relative controls and the chord
# extension factor.  Wide enough for every garment in the library.
_SLEEVE_BOUNDS = [(-2.0, 3.0), (-3.0, 3.0), (-2.0, 3.0), (-3.0, 3.0), (0.2, 3.0)]


def invert_sleeve_curve(task: SleeveCapTask, trace: list | None = None) -> Edge:
    """Flip a sleeve-opening cubic to the other side of its chord while
    preserving arc length and hitting prescribed end tangents.

    The unknowns are the two relative control points and a scale factor on
    the chord.  Starting point: the base curve with the second control's
    perpendicular component sign-flipped, chord straightened to point down.
    The energy is length error squared, both tangent mismatches squared,
    and ``curvature_weight`` times peak curvature squared; it is minimized
    with bounded Nelder-Mead restarted from a small grid around the start.

    ``trace``, when given, receives the best energy after each accepted
    optimizer step (non-increasing by construction).
    """
    if not isinstance(task.base.shape, CubicShape):
        raise GeometryError("sleeve inversion expects a cubic edge")
    if task.target_length <= 0:
        raise GeometryError("target length must be positive")
    if task.curvature_weight < 0:
        raise GeometryError("curvature weight must be nonnegative")
    chord = task.base.chord_length
    c1 = task.base.shape.control1
    c2 = task.base.shape.control2
    t0 = np.asarray(task.start_tangent, dtype=float)
    t1 = np.asarray(task.end_tangent, dtype=float)
    for name, v in (("start_tangent", t0), ("end_tangent", t1)):
        n = float(np.hypot(v[0], v[1]))
        if abs(n - 1.0) > 1e-6:
            raise GeometryError(f"{name} must be a unit vector (norm {n:.3g})")
    lam = float(task.curvature_weight)
    want = float(task.target_length)

    def candidate(x) -> Edge:
        return Edge.cubic(
            (0.0, 0.0),
            (0.0, -chord * float(x[4])),
            RelControl(float(x[0]), float(x[1])),
            RelControl(float(x[2]), float(x[3])),
        )

    def energy(x) -> float:
        try:
            e = candidate(x)
            dlen = e.length() - want
            d0 = np.asarray(e.tangent_at(0.0)) - t0
            d1 = np.asarray(e.tangent_at(1.0)) - t1
            cmax = e.max_curvature()
        except GeometryError:
            return 1e9
        if not math.isfinite(cmax):
            return 1e9
        return float(dlen * dlen + d0 @ d0 + d1 @ d1 + lam * cmax * cmax)

    seed = np.array([c1.u, c1.v, c2.u, -c2.v, 1.0])
    seed = np.clip(seed, [b[0] for b in _SLEEVE_BOUNDS], [b[1] for b in _SLEEVE_BOUNDS])
    dv1 = max(0.3 * abs(seed[1]), 0.1)
    dv2 = max(0.3 * abs(seed[3]), 0.1)
    seeds = [
        np.array([seed[0], seed[1] + a, seed[2], seed[3] + b, s])
        for a in (-dv1, 0.0, dv1)
        for b in (-dv2, 0.0, dv2)
        for s in (0.8, 1.0, 1.2)
    ]
    ranked = sorted(seeds, key=energy)

    # Trace records the best energy seen so far, so it stays non-increasing
    # even across restarts.
    running_best = [energy(ranked[0])]

    def callback(xk):
        v = energy(xk)
        if v < running_best[0]:
            running_best[0] = v
        if trace is not None:
            trace.append(running_best[0])

    def gates(e: Edge):
        len_err = abs(e.length() - want)
        a0 = math.degrees(math.acos(np.clip(np.asarray(e.tangent_at(0.0)) @ t0, -1.0, 1.0)))
        a1 = math.degrees(math.acos(np.clip(np.asarray(e.tangent_at(1.0)) @ t1, -1.0, 1.0)))
        return len_err, a0, a1

    options = dict(_NM_OPTIONS)
    x, x_val = ranked[0], energy(ranked[0])
    # One local search from the best seed normally suffices; bad local minima
    # get a handful of restarts from the next-ranked seeds before giving up.
    for start in ranked[:5]:
        res = optimize.minimize(
            energy,
            start,
            method="Nelder-Mead",
            bounds=_SLEEVE_BOUNDS,
            options=options,
            callback=callback,
        )
        if res.fun < x_val:
            x, x_val = res.x, float(res.fun)
        len_err, a0, a1 = gates(candidate(x))
        if len_err <= 1e-3 * want and a0 <= 1.0 and a1 <= 1.0:
            break

    solved = candidate(x)
    len_err, a0, a1 = gates(solved)
    if len_err > 1e-3 * want or a0 > 1.0 or a1 > 1.0:
        raise SolverError(
            "sleeve inversion missed its tolerances",
            residuals={
                "length_error_cm": len_err,
                "start_tangent_deg": a0,
                "end_tangent_deg": a1,
                "energy": float(energy(x)),
            },
        )
    return solved.rotated(task.rest_angle_deg, pivot=(0.0, 0.0))
