"""Edges: directed 2D curve segments between two panel vertices.

An edge stores its endpoints plus a shape tag.  Curved shapes keep their
control data *relative to the chord*: a control point is (u, v) where u is
the position along start->end and v the offset along the left-hand normal,
both as fractions of the chord length.  Circular arcs store the signed
sagitta/chord ratio (positive bulges left of the chord).  This makes every
shape invariant under translation/rotation and covariant under uniform
scaling, which is what lets panels move in 3D without touching curve data.

Parameterization convention: Line and Arc evaluate uniformly in arc length;
Bezier shapes evaluate in their native polynomial parameter.  Operations
that need arc-length positions on a Bezier (subdivision at length
fractions) invert the cumulative-length function through the kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from . import kernel
from .errors import GeometryError

# Chords shorter than this (in cm) are degenerate and rejected.
MIN_CHORD = 1e-6

# Quadrature / inversion tolerances, relative.
LENGTH_REL_TOL = 1e-7

_TWO_PI = 2.0 * math.pi


class Point2(NamedTuple):
    x: float
    y: float


class RelControl(NamedTuple):
    """Chord-relative control point: u along the chord, v along its left normal."""

    u: float
    v: float


def _pt(p) -> Point2:
    q = Point2(float(p[0]), float(p[1]))
    if not (math.isfinite(q.x) and math.isfinite(q.y)):
        raise GeometryError(f"non-finite point {p!r}")
    return q


@dataclass(frozen=True)
class LineShape:
    pass


@dataclass(frozen=True)
class ArcShape:
    rel_sagitta: float

    def __post_init__(self):
        if not math.isfinite(self.rel_sagitta) or abs(self.rel_sagitta) < 1e-12:
            raise GeometryError(
                f"arc sagitta must be finite and nonzero, got {self.rel_sagitta!r}"
            )


@dataclass(frozen=True)
class QuadShape:
    control: RelControl


@dataclass(frozen=True)
class CubicShape:
    control1: RelControl
    control2: RelControl


Shape = LineShape | ArcShape | QuadShape | CubicShape

_LINE = LineShape()


@dataclass(frozen=True, eq=False)
class Edge:
    """Directed curve segment.  Identity-compared: panels and interfaces
    reference specific edge objects, and equal geometry may legitimately
    occur twice in one pattern."""

    start: Point2
    end: Point2
    shape: Shape = _LINE

    def __post_init__(self):
        object.__setattr__(self, "start", _pt(self.start))
        object.__setattr__(self, "end", _pt(self.end))
        if self.chord_length < MIN_CHORD:
            raise GeometryError(
                f"edge chord {self.chord_length:.3g} cm is below {MIN_CHORD} cm"
            )

    # -- constructors -------------------------------------------------

    @staticmethod
    def line(start, end) -> "Edge":
        return Edge(_pt(start), _pt(end), _LINE)

    @staticmethod
    def arc(start, end, rel_sagitta: float) -> "Edge":
        return Edge(_pt(start), _pt(end), ArcShape(float(rel_sagitta)))

    @staticmethod
    def quad(start, end, control) -> "Edge":
        return Edge(_pt(start), _pt(end), QuadShape(RelControl(*map(float, control))))

    @staticmethod
    def cubic(start, end, control1, control2) -> "Edge":
        return Edge(
            _pt(start),
            _pt(end),
            CubicShape(
                RelControl(*map(float, control1)), RelControl(*map(float, control2))
            ),
        )

    @staticmethod
    def from_absolute_controls(points: Sequence) -> "Edge":
        """Build from standard absolute coordinates: 2 points give a line,
        3 a quadratic and 4 a cubic Bezier."""
        pts = [_pt(p) for p in points]
        if len(pts) == 2:
            return Edge.line(pts[0], pts[1])
        if len(pts) in (3, 4):
            start, end = pts[0], pts[-1]
            rel = [_to_rel(start, end, c) for c in pts[1:-1]]
            if len(rel) == 1:
                return Edge(start, end, QuadShape(rel[0]))
            return Edge(start, end, CubicShape(rel[0], rel[1]))
        raise GeometryError(f"expected 2-4 control points, got {len(pts)}")

    @staticmethod
    def arc_from_three_points(start, mid, end) -> "Edge":
        """Arc through three points; ``mid`` is any interior point of the arc."""
        p0, pm, p1 = _pt(start), _pt(mid), _pt(end)
        c = _dist(p0, p1)
        if c < MIN_CHORD:
            raise GeometryError("arc endpoints coincide")
        center = _circumcenter(p0, pm, p1)
        r = _dist(p0, center)
        phi0 = math.atan2(p0.y - center.y, p0.x - center.x)
        phim = math.atan2(pm.y - center.y, pm.x - center.x)
        phi1 = math.atan2(p1.y - center.y, p1.x - center.x)
        d1 = (phi1 - phi0) % _TWO_PI
        dm = (phim - phi0) % _TWO_PI
        if d1 < 1e-12:
            raise GeometryError("arc endpoints coincide on the circle")
        sweep = d1 if dm <= d1 else d1 - _TWO_PI
        theta = phi0 + 0.5 * sweep
        apex = Point2(center.x + r * math.cos(theta), center.y + r * math.sin(theta))
        chord_mid = Point2(0.5 * (p0.x + p1.x), 0.5 * (p0.y + p1.y))
        a = _dist(apex, chord_mid)
        side = _cross(
            (p1.x - p0.x, p1.y - p0.y), (apex.x - chord_mid.x, apex.y - chord_mid.y)
        )
        sign = 1.0 if side >= 0.0 else -1.0
        return Edge.arc(p0, p1, sign * a / c)

    @staticmethod
    def arc_from_radius(start, end, radius: float, large: bool = False, left: bool = True) -> "Edge":
        """Arc with the given radius; ``large``/``left`` pick among the four
        candidate arcs (major vs minor, bulge side)."""
        p0, p1 = _pt(start), _pt(end)
        c = _dist(p0, p1)
        h = 0.5 * c
        if radius < h - 1e-9:
            raise GeometryError(
                f"radius {radius} is smaller than half the chord ({h:.6g})"
            )
        d = math.sqrt(max(radius * radius - h * h, 0.0))
        a = radius + d if large else radius - d
        if a < 1e-12:
            raise GeometryError("degenerate arc: zero sagitta")
        return Edge.arc(p0, p1, (a if left else -a) / c)

    # -- chord helpers -------------------------------------------------

    @property
    def chord_vec(self) -> Point2:
        return Point2(self.end.x - self.start.x, self.end.y - self.start.y)

    @cached_property
    def chord_length(self) -> float:
        return math.hypot(self.end.x - self.start.x, self.end.y - self.start.y)

    @property
    def midpoint(self) -> Point2:
        return Point2(0.5 * (self.start.x + self.end.x), 0.5 * (self.start.y + self.end.y))

    def _chord_frame(self) -> tuple[Point2, Point2]:
        """Unit chord direction and left normal."""
        c = self.chord_length
        d = self.chord_vec
        u = Point2(d.x / c, d.y / c)
        return u, Point2(-u.y, u.x)

    # -- representation conversions ------------------------------------

    def absolute_controls(self) -> list[Point2]:
        """Full control polygon in absolute coordinates (endpoints included).
        Lines and arcs return just their endpoints."""
        if isinstance(self.shape, QuadShape):
            return [self.start, self._abs(self.shape.control), self.end]
        if isinstance(self.shape, CubicShape):
            return [
                self.start,
                self._abs(self.shape.control1),
                self._abs(self.shape.control2),
                self.end,
            ]
        return [self.start, self.end]

    def as_three_points(self) -> tuple[Point2, Point2, Point2]:
        if not isinstance(self.shape, ArcShape):
            raise GeometryError("three-point form is defined for arcs only")
        return self.start, self.point_at(0.5), self.end

    def _abs(self, rc: RelControl) -> Point2:
        u, n = self._chord_frame()
        c = self.chord_length
        return Point2(
            self.start.x + rc.u * c * u.x + rc.v * c * n.x,
            self.start.y + rc.u * c * u.y + rc.v * c * n.y,
        )

    @cached_property
    def _ctrl(self) -> np.ndarray:
        return np.array(self.absolute_controls(), dtype=float)

    @cached_property
    def _arc(self) -> "_ArcGeom":
        assert isinstance(self.shape, ArcShape)
        return _arc_geometry(self.start, self.end, self.shape.rel_sagitta)

    # -- evaluation -----------------------------------------------------

    def point_at(self, t: float) -> Point2:
        _check_t(t)
        if isinstance(self.shape, LineShape):
            return Point2(
                self.start.x + t * (self.end.x - self.start.x),
                self.start.y + t * (self.end.y - self.start.y),
            )
        if isinstance(self.shape, ArcShape):
            g = self._arc
            theta = g.phi0 + g.sweep * t
            return Point2(
                g.center.x + g.radius * math.cos(theta),
                g.center.y + g.radius * math.sin(theta),
            )
        p = kernel.bezier_points(self._ctrl, np.array([t]))[0]
        return Point2(float(p[0]), float(p[1]))

    def tangent_at(self, t: float) -> Point2:
        """Unit tangent.  Raises on a vanishing derivative rather than
        normalizing noise."""
        _check_t(t)
        if isinstance(self.shape, LineShape):
            u, _ = self._chord_frame()
            return u
        if isinstance(self.shape, ArcShape):
            g = self._arc
            theta = g.phi0 + g.sweep * t
            s = 1.0 if g.sweep > 0 else -1.0
            return Point2(-s * math.sin(theta), s * math.cos(theta))
        d = kernel.bezier_derivatives(self._ctrl, np.array([t]))[0]
        speed = math.hypot(float(d[0]), float(d[1]))
        if speed < 1e-9:
            raise GeometryError(f"vanishing tangent at t={t} (cusp)")
        return Point2(float(d[0]) / speed, float(d[1]) / speed)

    def length(self) -> float:
        return self._length

    @cached_property
    def _length(self) -> float:
        if isinstance(self.shape, LineShape):
            return self.chord_length
        if isinstance(self.shape, ArcShape):
            g = self._arc
            return g.radius * abs(g.sweep)
        return float(kernel.bezier_length(self._ctrl, LENGTH_REL_TOL))

    def max_curvature(self) -> float:
        if isinstance(self.shape, LineShape):
            return 0.0
        if isinstance(self.shape, ArcShape):
            return 1.0 / self._arc.radius
        return float(kernel.bezier_max_curvature(self._ctrl))

    def param_at_length_fraction(self, f: float) -> float:
        """Curve parameter of the point at arc-length fraction ``f``."""
        _check_t(f)
        if isinstance(self.shape, (LineShape, ArcShape)):
            return f
        return float(
            kernel.bezier_param_at_length(self._ctrl, f * self._length, LENGTH_REL_TOL)
        )

    # -- subdivision -----------------------------------------------------

    def subdivide(self, fractions: Iterable[float]) -> list["Edge"]:
        """Split at cumulative arc-length fractions (strictly increasing,
        inside (0, 1)).  Children chain exactly and preserve the shape kind."""
        fracs = [float(f) for f in fractions]
        if not fracs:
            return [self]
        if any(not 0.0 < f < 1.0 for f in fracs) or any(
            b <= a for a, b in zip(fracs, fracs[1:])
        ):
            raise GeometryError(f"fractions must be strictly increasing in (0,1): {fracs}")
        params = [self.param_at_length_fraction(f) for f in fracs]
        return self.split_at_params(params)

    def split_at_params(self, params: Sequence[float]) -> list["Edge"]:
        """Split at native curve parameters (see module docstring for the
        parameterization convention)."""
        ts = [float(t) for t in params]
        if any(not 0.0 < t < 1.0 for t in ts) or any(
            b <= a for a, b in zip(ts, ts[1:])
        ):
            raise GeometryError(f"split parameters must be strictly increasing in (0,1): {ts}")
        if isinstance(self.shape, LineShape):
            pts = [self.start] + [self.point_at(t) for t in ts] + [self.end]
            return [Edge.line(a, b) for a, b in zip(pts, pts[1:])]
        if isinstance(self.shape, ArcShape):
            return self._split_arc(ts)
        return self._split_bezier(ts)

    def _split_arc(self, ts: Sequence[float]) -> list["Edge"]:
        g = self._arc
        bounds = [0.0] + list(ts) + [1.0]
        pts = [self.start] + [self.point_at(t) for t in ts] + [self.end]
        out = []
        sign = 1.0 if self.shape.rel_sagitta > 0 else -1.0
        for (t0, t1), (p0, p1) in zip(zip(bounds, bounds[1:]), zip(pts, pts[1:])):
            omega = abs(g.sweep) * (t1 - t0)
            chord = _dist(p0, p1)
            sag = g.radius * (1.0 - math.cos(0.5 * omega))
            out.append(Edge.arc(p0, p1, sign * sag / chord))
        return out

    def _split_bezier(self, ts: Sequence[float]) -> list["Edge"]:
        out = []
        ctrl = [np.asarray(p, dtype=float) for p in self.absolute_controls()]
        prev = 0.0
        for t in ts:
            local = (t - prev) / (1.0 - prev)
            left, ctrl = _de_casteljau_split(ctrl, local)
            out.append(Edge.from_absolute_controls(left))
            prev = t
        out.append(Edge.from_absolute_controls(ctrl))
        return out

    # -- shape analysis ---------------------------------------------------

    def extremal_points(self) -> list[Point2]:
        """Interior points where the distance to the chord is locally
        maximal (an arc's apex, a Bezier's bulge peaks).  Used when a curved
        loop is approximated by a polyline."""
        if isinstance(self.shape, LineShape):
            return []
        if isinstance(self.shape, ArcShape):
            return [self.point_at(0.5)]
        if isinstance(self.shape, QuadShape):
            # Perpendicular offset of a quadratic is symmetric: peak at t=1/2.
            if abs(self.shape.control.v) < 1e-9:
                return []
            return [self.point_at(0.5)]
        v1 = self.shape.control1.v
        v2 = self.shape.control2.v
        # Offset profile v(t) = 3t(1-t)^2 v1 + 3t^2(1-t) v2; stationary points
        # solve the quadratic below.
        a = 3.0 * (v1 - v2)
        b = 2.0 * v2 - 4.0 * v1
        c = v1
        roots: list[float] = []
        if abs(a) < 1e-12:
            if abs(b) > 1e-12:
                roots = [-c / b]
        else:
            disc = b * b - 4.0 * a * c
            if disc >= 0.0:
                sq = math.sqrt(disc)
                roots = [(-b - sq) / (2.0 * a), (-b + sq) / (2.0 * a)]
        pts = []
        for t in sorted(roots):
            if not 1e-9 < t < 1.0 - 1e-9:
                continue
            val = 3.0 * t * (1.0 - t) ** 2 * v1 + 3.0 * t * t * (1.0 - t) * v2
            curv = 2.0 * a * t + b
            if abs(val) > 1e-9 and val * curv < 0.0:
                pts.append(self.point_at(t))
        return pts

    def as_polyline(self, n: int = 32) -> list[Point2]:
        """n+1 points from start to end (native parameter spacing)."""
        if isinstance(self.shape, LineShape):
            return [self.start, self.end]
        if isinstance(self.shape, ArcShape):
            return [self.point_at(i / n) for i in range(n + 1)]
        pts = kernel.bezier_points(self._ctrl, np.linspace(0.0, 1.0, n + 1))
        return [Point2(float(p[0]), float(p[1])) for p in pts]

    # -- rigid motions and reversal ----------------------------------------

    def reversed(self) -> "Edge":
        """Same point set, opposite direction.  Relative data flips so that
        reversed(e).point_at(t) == e.point_at(1-t)."""
        if isinstance(self.shape, ArcShape):
            shape: Shape = ArcShape(-self.shape.rel_sagitta)
        elif isinstance(self.shape, QuadShape):
            rc = self.shape.control
            shape = QuadShape(RelControl(1.0 - rc.u, -rc.v))
        elif isinstance(self.shape, CubicShape):
            c1, c2 = self.shape.control1, self.shape.control2
            shape = CubicShape(
                RelControl(1.0 - c2.u, -c2.v), RelControl(1.0 - c1.u, -c1.v)
            )
        else:
            shape = self.shape
        return Edge(self.end, self.start, shape)

    def translated(self, offset) -> "Edge":
        o = _pt(offset)
        return Edge(
            Point2(self.start.x + o.x, self.start.y + o.y),
            Point2(self.end.x + o.x, self.end.y + o.y),
            self.shape,
        )

    def rotated(self, angle_deg: float, pivot=(0.0, 0.0)) -> "Edge":
        rot = _rotator(angle_deg, pivot)
        return Edge(rot(self.start), rot(self.end), self.shape)

    def scaled(self, factor: float, pivot=(0.0, 0.0)) -> "Edge":
        if factor <= 0.0:
            raise GeometryError("scale factor must be positive; use reflected() to mirror")
        p = _pt(pivot)
        f = float(factor)

        def sc(q: Point2) -> Point2:
            return Point2(p.x + f * (q.x - p.x), p.y + f * (q.y - p.y))

        return Edge(sc(self.start), sc(self.end), self.shape)

    def reflected(self, point, direction) -> "Edge":
        """Mirror across the line through ``point`` along ``direction``.
        Orientation flips, so signed shape data negates."""
        refl = _reflector(point, direction)
        if isinstance(self.shape, ArcShape):
            shape: Shape = ArcShape(-self.shape.rel_sagitta)
        elif isinstance(self.shape, QuadShape):
            rc = self.shape.control
            shape = QuadShape(RelControl(rc.u, -rc.v))
        elif isinstance(self.shape, CubicShape):
            c1, c2 = self.shape.control1, self.shape.control2
            shape = CubicShape(RelControl(c1.u, -c1.v), RelControl(c2.u, -c2.v))
        else:
            shape = self.shape
        return Edge(refl(self.start), refl(self.end), shape)

    def with_endpoints(self, start, end) -> "Edge":
        """Same shape data, new endpoints."""
        return Edge(_pt(start), _pt(end), self.shape)

    def approx_equal(self, other: "Edge", tol: float = 1e-9) -> bool:
        if type(self.shape) is not type(other.shape):
            return False
        if _dist(self.start, other.start) > tol or _dist(self.end, other.end) > tol:
            return False
        a = np.array(self.absolute_controls())
        b = np.array(other.absolute_controls())
        return bool(np.all(np.abs(a - b) <= tol))

    def __repr__(self):  # pragma: no cover - debugging aid
        kind = type(self.shape).__name__.replace("Shape", "")
        return (
            f"Edge[{kind}] ({self.start.x:.3g}, {self.start.y:.3g}) -> "
            f"({self.end.x:.3g}, {self.end.y:.3g})"
        )


@dataclass(frozen=True)
class _ArcGeom:
    center: Point2
    radius: float
    phi0: float
    sweep: float


def _arc_geometry(start: Point2, end: Point2, rel_sagitta: float) -> _ArcGeom:
    c = math.hypot(end.x - start.x, end.y - start.y)
    a = abs(rel_sagitta) * c
    sign = 1.0 if rel_sagitta > 0 else -1.0
    nx = -(end.y - start.y) / c
    ny = (end.x - start.x) / c
    mid = Point2(0.5 * (start.x + end.x), 0.5 * (start.y + end.y))
    apex = Point2(mid.x + sign * a * nx, mid.y + sign * a * ny)
    radius = (0.25 * c * c + a * a) / (2.0 * a)
    center = Point2(apex.x - radius * sign * nx, apex.y - radius * sign * ny)
    phi0 = math.atan2(start.y - center.y, start.x - center.x)
    cosv = max(-1.0, min(1.0, (radius - a) / radius))
    sweep = -sign * 2.0 * math.acos(cosv)
    return _ArcGeom(center, radius, phi0, sweep)


def _circumcenter(p0: Point2, p1: Point2, p2: Point2) -> Point2:
    ax, ay = p1.x - p0.x, p1.y - p0.y
    bx, by = p2.x - p0.x, p2.y - p0.y
    det = 2.0 * (ax * by - ay * bx)
    if abs(det) < 1e-12:
        raise GeometryError("three points are collinear; no circle through them")
    a2 = ax * ax + ay * ay
    b2 = bx * bx + by * by
    ux = (by * a2 - ay * b2) / det
    uy = (ax * b2 - bx * a2) / det
    return Point2(p0.x + ux, p0.y + uy)


def _to_rel(start: Point2, end: Point2, control: Point2) -> RelControl:
    dx, dy = end.x - start.x, end.y - start.y
    c2 = dx * dx + dy * dy
    if c2 < MIN_CHORD * MIN_CHORD:
        raise GeometryError("zero-length chord")
    qx, qy = control.x - start.x, control.y - start.y
    return RelControl((qx * dx + qy * dy) / c2, (dx * qy - dy * qx) / c2)


def _de_casteljau_split(ctrl: list[np.ndarray], t: float):
    left = [ctrl[0]]
    right = [ctrl[-1]]
    level = list(ctrl)
    while len(level) > 1:
        level = [(1.0 - t) * a + t * b for a, b in zip(level, level[1:])]
        left.append(level[0])
        right.append(level[-1])
    return left, list(reversed(right))


def _check_t(t: float):
    if not 0.0 <= t <= 1.0:
        raise GeometryError(f"parameter {t!r} outside [0, 1]")


def _dist(a, b) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def _cross(a, b) -> float:
    return a[0] * b[1] - a[1] * b[0]


def _rotator(angle_deg: float, pivot):
    p = _pt(pivot)
    rad = math.radians(angle_deg)
    cs, sn = math.cos(rad), math.sin(rad)

    def rot(q: Point2) -> Point2:
        x, y = q.x - p.x, q.y - p.y
        return Point2(p.x + cs * x - sn * y, p.y + sn * x + cs * y)

    return rot


def _reflector(point, direction):
    p = _pt(point)
    d = _pt(direction)
    n = math.hypot(d.x, d.y)
    if n < 1e-12:
        raise GeometryError("reflection axis direction is zero")
    ux, uy = d.x / n, d.y / n

    def refl(q: Point2) -> Point2:
        x, y = q.x - p.x, q.y - p.y
        dot = x * ux + y * uy
        rx, ry = 2.0 * dot * ux - x, 2.0 * dot * uy - y
        return Point2(p.x + rx, p.y + ry)

    return refl
