"""Hierarchical garment structure: panels, composite components, interfaces,
and stitching rules.

World frame convention: x spans the body left-right, y is vertical (up),
z points out the front.  A panel's 2D drafting plane is lifted into 3D by
its placement (rotation, then translation, both in cm).

Component transforms propagate immediately: translating or rotating a
component applies the same rigid motion to every descendant panel's
placement, which preserves all relative placements by construction and
keeps collect_panels a plain traversal.

Panel normals follow the counterclockwise-traversal convention: a loop
traversed CCW in its 2D frame has local normal +z.  orient_normal flips a
loop whose placed normal faces the body instead of away from it; garment
programs normally defer that correction to serialization time.
"""

from __future__ import annotations

import copy
import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from .edges import Edge, Point2
from .edgeseq import EdgeSequence
from .errors import GeometryError, StitchError


class Placement:
    """Rigid 3D placement: p_world = rotation.apply(p_local) + translation."""

    __slots__ = ("rotation", "translation")

    def __init__(self, rotation: Rotation | None = None, translation=(0.0, 0.0, 0.0)):
        self.rotation = Rotation.identity() if rotation is None else rotation
        self.translation = np.array(translation, dtype=float).reshape(3)

    @staticmethod
    def from_euler_degrees(angles, translation=(0.0, 0.0, 0.0)) -> "Placement":
        return Placement(Rotation.from_euler("XYZ", angles, degrees=True), translation)

    @property
    def euler_degrees(self) -> np.ndarray:
        # a +/-90 middle angle makes the decomposition non-unique; scipy's
        # deterministic choice is fine for serialization, silence its warning
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UserWarning)
            return self.rotation.as_euler("XYZ", degrees=True)

    def apply(self, pts):
        return self.rotation.apply(pts) + self.translation

    def lift(self, p) -> np.ndarray:
        """Map a 2D panel-frame point into world coordinates."""
        return self.apply(np.array([float(p[0]), float(p[1]), 0.0]))

    def after(self, motion: "Placement") -> "Placement":
        """Composition motion ∘ self: place locally, then move by ``motion``."""
        return Placement(
            motion.rotation * self.rotation,
            motion.rotation.apply(self.translation) + motion.translation,
        )

    def matrix(self) -> np.ndarray:
        m = np.eye(4)
        m[:3, :3] = self.rotation.as_matrix()
        m[:3, 3] = self.translation
        return m

    def __repr__(self):  # pragma: no cover
        e = np.round(self.euler_degrees, 3)
        t = np.round(self.translation, 3)
        return f"Placement(euler={e.tolist()}, t={t.tolist()})"


@dataclass
class InterfaceEntry:
    """One edge offered for connection.  ``panel`` is None for construction
    geometry (shapes that exist only to drive a solver, not to be sewn).
    ``reverse`` marks that the edge's own direction runs against the
    interface's connection order."""

    panel: "Panel | None"
    edge: Edge
    reverse: bool = False


class Interface:
    """Ordered list of panel edges exposed for stitching.

    Entry order is the connection order: stitching two interfaces pairs
    their entries (and length fractions) first-to-first.
    """

    def __init__(self, entries=(), role: str | None = None):
        self.entries: list[InterfaceEntry] = list(entries)
        self.role = role

    @staticmethod
    def of(panel, *edges: Edge, reverse: bool = False, role: str | None = None) -> "Interface":
        return Interface(
            [InterfaceEntry(panel, e, reverse) for e in edges], role=role
        )

    def __len__(self) -> int:
        return len(self.entries)

    def __add__(self, other: "Interface") -> "Interface":
        return Interface([*self.entries, *other.entries], role=self.role or other.role)

    def reversed(self) -> "Interface":
        """Opposite connection order: entries reversed, directions flipped."""
        return Interface(
            [InterfaceEntry(e.panel, e.edge, not e.reverse) for e in reversed(self.entries)],
            role=self.role,
        )

    def lengths(self) -> list[float]:
        return [e.edge.length() for e in self.entries]

    def length(self) -> float:
        return sum(self.lengths())

    def com(self) -> np.ndarray:
        """Length-weighted mean of placed edge midpoints (3D, cm)."""
        if not self.entries:
            raise GeometryError("empty interface has no center of mass")
        total = 0.0
        acc = np.zeros(3)
        for e in self.entries:
            if e.panel is None:
                raise GeometryError(
                    "construction-geometry interface has no placement; "
                    "cannot compute a center of mass"
                )
            w = e.edge.length()
            acc += w * e.panel.placement.lift(e.edge.point_at(0.5))
            total += w
        return acc / total

    def __repr__(self):  # pragma: no cover
        return f"Interface({len(self.entries)} edges, role={self.role!r})"


@dataclass
class StitchingRule:
    a: Interface
    b: Interface

    def __post_init__(self):
        if not self.a.entries or not self.b.entries:
            raise StitchError("stitching rule requires two non-empty interfaces")


class Panel:
    """A single fabric piece: a closed loop of directed edges plus a 3D
    placement and the interfaces it exposes."""

    def __init__(self, name: str, edges: EdgeSequence | None = None,
                 placement: Placement | None = None):
        self.name = name
        self.edges = edges if edges is not None else EdgeSequence()
        self.placement = placement if placement is not None else Placement()
        self.interfaces: dict[str, Interface] = {}
        self.internal_stitches: list[StitchingRule] = []

    def set_interface(self, name: str, *edges: Edge, reverse: bool = False,
                      role: str | None = None) -> Interface:
        itf = Interface.of(self, *edges, reverse=reverse, role=role)
        self.interfaces[name] = itf
        return itf

    def add_internal_stitch(self, a: Interface, b: Interface):
        self.internal_stitches.append(StitchingRule(a, b))

    def translate_by(self, v):
        self.placement = self.placement.after(Placement(translation=v))

    def rotate_by(self, rotation: Rotation):
        self.placement = self.placement.after(Placement(rotation=rotation))

    def com_3d(self) -> np.ndarray:
        """Length-weighted edge-midpoint center of mass, placed in 3D."""
        total = 0.0
        acc = np.zeros(3)
        for e in self.edges:
            w = e.length()
            acc += w * self.placement.lift(e.point_at(0.5))
            total += w
        if total <= 0:
            raise GeometryError(f"panel {self.name!r} has no edges")
        return acc / total

    def validate(self):
        if not self.edges.is_loop():
            raise GeometryError(f"panel {self.name!r} outline is not a closed loop")
        for itf_name, itf in self.interfaces.items():
            for entry in itf.entries:
                if entry.panel is not self:
                    raise GeometryError(
                        f"panel {self.name!r} interface {itf_name!r} references a foreign panel"
                    )
                if entry.edge not in self.edges:
                    raise GeometryError(
                        f"panel {self.name!r} interface {itf_name!r} references an edge "
                        "outside the panel loop"
                    )
        for rule in self.internal_stitches:
            for side in (rule.a, rule.b):
                for entry in side.entries:
                    if entry.panel is not None and entry.edge not in entry.panel.edges:
                        raise StitchError(
                            f"internal stitch of panel {self.name!r} references a removed edge"
                        )

    def __repr__(self):  # pragma: no cover
        return f"Panel({self.name!r}, {len(self.edges)} edges)"


class Component:
    """A named collection of subcomponents (panels or components), the
    stitches between them, and the interfaces it re-exposes upward."""

    def __init__(self, name: str):
        self.name = name
        self._children: dict[str, "Component | Panel"] = {}
        self.stitches: list[StitchingRule] = []
        self.interfaces: dict[str, Interface] = {}

    # -- structure -------------------------------------------------------

    def add(self, child: "Component | Panel"):
        if child.name in self._children:
            raise GeometryError(
                f"component {self.name!r} already has a child named {child.name!r}"
            )
        self._children[child.name] = child
        return child

    def __getitem__(self, name: str) -> "Component | Panel":
        return self._children[name]

    def __contains__(self, name: str) -> bool:
        return name in self._children

    @property
    def children(self) -> list["Component | Panel"]:
        return list(self._children.values())

    def add_stitch(self, a: Interface, b: Interface) -> StitchingRule:
        rule = StitchingRule(a, b)
        self.stitches.append(rule)
        return rule

    def set_interface(self, name: str, interface: Interface) -> Interface:
        self.interfaces[name] = interface
        return interface

    # -- traversal ---------------------------------------------------------

    def panels(self) -> list[Panel]:
        return [p for _, p in self.collect_panels()]

    def collect_panels(self, prefix: str | None = None) -> list[tuple[str, Panel]]:
        """Depth-first (declaration order) panels with path-qualified names."""
        base = self.name if prefix is None else f"{prefix}.{self.name}"
        out: list[tuple[str, Panel]] = []
        for child in self._children.values():
            if isinstance(child, Panel):
                out.append((f"{base}.{child.name}", child))
            else:
                out.extend(child.collect_panels(base))
        return out

    def walk_components(self) -> list["Component"]:
        out = [self]
        for child in self._children.values():
            if isinstance(child, Component):
                out.extend(child.walk_components())
        return out

    # -- transforms ---------------------------------------------------------

    def translate_by(self, v):
        for p in self.panels():
            p.translate_by(v)
        return self

    def rotate_by(self, rotation: Rotation):
        for p in self.panels():
            p.rotate_by(rotation)
        return self

    def com_3d(self) -> np.ndarray:
        panels = self.panels()
        if not panels:
            raise GeometryError(f"component {self.name!r} has no panels")
        total = 0.0
        acc = np.zeros(3)
        for p in panels:
            for e in p.edges:
                w = e.length()
                acc += w * p.placement.lift(e.point_at(0.5))
                total += w
        if total <= 0:
            raise GeometryError(f"component {self.name!r} has no edges")
        return acc / total

    # -- validation -----------------------------------------------------------

    def validate(self):
        own_panels = {id(p) for p in self.panels()}
        for child in self._children.values():
            child.validate()
        for i, rule in enumerate(self.stitches):
            for side in (rule.a, rule.b):
                if not side.entries:
                    raise StitchError(
                        f"component {self.name!r} stitch #{i} has an empty side"
                    )
                for entry in side.entries:
                    if entry.panel is None:
                        raise StitchError(
                            f"component {self.name!r} stitch #{i} references "
                            "construction geometry, which cannot be sewn"
                        )
                    if id(entry.panel) not in own_panels:
                        raise StitchError(
                            f"component {self.name!r} stitch #{i} references a panel "
                            "outside this component's subtree"
                        )
                    if entry.edge not in entry.panel.edges:
                        raise StitchError(
                            f"component {self.name!r} stitch #{i} references an edge "
                            f"no longer in panel {entry.panel.name!r}"
                        )
        return self

    def __repr__(self):  # pragma: no cover
        return f"Component({self.name!r}, children={list(self._children)})"


# -- interface bookkeeping shared by mirror / orientation / flattening --------


def iter_interfaces(root: "Component | Panel"):
    """Every Interface object reachable from ``root``, each exactly once."""
    seen: set[int] = set()

    def emit(itf: Interface):
        if id(itf) not in seen:
            seen.add(id(itf))
            yield itf

    def walk(node):
        if isinstance(node, Panel):
            for itf in node.interfaces.values():
                yield from emit(itf)
            for rule in node.internal_stitches:
                yield from emit(rule.a)
                yield from emit(rule.b)
            return
        for itf in node.interfaces.values():
            yield from emit(itf)
        for rule in node.stitches:
            yield from emit(rule.a)
            yield from emit(rule.b)
        for child in node.children:
            yield from walk(child)

    yield from walk(root)


def remap_interface_entries(interfaces, mapping: dict[int, tuple[list[Edge], bool]]):
    """Rewrite interface entries whose edge was replaced.

    ``mapping``: id(old edge) → (replacement edges in loop order, direction
    flipped?).  An entry with reverse set receives the replacements in
    reversed order so connection order is preserved.
    """
    for itf in interfaces:
        if not any(id(e.edge) in mapping for e in itf.entries):
            continue
        new_entries: list[InterfaceEntry] = []
        for entry in itf.entries:
            m = mapping.get(id(entry.edge))
            if m is None:
                new_entries.append(entry)
                continue
            pieces, flipped = m
            rev = entry.reverse ^ flipped
            ordered = list(reversed(pieces)) if rev else list(pieces)
            new_entries.extend(InterfaceEntry(entry.panel, pe, rev) for pe in ordered)
        itf.entries = new_entries


# -- mirroring and distribution ------------------------------------------------

_MIRROR_X = np.diag([-1.0, 1.0, 1.0])


def mirror(obj: "Component | Panel", axis_x: float = 0.0) -> "Component | Panel":
    """Deep-copied reflection over the vertical world plane x = axis_x.

    Panel 2D outlines reflect over their local x = 0 line; the placement
    absorbs the axis offset (translation x → 2·axis_x − x, rotation
    conjugated by the reflection), so placed world geometry mirrors exactly.
    Interface names are kept; entries are remapped to the reflected edges.
    """
    clone = copy.deepcopy(obj)
    panels = [clone] if isinstance(clone, Panel) else clone.panels()
    mapping: dict[int, tuple[list[Edge], bool]] = {}
    for panel in panels:
        new_edges = EdgeSequence()
        for e in panel.edges:
            ne = e.reflected((0.0, 0.0), (0.0, 1.0))
            mapping[id(e)] = ([ne], False)
            new_edges.append(ne)
        panel.edges = new_edges
        rot = Rotation.from_matrix(
            _MIRROR_X @ panel.placement.rotation.as_matrix() @ _MIRROR_X
        )
        t = panel.placement.translation.copy()
        t[0] = 2.0 * axis_x - t[0]
        panel.placement = Placement(rot, t)
    remap_interface_entries(iter_interfaces(clone), mapping)
    return clone


def distribute_line(proto: "Component | Panel", n: int, step) -> Component:
    """n deep copies of ``proto`` in a row: copy k shifted by k·step."""
    if n < 1:
        raise GeometryError(f"distribution count must be >= 1, got {n}")
    step = np.asarray(step, dtype=float)
    parent = Component(f"{proto.name}_row")
    for k in range(n):
        c = copy.deepcopy(proto)
        c.name = f"{proto.name}_{k}"
        if k:
            c.translate_by(k * step)
        parent.add(c)
    return parent


def distribute_circle(proto: "Component | Panel", n: int) -> Component:
    """n deep copies of ``proto`` fanned around the vertical (y) axis:
    copy k rotated by k·360°/n."""
    if n < 1:
        raise GeometryError(f"distribution count must be >= 1, got {n}")
    parent = Component(f"{proto.name}_ring")
    for k in range(n):
        c = copy.deepcopy(proto)
        c.name = f"{proto.name}_{k}"
        if k:
            c.rotate_by(Rotation.from_euler("y", k * 360.0 / n, degrees=True))
        parent.add(c)
    return parent


# -- panel normal orientation ----------------------------------------------------


def outline_polyline(edges: EdgeSequence) -> np.ndarray:
    """Loop vertices plus each curved edge's extremal points: the coarse
    polygon used for traversal-direction votes."""
    pts: list[Point2] = []
    for e in edges:
        pts.append(e.start)
        pts.extend(e.extremal_points())
    return np.array(pts, dtype=float)


def _signed_area(poly: np.ndarray) -> float:
    x, y = poly[:, 0], poly[:, 1]
    return 0.5 * float(np.sum(x * np.roll(y, -1) - np.roll(x, -1) * y))


def is_ccw(edges: EdgeSequence) -> bool:
    """Traversal direction vote: per polyline segment, the cross product of
    the end→start vector with the start−COM vector is positive for CCW.
    Ties fall back to the polygon's signed area."""
    poly = outline_polyline(edges)
    com = poly.mean(axis=0)
    pos = neg = 0
    for p, q in zip(poly, np.roll(poly, -1, axis=0)):
        v1 = p - q
        v2 = p - com
        c = v1[0] * v2[1] - v1[1] * v2[0]
        if c > 0:
            pos += 1
        elif c < 0:
            neg += 1
    if pos != neg:
        return pos > neg
    return _signed_area(poly) > 0


def orient_normal(panel: Panel, body_center=(0.0, 0.0, 0.0),
                  extra_interfaces=()) -> bool:
    """Make the placed panel normal face away from the body.

    The local normal is +z when the loop runs CCW.  The outward reference
    is the horizontal direction from the body's vertical axis to the placed
    panel center (vertical component dropped, so waist-height never skews
    the vote); for panels placed directly on the axis the full offset is
    used.  Returns True when the loop was reversed.  Interfaces owned by the
    panel are remapped automatically; pass any component-level interfaces
    referencing this panel via ``extra_interfaces``.
    """
    poly = outline_polyline(panel.edges)
    normal_local = np.array([0.0, 0.0, 1.0 if is_ccw(panel.edges) else -1.0])
    world_normal = panel.placement.rotation.apply(normal_local)
    com_world = panel.placement.apply(
        np.array([poly[:, 0].mean(), poly[:, 1].mean(), 0.0])
    )
    outward = com_world - np.asarray(body_center, dtype=float)
    horizontal = outward.copy()
    horizontal[1] = 0.0
    if np.linalg.norm(horizontal) > 1e-9:
        outward = horizontal
    if np.linalg.norm(outward) <= 1e-9 or float(world_normal @ outward) >= 0.0:
        return False
    reversed_seq = panel.edges.reversed()
    n = len(panel.edges)
    mapping = {
        id(old): ([reversed_seq[n - 1 - i]], True)
        for i, old in enumerate(panel.edges)
    }
    panel.edges = reversed_seq
    interfaces = list(iter_interfaces(panel)) + list(extra_interfaces)
    remap_interface_entries(interfaces, mapping)
    return True


def orient_all_normals(root: "Component | Panel", body_center=(0.0, 0.0, 0.0)):
    """Orient every panel in the tree, remapping all interfaces that
    reference flipped panels."""
    interfaces = list(iter_interfaces(root))
    panels = [root] if isinstance(root, Panel) else root.panels()
    for panel in panels:
        orient_normal(panel, body_center, extra_interfaces=interfaces)
    return root


# -- interface-driven placement -----------------------------------------------------


def place_by_interface(moved: "Component | Panel", moved_if: Interface,
                       target_if: Interface, gap: float = 0.0):
    """Translate ``moved`` so its interface's center of mass lands on the
    target interface's, then back it off by ``gap`` along the direction from
    the moved component's center through its interface center."""
    delta = target_if.com() - moved_if.com()
    moved.translate_by(delta)
    if gap:
        direction = moved_if.com() - moved.com_3d()
        norm = float(np.linalg.norm(direction))
        if norm <= 1e-9:
            raise GeometryError(
                "gap direction undefined: interface center coincides with component center"
            )
        moved.translate_by(direction * (gap / norm))
    return moved
