"""Interface-level stitches → edge-to-edge stitches, plus pattern file I/O.

Flattening pairs two interfaces edge-by-edge.  Edge positions along an
interface are expressed as fractions of its total length, so sides of
unequal length still pair up (that mismatch is exactly what a gather is).
Where one side has an internal vertex and the other has none within
tolerance, the other side's edge is subdivided to create one.  Fractions
are matched by a monotone two-pointer sweep: fractions within FRACTION_TOL
of each other pair up, anything unmatched is copied to the opposite side.
The sweep guarantees both sides end with equal edge counts, which the
two-pass projection described informally ("project A onto B, then B onto
A") does not in near-tolerance cases.

Serialization walks the hierarchy depth-first, orients panel normals,
flattens every stitching rule against a private deep copy, and emits a
byte-stable JSON document.  All floats are quantized to 6 decimals at
construction time, so writing, reading, and re-writing a pattern is an
exact identity.
"""

from __future__ import annotations

import copy
import json
import math
from dataclasses import dataclass, field

from .components import (
    Component,
    Interface,
    InterfaceEntry,
    Panel,
    StitchingRule,
    iter_interfaces,
    orient_all_normals,
    remap_interface_entries,
)
from .edges import ArcShape, CubicShape, Edge, LineShape, QuadShape
from .edgeseq import EdgeSequence
from .errors import PatternFormatError, StitchError

# Two interface-length fractions closer than this count as the same vertex.
FRACTION_TOL = 0.01

PATTERN_PROPERTIES = {"units_in_meter": 100, "curvature_coords": "relative"}


# ---------------------------------------------------------------------------
# flat data model (quantized on construction)
# ---------------------------------------------------------------------------


def _q(x: float) -> float:
    """6-decimal quantization; +0.0 so -0.0 never leaks into files."""
    return round(float(x), 6) + 0.0


def _q_pair(p) -> list[float]:
    return [_q(p[0]), _q(p[1])]


@dataclass
class FlatEdge:
    endpoints: list[int]
    kind: str = "line"  # line | circle | quadratic | cubic
    params: list = field(default_factory=list)

    def __post_init__(self):
        self.endpoints = [int(i) for i in self.endpoints]
        if self.kind == "circle":
            self.params = [_q(self.params[0])]
        elif self.kind in ("quadratic", "cubic"):
            self.params = [_q_pair(p) for p in self.params]
        elif self.kind != "line":
            raise PatternFormatError(f"unknown edge kind {self.kind!r}")

    def to_doc(self) -> dict:
        doc = {"endpoints": list(self.endpoints)}
        if self.kind != "line":
            doc["curvature"] = {"type": self.kind, "params": [p for p in self.params]}
        return doc


@dataclass
class FlatPanel:
    vertices: list
    edges: list[FlatEdge]
    translation: list[float] = field(default_factory=lambda: [0.0, 0.0, 0.0])
    rotation: list[float] = field(default_factory=lambda: [0.0, 0.0, 0.0])

    def __post_init__(self):
        self.vertices = [_q_pair(v) for v in self.vertices]
        self.translation = [_q(v) for v in self.translation]
        self.rotation = [_q(v) for v in self.rotation]

    def to_doc(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "edges": [e.to_doc() for e in self.edges],
            "translation": list(self.translation),
            "rotation": list(self.rotation),
        }


@dataclass(frozen=True)
class StitchSide:
    panel: str
    edge: int
    reverse: bool = False

    def to_doc(self) -> dict:
        return {"panel": self.panel, "edge": int(self.edge), "reverse": bool(self.reverse)}


@dataclass(frozen=True)
class FlatStitch:
    side_a: StitchSide
    side_b: StitchSide

    def to_doc(self) -> list:
        return [[self.side_a.to_doc()], [self.side_b.to_doc()]]


@dataclass
class FlatPattern:
    panels: dict[str, FlatPanel]
    stitches: list[FlatStitch]
    properties: dict = field(default_factory=lambda: dict(PATTERN_PROPERTIES))

    def to_doc(self) -> dict:
        return {
            "pattern": {
                "panels": {name: p.to_doc() for name, p in self.panels.items()},
                "stitches": [s.to_doc() for s in self.stitches],
            },
            "properties": dict(self.properties),
        }


# ---------------------------------------------------------------------------
# fraction matching
# ---------------------------------------------------------------------------


def _internal_fractions(entries: list[InterfaceEntry]) -> list[float]:
    """Cumulative length fractions of the vertices between entries
    (connection order), endpoints excluded."""
    lengths = [e.edge.length() for e in entries]
    total = sum(lengths)
    if total <= 0:
        raise StitchError("interface has zero total length")
    out = []
    acc = 0.0
    for L in lengths[:-1]:
        acc += L
        out.append(acc / total)
    return out


def match_fractions(a: list[float], b: list[float], tol: float = FRACTION_TOL):
    """Monotone pairing of two sorted fraction lists.

    Returns (inserts_into_a, inserts_into_b): the fractions each side is
    missing.  Fractions within ``tol`` pair up and need no insertion.
    """
    ins_a: list[float] = []
    ins_b: list[float] = []
    i = j = 0
    while i < len(a) and j < len(b):
        if abs(a[i] - b[j]) <= tol:
            i += 1
            j += 1
        elif a[i] < b[j]:
            ins_b.append(a[i])
            i += 1
        else:
            ins_a.append(b[j])
            j += 1
    ins_b.extend(a[i:])
    ins_a.extend(b[j:])
    return ins_a, ins_b


class _Flattener:
    """Carries the cross-rule state of one serialization pass: every
    interface that may need remapping and the set of already-claimed edges."""

    def __init__(self, interfaces):
        self.interfaces = list(interfaces)
        self.claimed: dict[int, str] = {}  # id(edge) -> description

    def _subdivide(self, entry: InterfaceEntry, local_fracs: list[float]):
        edge = entry.edge
        if id(edge) in self.claimed:
            raise StitchError(
                f"edge already claimed by stitch {self.claimed[id(edge)]} "
                "but a later rule needs to subdivide it"
            )
        pieces = edge.subdivide(local_fracs)
        if entry.panel is not None:
            entry.panel.edges.substitute(edge, pieces)
        remap_interface_entries(self.interfaces, {id(edge): (pieces, False)})

    def _realize(self, side: Interface, fracs: list[float]):
        """Insert vertices at the given interface-length fractions."""
        if not fracs:
            return
        entries = list(side.entries)
        lengths = [e.edge.length() for e in entries]
        total = sum(lengths)
        bounds = [0.0]
        for L in lengths:
            bounds.append(bounds[-1] + L / total)
        bounds[-1] = 1.0
        per_entry: dict[int, list[float]] = {}
        for f in fracs:
            k = max(
                idx
                for idx in range(len(entries))
                if bounds[idx] < f or idx == 0
            )
            # clamp strictly inside the span: 1e-4 of an edge keeps slivers
            # above the minimum chord while staying far below FRACTION_TOL
            span = bounds[k + 1] - bounds[k]
            u = (f - bounds[k]) / span
            u = min(max(u, 1e-4), 1.0 - 1e-4)
            per_entry.setdefault(k, []).append(u)
        for k, us in per_entry.items():
            entry = entries[k]
            if entry.reverse:
                us = [1.0 - u for u in us]
            self._subdivide(entry, sorted(set(us)))

    def flatten_rule(self, rule: StitchingRule, origin: str) -> list[tuple[InterfaceEntry, InterfaceEntry]]:
        for side in (rule.a, rule.b):
            if not side.entries:
                raise StitchError(f"stitch {origin} has an empty interface")
        ins_a, ins_b = match_fractions(
            _internal_fractions(rule.a.entries), _internal_fractions(rule.b.entries)
        )
        self._realize(rule.a, ins_a)
        self._realize(rule.b, ins_b)
        if len(rule.a.entries) != len(rule.b.entries):
            raise StitchError(
                f"stitch {origin}: sides have {len(rule.a.entries)} and "
                f"{len(rule.b.entries)} edges after vertex insertion"
            )
        pairs = list(zip(rule.a.entries, rule.b.entries))
        for ea, eb in pairs:
            for e in (ea, eb):
                if id(e.edge) in self.claimed:
                    raise StitchError(
                        f"edge claimed twice: stitch {origin} and {self.claimed[id(e.edge)]}"
                    )
                self.claimed[id(e.edge)] = origin
        return pairs


def flatten_stitch(rule: StitchingRule, all_interfaces=None):
    """Flatten one rule in isolation (panel edits applied in place).

    Returns the list of matched (entry_a, entry_b) pairs.  ``all_interfaces``
    may list additional interfaces to remap when edges are subdivided;
    the rule's own sides and the touched panels' interfaces are always
    included.
    """
    candidates = [rule.a, rule.b]
    for side in (rule.a, rule.b):
        for entry in side.entries:
            if entry.panel is not None:
                candidates.extend(iter_interfaces(entry.panel))
    if all_interfaces:
        candidates.extend(all_interfaces)
    interfaces = []
    seen = set()
    for itf in candidates:
        if id(itf) not in seen:
            seen.add(id(itf))
            interfaces.append(itf)
    return _Flattener(interfaces).flatten_rule(rule, origin="<adhoc>")


# ---------------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------------


def _collect_rules(node, path: str) -> list[tuple[str, StitchingRule]]:
    out: list[tuple[str, StitchingRule]] = []
    if isinstance(node, Panel):
        for i, rule in enumerate(node.internal_stitches):
            out.append((f"{path}#internal{i}", rule))
        return out
    for i, rule in enumerate(node.stitches):
        out.append((f"{path}#{i}", rule))
    for child in node.children:
        out.extend(_collect_rules(child, f"{path}.{child.name}"))
    return out


def _edge_curvature(edge: Edge) -> tuple[str, list]:
    shape = edge.shape
    if isinstance(shape, LineShape):
        return "line", []
    if isinstance(shape, ArcShape):
        return "circle", [shape.rel_sagitta]
    if isinstance(shape, QuadShape):
        return "quadratic", [[shape.control.u, shape.control.v]]
    if isinstance(shape, CubicShape):
        return "cubic", [
            [shape.control1.u, shape.control1.v],
            [shape.control2.u, shape.control2.v],
        ]
    raise PatternFormatError(f"unserializable edge shape {type(shape).__name__}")


def _panel_doc(panel: Panel) -> FlatPanel:
    n = len(panel.edges)
    vertices = [panel.edges[k].start for k in range(n)]
    edges = []
    for k, e in enumerate(panel.edges):
        kind, params = _edge_curvature(e)
        edges.append(FlatEdge([k, (k + 1) % n], kind, params))
    return FlatPanel(
        vertices=vertices,
        edges=edges,
        translation=list(panel.placement.translation),
        rotation=list(panel.placement.euler_degrees),
    )


def serialize(root: Component | Panel, body_center=(0.0, 0.0, 0.0)) -> FlatPattern:
    """Flatten a component hierarchy into the exchange-format pattern.

    Operates on a deep copy: flattening subdivides edges, and the caller's
    hierarchy must stay untouched.  Panel normals are oriented first, rules
    are flattened in depth-first declaration order, and edge indices are
    resolved only after all subdivision is done.
    """
    working = copy.deepcopy(root)
    working.validate()
    orient_all_normals(working, body_center)

    if isinstance(working, Panel):
        named_panels = [(working.name, working)]
        rules = _collect_rules(working, working.name)
    else:
        named_panels = working.collect_panels()
        rules = _collect_rules(working, working.name)

    flattener = _Flattener(iter_interfaces(working))
    flat_pairs: list[tuple[str, InterfaceEntry, InterfaceEntry]] = []
    for origin, rule in rules:
        try:
            for ea, eb in flattener.flatten_rule(rule, origin):
                flat_pairs.append((origin, ea, eb))
        except StitchError:
            raise
        except Exception as exc:  # surface the offending rule's path
            raise StitchError(f"stitch {origin} failed to flatten: {exc}") from exc

    panel_names = {id(p): name for name, p in named_panels}
    panels = {name: _panel_doc(p) for name, p in named_panels}

    stitches = []
    for origin, ea, eb in flat_pairs:
        sides = []
        for entry in (ea, eb):
            pid = id(entry.panel)
            if entry.panel is None or pid not in panel_names:
                raise StitchError(f"stitch {origin} references a panel outside the tree")
            sides.append(
                StitchSide(
                    panel=panel_names[pid],
                    edge=entry.panel.edges.index(entry.edge),
                    reverse=entry.reverse,
                )
            )
        stitches.append(FlatStitch(sides[0], sides[1]))

    return FlatPattern(panels=panels, stitches=stitches)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------


def pattern_to_json(p: FlatPattern) -> str:
    return json.dumps(p.to_doc(), sort_keys=True, indent=2) + "\n"


def write_pattern(p: FlatPattern, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(pattern_to_json(p))


def _expect(doc: dict, key: str, kind, where: str):
    if key not in doc:
        raise PatternFormatError(f"missing field {key!r}", path=where)
    val = doc[key]
    if kind is not None and not isinstance(val, kind):
        raise PatternFormatError(
            f"field {key!r} has type {type(val).__name__}", path=where
        )
    return val


def _parse_edge(doc: dict, n_verts: int, where: str) -> FlatEdge:
    endpoints = _expect(doc, "endpoints", list, where)
    if len(endpoints) != 2 or not all(
        isinstance(i, int) and 0 <= i < n_verts for i in endpoints
    ):
        raise PatternFormatError(f"bad endpoint indices {endpoints!r}", path=where)
    if "curvature" not in doc:
        return FlatEdge(endpoints)
    curv = _expect(doc, "curvature", dict, where)
    kind = _expect(curv, "type", str, f"{where}.curvature")
    params = _expect(curv, "params", list, f"{where}.curvature")
    if kind == "circle":
        if len(params) != 1 or not isinstance(params[0], (int, float)):
            raise PatternFormatError("circle needs one scalar param", path=where)
        return FlatEdge(endpoints, "circle", params)
    if kind in ("quadratic", "cubic"):
        want = 1 if kind == "quadratic" else 2
        ok = len(params) == want and all(
            isinstance(p, list) and len(p) == 2 for p in params
        )
        if not ok:
            raise PatternFormatError(
                f"{kind} needs {want} control pair(s)", path=where
            )
        return FlatEdge(endpoints, kind, params)
    raise PatternFormatError(f"unknown curvature type {kind!r}", path=where)


def _parse_panel(name: str, doc: dict) -> FlatPanel:
    where = f"pattern.panels.{name}"
    vertices = _expect(doc, "vertices", list, where)
    if not vertices or not all(isinstance(v, list) and len(v) == 2 for v in vertices):
        raise PatternFormatError("vertices must be [x,y] pairs", path=where)
    edges_doc = _expect(doc, "edges", list, where)
    edges = [
        _parse_edge(e, len(vertices), f"{where}.edges[{k}]")
        for k, e in enumerate(edges_doc)
    ]
    if len(edges) != len(vertices):
        raise PatternFormatError(
            f"{len(vertices)} vertices but {len(edges)} edges (loop must close)",
            path=where,
        )
    for k, e in enumerate(edges):
        nxt = edges[(k + 1) % len(edges)]
        if e.endpoints[1] != nxt.endpoints[0]:
            raise PatternFormatError(
                f"edges {k} and {(k + 1) % len(edges)} do not chain", path=where
            )
    translation = _expect(doc, "translation", list, where)
    rotation = _expect(doc, "rotation", list, where)
    if len(translation) != 3 or len(rotation) != 3:
        raise PatternFormatError("translation/rotation must have 3 entries", path=where)
    return FlatPanel(vertices, edges, translation, rotation)


def _parse_side(doc, panels: dict[str, FlatPanel], where: str) -> StitchSide:
    if not isinstance(doc, list) or len(doc) != 1 or not isinstance(doc[0], dict):
        raise PatternFormatError("stitch side must be a one-entry list", path=where)
    entry = doc[0]
    pname = _expect(entry, "panel", str, where)
    eidx = _expect(entry, "edge", int, where)
    reverse = entry.get("reverse", False)
    if not isinstance(reverse, bool):
        raise PatternFormatError("reverse flag must be boolean", path=where)
    if pname not in panels:
        raise PatternFormatError(f"stitch references unknown panel {pname!r}", path=where)
    if not 0 <= eidx < len(panels[pname].edges):
        raise PatternFormatError(
            f"stitch references edge {eidx} of panel {pname!r} "
            f"which has {len(panels[pname].edges)} edges",
            path=where,
        )
    return StitchSide(pname, eidx, reverse)


def pattern_from_json(text: str) -> FlatPattern:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise PatternFormatError(f"not valid JSON: {exc}", path="<document>") from exc
    if not isinstance(doc, dict):
        raise PatternFormatError("document root must be an object", path="<document>")
    for key in doc:
        if key not in ("pattern", "properties"):
            raise PatternFormatError(f"unknown top-level field {key!r}", path=key)
    pattern = _expect(doc, "pattern", dict, "<document>")
    properties = _expect(doc, "properties", dict, "<document>")
    panels_doc = _expect(pattern, "panels", dict, "pattern")
    stitches_doc = _expect(pattern, "stitches", list, "pattern")
    panels = {name: _parse_panel(name, p) for name, p in panels_doc.items()}
    stitches = []
    for k, s in enumerate(stitches_doc):
        where = f"pattern.stitches[{k}]"
        if not isinstance(s, list) or len(s) != 2:
            raise PatternFormatError("stitch must pair two sides", path=where)
        side_a = _parse_side(s[0], panels, where)
        side_b = _parse_side(s[1], panels, where)
        stitches.append(FlatStitch(side_a, side_b))
    claims = set()
    for s in stitches:
        for side in (s.side_a, s.side_b):
            key = (side.panel, side.edge)
            if key in claims:
                raise PatternFormatError(
                    f"edge {side.edge} of panel {side.panel!r} stitched twice",
                    path="pattern.stitches",
                )
            claims.add(key)
    return FlatPattern(panels=panels, stitches=stitches, properties=properties)


def read_pattern(path) -> FlatPattern:
    with open(path, "r", encoding="utf-8") as fh:
        return pattern_from_json(fh.read())
