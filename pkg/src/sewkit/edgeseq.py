"""Ordered edge collections and the factories garments build outlines from.

An EdgeSequence is list-like and mutated freely while a panel is under
construction; the transform methods return new sequences because edges
themselves are immutable.  Chaining (consecutive edges sharing endpoints)
is a property of specific uses (panel loops, projection shapes), not of
the container, so it is checked on demand.
"""

from __future__ import annotations

from typing import Iterable, Iterator, Sequence, overload

from .edges import Edge, Point2, _dist
from .errors import GeometryError

# Two endpoints within this distance (cm) count as the same vertex.
CHAIN_TOL = 1e-6


class EdgeSequence:
    def __init__(self, edges: Iterable[Edge] = ()):
        self._edges: list[Edge] = []
        for e in edges:
            self.append(e)

    # -- list protocol -------------------------------------------------

    def __len__(self) -> int:
        return len(self._edges)

    def __iter__(self) -> Iterator[Edge]:
        return iter(self._edges)

    @overload
    def __getitem__(self, i: int) -> Edge: ...

    @overload
    def __getitem__(self, i: slice) -> "EdgeSequence": ...

    def __getitem__(self, i):
        if isinstance(i, slice):
            return EdgeSequence(self._edges[i])
        return self._edges[i]

    def __contains__(self, edge: Edge) -> bool:
        return any(e is edge for e in self._edges)

    def append(self, edge: Edge):
        self._check(edge)
        self._edges.append(edge)

    def extend(self, edges: Iterable[Edge]):
        for e in edges:
            self.append(e)

    def insert(self, i: int, edge: Edge):
        self._check(edge)
        self._edges.insert(i, edge)

    def remove(self, edge: Edge):
        del self._edges[self.index(edge)]

    def index(self, edge: Edge) -> int:
        """Identity-based lookup: sequences may hold geometrically equal
        but distinct edges."""
        for i, e in enumerate(self._edges):
            if e is edge:
                return i
        raise ValueError(f"{edge!r} is not in this sequence")

    def substitute(self, target, replacement) -> "EdgeSequence":
        """Replace ``target`` (an edge, an index, or a consecutive run of
        edges) with ``replacement`` (an edge or an iterable).  Returns self."""
        repl = [replacement] if isinstance(replacement, Edge) else list(replacement)
        for e in repl:
            self._check(e)
        if isinstance(target, int):
            lo = target if target >= 0 else target + len(self._edges)
            if not 0 <= lo < len(self._edges):
                raise ValueError(f"index {target} out of range")
            hi = lo + 1
        elif isinstance(target, Edge):
            lo = self.index(target)
            hi = lo + 1
        else:
            run = list(target)
            if not run:
                raise ValueError("empty substitution target")
            lo = self.index(run[0])
            hi = lo + len(run)
            if hi > len(self._edges) or any(
                self._edges[lo + k] is not run[k] for k in range(len(run))
            ):
                raise ValueError("target edges are not a consecutive run")
        self._edges[lo:hi] = repl
        return self

    @staticmethod
    def _check(edge):
        if not isinstance(edge, Edge):
            raise TypeError(f"expected Edge, got {type(edge).__name__}")

    # -- geometry queries ------------------------------------------------

    @property
    def start(self) -> Point2:
        return self._edges[0].start

    @property
    def end(self) -> Point2:
        return self._edges[-1].end

    def is_chained(self, tol: float = CHAIN_TOL) -> bool:
        return all(
            _dist(a.end, b.start) <= tol
            for a, b in zip(self._edges, self._edges[1:])
        )

    def is_loop(self, tol: float = CHAIN_TOL) -> bool:
        if len(self._edges) < 2:
            return False
        return self.is_chained(tol) and _dist(self.end, self.start) <= tol

    def length(self) -> float:
        return sum(e.length() for e in self._edges)

    def lengths(self) -> list[float]:
        return [e.length() for e in self._edges]

    def vertices(self) -> list[Point2]:
        """Chain vertices: each edge's start plus the final end."""
        return [e.start for e in self._edges] + [self._edges[-1].end]

    # -- transforms (pure) -------------------------------------------------

    def copy(self) -> "EdgeSequence":
        return EdgeSequence(self._edges)

    def translated(self, offset) -> "EdgeSequence":
        return EdgeSequence(e.translated(offset) for e in self._edges)

    def rotated(self, angle_deg: float, pivot=(0.0, 0.0)) -> "EdgeSequence":
        return EdgeSequence(e.rotated(angle_deg, pivot) for e in self._edges)

    def scaled(self, factor: float, pivot=(0.0, 0.0)) -> "EdgeSequence":
        return EdgeSequence(e.scaled(factor, pivot) for e in self._edges)

    def reflected(self, point, direction) -> "EdgeSequence":
        return EdgeSequence(e.reflected(point, direction) for e in self._edges)

    def reversed(self) -> "EdgeSequence":
        """Reverse traversal: edge order flips and every edge reverses."""
        return EdgeSequence(e.reversed() for e in reversed(self._edges))

    def __repr__(self):  # pragma: no cover - debugging aid
        return f"EdgeSequence({len(self._edges)} edges, len={self.length():.3g})"


def from_verts(*verts, loop: bool = False) -> EdgeSequence:
    """Straight-line chain through the given vertices; ``loop`` closes it."""
    pts = [Point2(float(p[0]), float(p[1])) for p in verts]
    if len(pts) < 2:
        raise GeometryError("from_verts needs at least two vertices")
    seq = EdgeSequence(Edge.line(a, b) for a, b in zip(pts, pts[1:]))
    if loop:
        seq.append(Edge.line(pts[-1], pts[0]))
    return seq


def dart_shape(width: float, depth: float) -> EdgeSequence:
    """Triangular dart: two legs from (0,0) down to the apex at
    (width/2, -depth) and back up to (width, 0).  The apex points toward
    local -y; projection ops reorient it."""
    if width <= 0 or depth <= 0:
        raise GeometryError(f"dart needs positive width and depth, got {width}, {depth}")
    return from_verts((0.0, 0.0), (0.5 * width, -float(depth)), (float(width), 0.0))
