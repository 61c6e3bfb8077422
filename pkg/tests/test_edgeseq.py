import math

import pytest

from sewkit.edges import Edge
from sewkit.edgeseq import CHAIN_TOL, EdgeSequence, dart_shape, from_verts
from sewkit.errors import GeometryError


def square():
    return from_verts((0, 0), (4, 0), (4, 4), (0, 4), loop=True)


def test_from_verts_open_chain():
    seq = from_verts((0, 0), (3, 0), (3, 4))
    assert len(seq) == 2
    assert seq.is_chained()
    assert not seq.is_loop()
    assert seq.length() == pytest.approx(7.0)
    assert seq.vertices() == [(0, 0), (3, 0), (3, 4)]


def test_from_verts_loop():
    seq = square()
    assert len(seq) == 4
    assert seq.is_loop()
    assert seq.length() == pytest.approx(16.0)


def test_from_verts_needs_two_points():
    with pytest.raises(GeometryError):
        from_verts((1, 2))


def test_identity_indexing_with_equal_geometry():
    # two geometrically identical edges must stay distinguishable
    a = Edge.line((0, 0), (1, 0))
    b = Edge.line((0, 0), (1, 0))
    seq = EdgeSequence([a, b])
    assert seq.index(a) == 0
    assert seq.index(b) == 1
    seq.remove(a)
    assert len(seq) == 1
    assert seq[0] is b


def test_index_missing_edge_raises():
    seq = square()
    with pytest.raises(ValueError):
        seq.index(Edge.line((0, 0), (4, 0)))


def test_slice_returns_sequence():
    seq = square()
    sub = seq[1:3]
    assert isinstance(sub, EdgeSequence)
    assert len(sub) == 2
    assert sub[0] is seq[1]


def test_substitute_single_edge_with_split():
    seq = square()
    target = seq[1]
    halves = target.subdivide([0.5])
    seq.substitute(target, halves)
    assert len(seq) == 5
    assert seq.is_loop()
    assert seq.length() == pytest.approx(16.0)
    assert seq[1] is halves[0] and seq[2] is halves[1]


def test_substitute_by_index_and_run():
    seq = square()
    first = seq[0]
    seq.substitute(0, first.subdivide([0.25, 0.5]))
    assert len(seq) == 6
    # collapse the three pieces back into one edge
    seq.substitute([seq[0], seq[1], seq[2]], first)
    assert len(seq) == 4
    assert seq[0] is first
    assert seq.is_loop()


def test_substitute_nonconsecutive_run_rejected():
    seq = square()
    with pytest.raises(ValueError):
        seq.substitute([seq[0], seq[2]], Edge.line((0, 0), (1, 1)))


def test_substitute_rejects_non_edges():
    seq = square()
    with pytest.raises(TypeError):
        seq.substitute(0, ["not an edge"])


def test_chain_tolerance_boundary():
    a = Edge.line((0, 0), (1, 0))
    b = Edge.line((1 + 0.5 * CHAIN_TOL, 0), (2, 0))
    c = Edge.line((1 + 10 * CHAIN_TOL, 0), (2, 0))
    assert EdgeSequence([a, b]).is_chained()
    assert not EdgeSequence([a, c]).is_chained()


def test_loop_needs_two_edges():
    assert not EdgeSequence([Edge.line((0, 0), (1, 0))]).is_loop()


def test_rigid_transforms_preserve_lengths_and_loop():
    seq = square()
    for moved in (
        seq.translated((2.5, -1)),
        seq.rotated(37.0, pivot=(1, 1)),
        seq.reflected((0, 0), (0, 1)),
    ):
        assert moved.is_loop()
        assert moved.lengths() == pytest.approx(seq.lengths())
    grown = seq.scaled(2.0)
    assert grown.length() == pytest.approx(32.0)
    assert grown.is_loop()


def test_reversed_loop():
    seq = from_verts((0, 0), (2, 0), (2, 2), loop=True)
    rev = seq.reversed()
    assert rev.is_loop()
    assert rev.start == pytest.approx(seq.start)  # loop starts at same vertex
    assert rev[0].end == pytest.approx(seq[-1].start)
    assert rev.length() == pytest.approx(seq.length())


def test_reversed_open_chain_swaps_ends():
    seq = from_verts((0, 0), (3, 0), (3, 4))
    rev = seq.reversed()
    assert rev.start == pytest.approx((3, 4))
    assert rev.end == pytest.approx((0, 0))
    assert rev.is_chained()


def test_copy_is_shallow_but_independent():
    seq = square()
    dup = seq.copy()
    dup.remove(dup[0])
    assert len(seq) == 4 and len(dup) == 3
    assert seq[1] is dup[0]


def test_dart_shape_geometry():
    dart = dart_shape(2.0, 3.0)
    assert len(dart) == 2
    assert dart.is_chained()
    assert dart.start == pytest.approx((0, 0))
    assert dart.end == pytest.approx((2, 0))
    assert dart[0].end == pytest.approx((1, -3))
    leg = math.hypot(1.0, 3.0)
    assert dart.length() == pytest.approx(2 * leg)


def test_dart_shape_validation():
    with pytest.raises(GeometryError):
        dart_shape(0.0, 1.0)
    with pytest.raises(GeometryError):
        dart_shape(1.0, -2.0)


def test_append_type_checked():
    seq = EdgeSequence()
    with pytest.raises(TypeError):
        seq.append((0, 0))
