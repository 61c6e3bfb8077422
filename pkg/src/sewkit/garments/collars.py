"""Neckline shapes spliced into bodice top corners.

A collar style is a factory producing the cut shape for one bodice quarter:
a sequence starting at ``(0, 0)`` (the point on the center-front line,
``depth`` below the collar bone) and ending at ``(half_width, depth)`` (the
point on the shoulder edge).  The corner solver drops it in running
shoulder-to-center, so a straight shape reads as a V neckline and an arc
sagging away from the chord reads as a round one.
"""

from ..edges import Edge
from ..edgeseq import EdgeSequence
from ..errors import GeometryError

# arc bulge, as a fraction of the chord; negative sags away from the corner
ROUND_SAG = -0.3


def round_collar(half_width: float, depth: float) -> EdgeSequence:
    return EdgeSequence([Edge.arc((0.0, 0.0), (half_width, depth), ROUND_SAG)])


def v_collar(half_width: float, depth: float) -> EdgeSequence:
    return EdgeSequence([Edge.line((0.0, 0.0), (half_width, depth))])


COLLAR_STYLES = {
    "round": round_collar,
    "v": v_collar,
}


def collar_shape(style: str, half_width: float, depth: float) -> EdgeSequence:
    if style not in COLLAR_STYLES:
        raise GeometryError(
            f"unknown collar style {style!r}; available: "
            + ", ".join(sorted(COLLAR_STYLES))
        )
    if half_width <= 0 or depth <= 0:
        raise GeometryError("collar cut needs positive width and depth")
    return COLLAR_STYLES[style](half_width, depth)
