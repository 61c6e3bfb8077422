"""sewkit: programmable parametric sewing patterns.

Panels are flat pieces bounded by closed loops of curve edges; components
nest panels into garments; stitches connect edges across panels.  The
package covers the path from parametric garment code down to a serialized
flat-pattern document plus an SVG preview, with a CLI and an HTTP service
on top.
"""

from .edges import Edge, Point2, RelControl
from .errors import (
    GeometryError,
    ParamError,
    PatternFormatError,
    SewkitError,
    SolverError,
    StitchError,
    UnknownGarmentError,
)

__version__ = "0.1.0"

__all__ = [
    "Edge",
    "Point2",
    "RelControl",
    "SewkitError",
    "GeometryError",
    "ParamError",
    "SolverError",
    "StitchError",
    "PatternFormatError",
    "UnknownGarmentError",
    "__version__",
]
