"""Exception taxonomy shared across the package.

Every error raised on a user-facing path derives from SewkitError and
carries a short machine-readable ``code`` so the CLI and the HTTP service
can emit structured reports without string matching.
"""

from __future__ import annotations


class SewkitError(Exception):
    """Base class for all package errors."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def report(self) -> dict:
        doc = {"code": self.code, "message": self.message}
        doc.update({k: v for k, v in self.details.items() if v is not None})
        return doc


class GeometryError(SewkitError):
    """Degenerate or invalid geometric input (zero-length chord, bad radius, ...)."""

    code = "geometry"


class ParamError(SewkitError):
    """Invalid body or design configuration.  ``path`` names the offending field."""

    code = "params"

    def __init__(self, message: str, path: str | None = None, **details):
        super().__init__(message, path=path, **details)
        self.path = path


class SolverError(SewkitError):
    """An optimization failed to reach its documented tolerance."""

    code = "solver"

    def __init__(self, message: str, residuals: dict | None = None, **details):
        super().__init__(message, residuals=residuals, **details)
        self.residuals = residuals or {}


class StitchError(SewkitError):
    """Invalid stitch topology (edge claimed twice, empty interface, ...)."""

    code = "stitch"


class PatternFormatError(SewkitError):
    """A pattern document violates the serialization format."""

    code = "format"

    def __init__(self, message: str, path: str | None = None, **details):
        super().__init__(message, path=path, **details)
        self.path = path


class UnknownGarmentError(SewkitError):
    """Requested garment name is not registered."""

    code = "unknown_garment"

    def __init__(self, name: str, registered: list[str]):
        super().__init__(
            f"unknown garment {name!r}; registered garments: {', '.join(registered)}",
            garment=name,
            registered=registered,
        )
        self.garment = name
        self.registered = registered
