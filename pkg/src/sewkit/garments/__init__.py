"""Garment program library.

Importing this package registers every built-in garment; the combinator
(`meta_garment`) must come last so the others are already registered when
it is first asked for its template.
"""

from . import skirts, bodices, sleeves, pants, collars  # noqa: F401
from . import meta  # noqa: F401
from .registry import (  # noqa: F401
    GarmentSpec,
    all_specs,
    bottoms,
    get,
    names,
    register,
    tagged,
    uppers,
)

__all__ = [
    "GarmentSpec", "all_specs", "bottoms", "get", "names",
    "register", "tagged", "uppers",
]
