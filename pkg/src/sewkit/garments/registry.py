"""Name-to-constructor registry for garment programs.

Garments register themselves at import time; everything downstream (the
combinator garment, the CLI, the HTTP service, the UI) addresses them by
name only.  Adding a garment means registering it here - nothing else in
the codebase enumerates garment types.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from ..components import Component
from ..errors import UnknownGarmentError
from ..params import BodyParams, ResolvedDesign


@dataclass(frozen=True)
class GarmentSpec:
    """One registered garment program.

    ``build_values`` is pure: (body, plain value dict) -> component
    hierarchy; combinators call it directly with namespaced sub-values.
    ``design_template`` returns a fresh default design document (callable
    so combinators can enumerate the registry at call time).
    ``waist_interfaces`` names root interfaces whose total length must
    equal the body waist; empty when the garment has no waist seam.
    ``build_half`` (uppers only) builds the un-mirrored right half so a
    combinator can cut armholes and collars before assembly.
    """

    name: str
    build_values: Callable[[BodyParams, dict], Component]
    design_template: Callable[[], dict]
    waist_interfaces: tuple[str, ...] = ()
    tags: frozenset = field(default_factory=frozenset)
    build_half: Callable[[BodyParams, dict], Component] | None = None

    def build(self, body: BodyParams, design: ResolvedDesign) -> Component:
        return self.build_values(body, design.values())


_REGISTRY: dict[str, GarmentSpec] = {}


def register(spec: GarmentSpec) -> GarmentSpec:
    if spec.name in _REGISTRY:
        raise ValueError(f"garment {spec.name!r} registered twice")
    _REGISTRY[spec.name] = spec
    return spec


def get(name: str) -> GarmentSpec:
    try:
        return _REGISTRY[name]
    except KeyError:
        raise UnknownGarmentError(name, names()) from None


def names() -> list[str]:
    return sorted(_REGISTRY)


def all_specs() -> list[GarmentSpec]:
    return [_REGISTRY[n] for n in names()]


def tagged(tag: str) -> list[str]:
    return [n for n in names() if tag in _REGISTRY[n].tags]


def bottoms() -> list[str]:
    """Under-waist garments usable below a bodice."""
    return tagged("bottom")


def uppers() -> list[str]:
    return tagged("upper")
