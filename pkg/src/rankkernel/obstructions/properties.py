"""Graph properties as obstruction detectors, with union and complement combinators.

A property here is the family of graphs that *contain* an obstruction, so
membership is closed under taking supergraphs and deletion problems ask to
leave it.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from ..errors import PreconditionError
from ..graph import Graph, to_mask
from .asteroidal import at_witness_set, has_at
from .holes import has_hole
from .wheels import any_wheel, has_wheel, wheel_not_4

Finder = Callable[[Graph, int], "frozenset[int] | None"]


@dataclass(frozen=True)
class PropertySpec:
    """``find(g, within)`` returns a vertex set inducing an obstruction, or None."""

    id: str
    find: Finder
    rank: int | None
    singleton: bool
    description: str = ""

    def witness(self, g: Graph, within: int | None = None) -> frozenset[int] | None:
        return self.find(g, g.vertex_mask if within is None else within)

    def contains(self, g: Graph, within: int | None = None) -> bool:
        return self.witness(g, within) is not None

    def contains_after_deleting(self, g: Graph, deleted) -> bool:
        return self.contains(g, g.vertex_mask & ~to_mask(deleted))


def _hole_finder(parity: str, min_len: int) -> Finder:
    def find(g: Graph, within: int):
        found = has_hole(g, parity, min_len, within)
        return frozenset(found) if found else None

    return find


def _wheel_finder(allowed) -> Finder:
    def find(g: Graph, within: int):
        found = has_wheel(g, allowed, within)
        return frozenset((found[0],) + found[1]) if found else None

    return find


def _find_at(g: Graph, within: int):
    triple = has_at(g, within)
    return at_witness_set(g, triple, within) if triple else None


def union_property(p1: PropertySpec, p2: PropertySpec, id: str | None = None) -> PropertySpec:
    """Graphs holding an obstruction of either kind; rank is the larger of the two."""
    rank = None if p1.rank is None or p2.rank is None else max(p1.rank, p2.rank)

    def find(g: Graph, within: int):
        return p1.find(g, within) or p2.find(g, within)

    return PropertySpec(
        id or f"union({p1.id},{p2.id})",
        find,
        rank,
        p1.singleton and p2.singleton,
        f"{p1.id} or {p2.id}",
    )


def complement_property(p: PropertySpec, id: str | None = None) -> PropertySpec:
    """Graphs whose complement holds an obstruction of ``p``."""

    def find(g: Graph, within: int):
        return p.find(g.complement(), within)

    return PropertySpec(id or f"co-{p.id}", find, p.rank, p.singleton, f"complement of {p.id}")


ODD_HOLE = PropertySpec("odd-hole", _hole_finder("odd", 5), 4, True, "odd hole")
ODD_ANTIHOLE = complement_property(ODD_HOLE, "odd-antihole")
PERFECT = union_property(ODD_HOLE, ODD_ANTIHOLE, "perfect")
EVEN_HOLE = PropertySpec("even-hole", _hole_finder("even", 4), 3, True, "even hole")
HOLE4 = PropertySpec("hole4", _hole_finder("any", 4), 3, True, "hole of length at least 4")
HOLE6 = PropertySpec("hole6", _hole_finder("any", 6), 5, True, "hole of length at least 6")
WHEEL = PropertySpec("wheel", _wheel_finder(any_wheel), 4, False, "wheel W_n, n >= 3")
# No finite rank characterizes this family.
ALMOST_WHEEL = PropertySpec("almost-wheel", _wheel_finder(wheel_not_4), None, False, "wheel W_n, n = 3 or n >= 5")
AT = PropertySpec("at", _find_at, 8, True, "asteroidal triple")
INTERVAL = union_property(AT, HOLE4, "interval")

PROPERTIES: dict[str, PropertySpec] = {
    p.id: p
    for p in [
        ODD_HOLE, ODD_ANTIHOLE, PERFECT, EVEN_HOLE, HOLE4, HOLE6, WHEEL, ALMOST_WHEEL, AT, INTERVAL,
    ]
}


def get_property(name: str | PropertySpec) -> PropertySpec:
    if isinstance(name, PropertySpec):
        return name
    try:
        return PROPERTIES[name]
    except KeyError:
        raise PreconditionError(
            f"unknown property {name!r}; choose from {', '.join(sorted(PROPERTIES))}"
        ) from None
