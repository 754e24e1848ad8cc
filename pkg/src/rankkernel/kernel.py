"""The basis-peeling reduction and the kernelization wrapper with presets.

This module deliberately knows nothing about obstruction detection: presets
name their property by id and callers resolve it elsewhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable

from .errors import PreconditionError
from .gf2 import BitVec, Gf2Basis
from .graph import DeletionInstance, Graph, VertexCoverCert, verify_vertex_cover
from .incidence import coordinate_count, enumerate_coords


@dataclass(frozen=True)
class Round:
    number: int
    kept: tuple[int, ...]
    rank: int


@dataclass
class ReduceTrace:
    """Per-round kept sets (ids of the input graph) and the removed vertices.

    Rounds after the pool of non-cover vertices runs dry keep nothing and are
    not recorded.
    """

    ell: int
    c: int
    cover_size: int
    dimension: int
    rounds: list[Round] = field(default_factory=list)
    removed: tuple[int, ...] = ()

    @property
    def bound(self) -> int:
        return self.cover_size + self.ell * self.dimension

    @property
    def kept(self) -> tuple[int, ...]:
        return tuple(sorted(v for r in self.rounds for v in r.kept))

    def to_json(self) -> dict:
        return {
            "ell": self.ell,
            "c": self.c,
            "cover_size": self.cover_size,
            "dimension": self.dimension,
            "bound": self.bound,
            "rounds": [{"round": r.number, "kept": list(r.kept), "rank": r.rank} for r in self.rounds],
            "removed": list(self.removed),
        }


def reduce(
    g: Graph,
    cover: Iterable[int],
    ell: int,
    c: int,
    coord_cap: int | None = None,
) -> tuple[Graph, dict[int, int], ReduceTrace]:
    """Keep the cover plus ``ell`` successive GF(2) bases of the remaining vertices.

    Each round inserts the still-unkept non-cover vertices in ascending id
    order; a vertex is kept when its vector was independent at insertion.
    Returns the induced subgraph, the old-to-new id map, and the trace.
    """
    x = frozenset(cover)
    if any(not 0 <= v < g.n for v in x) or not verify_vertex_cover(g, x):
        raise PreconditionError("reduce needs a valid vertex cover")
    if ell < 1 or c < 1:
        raise PreconditionError("reduce needs ell >= 1 and c >= 1")
    idx = enumerate_coords(x, c, cap=coord_cap)
    vectors = {y: idx.bits_for(idx.neighborhood_mask(g, y)) for y in range(g.n) if y not in x}
    trace = ReduceTrace(ell=ell, c=c, cover_size=len(x), dimension=len(idx))

    remaining = sorted(vectors)
    for i in range(1, ell + 1):
        if not remaining:
            break
        basis = Gf2Basis(len(idx))
        for y in remaining:
            basis.insert(y, BitVec(len(idx), vectors[y]))
        kept = tuple(basis.accepted)
        trace.rounds.append(Round(i, kept, basis.rank))
        kept_set = set(kept)
        remaining = [y for y in remaining if y not in kept_set]
    trace.removed = tuple(remaining)

    out, id_map = g.induced_subgraph(x.union(trace.kept))
    if out.n > trace.bound:
        raise AssertionError(f"reduced graph has {out.n} vertices, bound is {trace.bound}")
    return out, id_map, trace


@dataclass(frozen=True)
class ProblemPreset:
    """Rank bound, size polynomial (coefficients, constant first) and property id."""

    name: str
    rank: int
    poly: tuple[int, ...]
    property_id: str
    singleton: bool

    def __post_init__(self):
        if self.rank < 1:
            raise PreconditionError("preset rank must be at least 1")
        # Non-negative coefficients make p non-decreasing on the naturals.
        if any(a < 0 for a in self.poly):
            raise PreconditionError("preset polynomial must have non-negative coefficients")

    def p(self, x: int) -> int:
        return sum(a * x**i for i, a in enumerate(self.poly))

    def rounds(self, cover_size: int, budget: int) -> int:
        return budget + 1 + self.p(cover_size)

    def vertex_bound(self, cover_size: int, budget: int) -> int:
        return cover_size + self.rounds(cover_size, budget) * coordinate_count(cover_size, self.rank)


PRESETS: dict[str, ProblemPreset] = {
    p.name: p
    for p in [
        ProblemPreset("perfect", 4, (0, 2), "perfect", True),
        ProblemPreset("even-hole-free", 3, (0, 2), "even-hole", True),
        # The AT bound is only known up to a constant; 4x+7 is a safe overestimate.
        ProblemPreset("at-free", 8, (7, 4), "at", True),
        ProblemPreset("interval", 8, (7, 4), "interval", False),
        ProblemPreset("wheel-free", 4, (0, 2), "wheel", False),
    ]
}


def get_preset(name: str | ProblemPreset) -> ProblemPreset:
    if isinstance(name, ProblemPreset):
        return name
    try:
        return PRESETS[name]
    except KeyError:
        raise PreconditionError(
            f"unknown preset {name!r}; choose from {', '.join(sorted(PRESETS))}"
        ) from None


@dataclass(frozen=True)
class Kernel:
    instance: DeletionInstance
    trace: ReduceTrace | None
    id_map: dict[int, int]

    @property
    def trivial(self) -> bool:
        return self.trace is None


TRIVIAL_YES = DeletionInstance(Graph.empty(0), VertexCoverCert(()), 0)


def kernelize(
    inst: DeletionInstance, preset: str | ProblemPreset, coord_cap: int | None = None
) -> Kernel:
    """Shrink ``inst`` to an equivalent instance for the preset's property.

    A budget of at least |X| admits deleting the whole cover, so the constant
    yes-instance is returned.  Otherwise the graph is reduced with
    ``ell = k + 1 + p(|X|)`` rounds and the budget is kept.
    """
    preset = get_preset(preset)
    x = inst.cover.cover
    if not verify_vertex_cover(inst.graph, x):
        raise PreconditionError("instance cover is not a vertex cover")
    if inst.budget >= len(x):
        return Kernel(TRIVIAL_YES, None, {})
    ell = preset.rounds(len(x), inst.budget)
    g2, id_map, trace = reduce(inst.graph, x, ell, preset.rank, coord_cap=coord_cap)
    out = DeletionInstance(g2, VertexCoverCert(id_map[v] for v in x), inst.budget)
    return Kernel(out, trace, id_map)
