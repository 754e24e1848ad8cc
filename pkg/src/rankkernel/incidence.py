"""c-incidence vectors of vertices outside a vertex cover.

For a cover ``X`` and bound ``c`` the coordinates are the disjoint pairs
``(Q, R)`` of subsets of ``X`` with ``|Q| + |R| <= c``.  A vertex ``u`` outside
``X`` has a one at ``(Q, R)`` iff it misses all of ``Q`` and sees all of ``R``.

Coordinates are ordered by ``|Q| + |R|``, then lexicographically by the sorted
union, then by the bitmask recording which union members belong to ``R``.
Vectors are stored as ints with coordinate ``i`` at bit ``i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce as _fold
from itertools import combinations
from math import comb
from typing import Iterable

import numpy as np

from .errors import DEFAULT_CAPS, PreconditionError, ResourceError
from .graph import Graph, iter_bits, to_mask


def coordinate_count(cover_size: int, c: int) -> int:
    return sum(comb(cover_size, s) << s for s in range(min(c, cover_size) + 1))


def _pack(flags: np.ndarray) -> int:
    return int.from_bytes(np.packbits(flags, bitorder="little").tobytes(), "little")


def _unpack(bits: int, length: int) -> np.ndarray:
    raw = bits.to_bytes((length + 7) // 8, "little")
    return np.unpackbits(np.frombuffer(raw, dtype=np.uint8), bitorder="little")[:length]


class CoordinateIndex:
    """Canonical coordinate system for one ``(X, c)`` pair, or a projection of it.

    Q and R are held as bitmasks over positions in the sorted cover.  A
    projected index keeps only coordinates with ``Q' ⊆ Q`` and ``R' ⊆ R``
    and remembers where they sit in its parent.
    """

    def __init__(
        self,
        cover: tuple[int, ...],
        rank_bound: int,
        qmasks: list[int],
        rmasks: list[int],
        projection: tuple[frozenset[int], frozenset[int]] = (frozenset(), frozenset()),
        parent: "CoordinateIndex | None" = None,
        parent_positions: np.ndarray | None = None,
    ):
        self.cover = cover
        self.rank_bound = rank_bound
        self.qmasks = qmasks
        self.rmasks = rmasks
        self.projection = projection
        self.parent = parent
        self.parent_positions = parent_positions
        self._position_of = {v: i for i, v in enumerate(cover)}
        self._coords: list[tuple[frozenset[int], frozenset[int]]] | None = None
        self._lookup: dict[tuple[int, int], int] | None = None
        self._cache: dict[int, int] = {}
        self._restrictions: dict[tuple[int, int], CoordinateIndex] = {}
        if len(cover) <= 63:
            self._qarr = np.array(qmasks, dtype=np.uint64)
            self._rarr = np.array(rmasks, dtype=np.uint64)
        else:
            self._qarr = self._rarr = None

    def __len__(self) -> int:
        return len(self.qmasks)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, CoordinateIndex)
            and self.cover == other.cover
            and self.rank_bound == other.rank_bound
            and self.projection == other.projection
        )

    def __hash__(self) -> int:
        return hash((self.cover, self.rank_bound, self.projection))

    def __repr__(self) -> str:
        return f"CoordinateIndex(|X|={len(self.cover)}, c={self.rank_bound}, dim={len(self)})"

    @property
    def is_projected(self) -> bool:
        return self.parent is not None

    def _members(self, mask: int) -> frozenset[int]:
        return frozenset(self.cover[j] for j in iter_bits(mask))

    @property
    def coords(self) -> list[tuple[frozenset[int], frozenset[int]]]:
        if self._coords is None:
            self._coords = [
                (self._members(q), self._members(r)) for q, r in zip(self.qmasks, self.rmasks)
            ]
        return self._coords

    def cover_mask(self, vertices: Iterable[int]) -> int:
        mask = 0
        for v in vertices:
            pos = self._position_of.get(v)
            if pos is None:
                raise PreconditionError(f"vertex {v} is not in the cover")
            mask |= 1 << pos
        return mask

    def position(self, q: Iterable[int], r: Iterable[int]) -> int:
        if self._lookup is None:
            self._lookup = {(qm, rm): i for i, (qm, rm) in enumerate(zip(self.qmasks, self.rmasks))}
        key = (self.cover_mask(q), self.cover_mask(r))
        if key not in self._lookup:
            raise KeyError(f"no coordinate ({set(q)}, {set(r)}) in this index")
        return self._lookup[key]

    def neighborhood_mask(self, g: Graph, u: int) -> int:
        """N(u) as a mask over cover positions."""
        mask = 0
        for w in iter_bits(g.adj[u]):
            pos = self._position_of.get(w)
            if pos is not None:
                mask |= 1 << pos
        return mask

    def bits_for(self, nb: int) -> int:
        """Vector bits of a vertex whose neighbourhood in X has position mask ``nb``."""
        cached = self._cache.get(nb)
        if cached is not None:
            return cached
        if self._qarr is not None:
            full = (1 << len(self.cover)) - 1
            ok = ((self._qarr & np.uint64(nb)) == 0) & ((self._rarr & np.uint64(full & ~nb)) == 0)
            bits = _pack(ok)
        else:
            bits = 0
            for i, (q, r) in enumerate(zip(self.qmasks, self.rmasks)):
                if not q & nb and not r & ~nb:
                    bits |= 1 << i
        self._cache[nb] = bits
        return bits

    def restrict(self, qp: Iterable[int], rp: Iterable[int]) -> "CoordinateIndex":
        """Sub-index of coordinates ``(Q, R)`` with ``qp ⊆ Q`` and ``rp ⊆ R``."""
        if self.is_projected:
            raise PreconditionError("projection is only defined on a full index")
        qp, rp = frozenset(qp), frozenset(rp)
        if qp & rp:
            raise PreconditionError("projection sets must be disjoint")
        if len(qp) + len(rp) > self.rank_bound:
            raise PreconditionError("projection sets exceed the rank bound")
        qm, rm = self.cover_mask(qp), self.cover_mask(rp)
        key = (qm, rm)
        if key not in self._restrictions:
            keep = [
                i for i, (q, r) in enumerate(zip(self.qmasks, self.rmasks))
                if q & qm == qm and r & rm == rm
            ]
            self._restrictions[key] = CoordinateIndex(
                self.cover,
                self.rank_bound,
                [self.qmasks[i] for i in keep],
                [self.rmasks[i] for i in keep],
                projection=(qp, rp),
                parent=self,
                parent_positions=np.array(keep, dtype=np.int64),
            )
        return self._restrictions[key]


def enumerate_coords(cover: Iterable[int], c: int, cap: int | None = None) -> CoordinateIndex:
    """Build the canonical coordinate index for cover ``X`` and rank bound ``c``."""
    if c < 0:
        raise PreconditionError("rank bound must be non-negative")
    cover_t = tuple(sorted(set(cover)))
    cap = DEFAULT_CAPS.max_coords if cap is None else cap
    total = coordinate_count(len(cover_t), c)
    if total > cap:
        raise ResourceError(
            f"{total} coordinates for |X|={len(cover_t)}, c={c} exceed the cap of {cap}"
        )
    qmasks: list[int] = []
    rmasks: list[int] = []
    for size in range(min(c, len(cover_t)) + 1):
        for union in combinations(range(len(cover_t)), size):
            for assign in range(1 << size):
                q = r = 0
                for k, pos in enumerate(union):
                    if (assign >> k) & 1:
                        r |= 1 << pos
                    else:
                        q |= 1 << pos
                qmasks.append(q)
                rmasks.append(r)
    return CoordinateIndex(cover_t, c, qmasks, rmasks)


@dataclass(frozen=True)
class IncVector:
    index: CoordinateIndex
    bits: int

    @property
    def length(self) -> int:
        return len(self.index)

    def __xor__(self, other: "IncVector") -> "IncVector":
        if other.index != self.index:
            raise PreconditionError("vectors live in different coordinate systems")
        return IncVector(self.index, self.bits ^ other.bits)

    __add__ = __xor__

    def __getitem__(self, pos: int) -> int:
        return (self.bits >> pos) & 1

    def entry(self, q: Iterable[int], r: Iterable[int]) -> int:
        return self[self.index.position(q, r)]

    def to_string(self) -> str:
        return "".join("1" if b else "0" for b in _unpack(self.bits, self.length))


def _check_outside(g: Graph, idx: CoordinateIndex, u: int) -> None:
    if not 0 <= u < g.n:
        raise PreconditionError(f"vertex {u} out of range")
    if u in idx._position_of:
        raise PreconditionError("incidence vectors are defined only outside the cover")
    if g.adj[u] & ~to_mask(idx.cover):
        raise PreconditionError(f"vertex {u} has a neighbour outside X; X is not a vertex cover")


def inc_vector(g: Graph, idx: CoordinateIndex, u: int) -> IncVector:
    _check_outside(g, idx, u)
    return IncVector(idx, idx.bits_for(idx.neighborhood_mask(g, u)))


def project(v: IncVector, qp: Iterable[int], rp: Iterable[int]) -> IncVector:
    """Keep only the coordinates ``(Q, R)`` with ``qp ⊆ Q`` and ``rp ⊆ R``."""
    sub = v.index.restrict(qp, rp)
    flags = _unpack(v.bits, v.length)[sub.parent_positions]
    return IncVector(sub, _pack(flags))


def _vertex_set(g: Graph, vertices: Iterable[int], what: str) -> frozenset[int]:
    out = frozenset(vertices)
    if any(not 0 <= u < g.n for u in out):
        raise PreconditionError(f"{what} contains an out-of-range vertex")
    return out


def check_sum(g: Graph, idx: CoordinateIndex, target: int, d: Iterable[int]) -> bool:
    """Whether the vectors of ``d`` XOR to the vector of ``target``."""
    d = _vertex_set(g, d, "d")
    if target in d:
        raise PreconditionError("target must not belong to d")
    if any(u in idx._position_of for u in d):
        raise PreconditionError("d must be disjoint from the cover")
    acc = inc_vector(g, idx, target).bits
    for u in sorted(d):
        _check_outside(g, idx, u)
        acc ^= idx.bits_for(idx.neighborhood_mask(g, u))
    return acc == 0


def share_projection(
    g: Graph, idx: CoordinateIndex, target: int, s: Iterable[int]
) -> tuple[frozenset[int], frozenset[int]]:
    """``(Q', R') = ((S \\ N(v)) ∩ X, S ∩ N(v))`` for the adjacency-share lemma."""
    s = _vertex_set(g, s, "s")
    nbrs = set(iter_bits(g.adj[target]))
    cover = set(idx.cover)
    return frozenset((s - nbrs) & cover), frozenset(s & nbrs)


def adjacency_share_subset(
    g: Graph, idx: CoordinateIndex, target: int, d: Iterable[int], s: Iterable[int]
) -> frozenset[int]:
    """Members of ``d`` with the same adjacencies to ``s`` as ``target``.

    Given that ``d`` sums to ``target``, the result is non-empty of odd size and
    its projected vectors onto ``share_projection`` still sum to the target's.
    """
    d = _vertex_set(g, d, "d")
    s = _vertex_set(g, s, "s")
    if len(s) > idx.rank_bound:
        raise PreconditionError(f"|s| = {len(s)} exceeds c = {idx.rank_bound}")
    if not check_sum(g, idx, target, d):
        raise PreconditionError("vectors of d do not sum to the target's vector")
    smask = to_mask(s)
    want = g.adj[target] & smask
    shared = frozenset(u for u in d if g.adj[u] & smask == want)
    if len(shared) % 2 != 1:
        raise AssertionError("adjacency-share subset is not of odd size")
    return shared


def sum_vectors(vectors: Iterable[IncVector], index: CoordinateIndex) -> IncVector:
    return _fold(lambda a, b: a ^ b, vectors, IncVector(index, 0))
