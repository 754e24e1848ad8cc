"""Induced cycle (hole) search by backtracking over induced paths."""

from __future__ import annotations

from typing import Callable, Sequence

from ..errors import PreconditionError
from ..graph import Graph, iter_bits

PARITIES = ("odd", "even", "any")


def _collapse_false_twins(adj: Sequence[int], within: int) -> int:
    """Keep the smallest vertex of each class of equal neighbourhoods inside ``within``.

    Two such vertices are non-adjacent, and an induced cycle on five or more
    vertices can use at most one of them, so collapsing is safe whenever
    4-cycles are not wanted.
    """
    seen: set[int] = set()
    keep = 0
    for v in iter_bits(within):
        key = adj[v] & within
        if key not in seen:
            seen.add(key)
            keep |= 1 << v
    return keep


def find_induced_cycle(
    g: Graph, accept: Callable[[int], bool], within: int | None = None
) -> list[int] | None:
    """First induced cycle of length >= 4 in ``g[within]`` whose length passes ``accept``.

    Cycles are found from their smallest vertex ``s`` by growing induced paths
    through larger vertices; a path closes when its newest vertex touches ``s``.
    """
    adj = g.adj
    if within is None:
        within = g.vertex_mask
    if not accept(4):
        within = _collapse_false_twins(adj, within)

    def grow(path: list[int], allowed: int, blocked: int, start_nbrs: int) -> list[int] | None:
        last = path[-1]
        for w in iter_bits(adj[last] & allowed & ~blocked):
            if (start_nbrs >> w) & 1:
                if len(path) >= 3 and accept(len(path) + 1):
                    return path + [w]
                continue
            found = grow(path + [w], allowed, blocked | (1 << w) | adj[last], start_nbrs)
            if found:
                return found
        return None

    for s in iter_bits(within):
        allowed = within & ~((2 << s) - 1)
        start_nbrs = adj[s] & allowed
        for p1 in iter_bits(start_nbrs):
            # p1 is adjacent to s by construction, so s's neighbourhood stays
            # unblocked: later vertices touching s close the cycle.
            found = grow([s, p1], allowed, (1 << s) | (1 << p1), start_nbrs & ~(1 << p1))
            if found:
                return found
    return None


def _parity_accept(parity: str, min_len: int) -> Callable[[int], bool]:
    if parity not in PARITIES:
        raise PreconditionError(f"parity must be one of {PARITIES}")
    if min_len < 4:
        raise PreconditionError("holes have at least 4 vertices")
    if parity == "odd":
        return lambda n: n >= min_len and n % 2 == 1
    if parity == "even":
        return lambda n: n >= min_len and n % 2 == 0
    return lambda n: n >= min_len


def has_hole(
    g: Graph, parity: str = "any", min_len: int = 4, within: int | None = None
) -> tuple[int, ...] | None:
    """A chordless cycle of the given parity and length >= ``min_len``, in cycle order."""
    found = find_induced_cycle(g, _parity_accept(parity, min_len), within)
    return tuple(found) if found else None


def has_odd_antihole(g: Graph, within: int | None = None) -> tuple[int, ...] | None:
    """Vertices inducing an odd hole in the complement, in complement-cycle order."""
    return has_hole(g.complement(), "odd", 5, within)


def is_hole_sequence(g: Graph, seq: Sequence[int]) -> bool:
    """Definitional check: ``seq`` lists a chordless cycle of length >= 4 in order."""
    n = len(seq)
    if n < 4 or len(set(seq)) != n:
        return False
    for i in range(n):
        for j in range(i + 1, n):
            consecutive = j == i + 1 or (i == 0 and j == n - 1)
            if g.has_edge(seq[i], seq[j]) != consecutive:
                return False
    return True
