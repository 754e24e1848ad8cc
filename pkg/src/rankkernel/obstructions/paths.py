"""Constructive path lemmas: a vertex that sees a path evenly closes a hole.

Both routines follow the inductive argument as a loop: each step either
finds a hole directly or shrinks the path to a shorter one that still
satisfies the premise.
"""

from __future__ import annotations

from typing import Sequence

from ..errors import PreconditionError
from ..graph import Graph, to_mask
from .holes import find_induced_cycle, is_hole_sequence


def _check_induced_path(g: Graph, path: Sequence[int]) -> None:
    n = len(path)
    if len(set(path)) != n or any(not 0 <= v < g.n for v in path):
        raise PreconditionError("path must list distinct vertices of g")
    for i in range(n):
        for j in range(i + 1, n):
            if g.has_edge(path[i], path[j]) != (j == i + 1):
                raise PreconditionError("path is not an induced path")


def _check_y(g: Graph, path: Sequence[int], y: int) -> None:
    if not 0 <= y < g.n or y in path:
        raise PreconditionError("y must be a vertex of g off the path")
    if not (g.has_edge(y, path[0]) and g.has_edge(y, path[-1])):
        raise PreconditionError("y must be adjacent to both path endpoints")


def seen_edges(g: Graph, path: Sequence[int], y: int) -> int:
    return sum(1 for a, b in zip(path, path[1:]) if g.has_edge(y, a) and g.has_edge(y, b))


def seen_vertices(g: Graph, path: Sequence[int], y: int) -> int:
    return sum(1 for v in path if g.has_edge(y, v))


def _verified(g: Graph, cycle: list[int], parity: int) -> frozenset[int]:
    if len(cycle) % 2 != parity or not is_hole_sequence(g, cycle):
        raise AssertionError(f"constructed set {sorted(cycle)} is not the promised hole")
    if find_induced_cycle(g, lambda n: n % 2 == parity, to_mask(cycle)) is None:
        raise AssertionError("hole search disagrees with the constructed hole")
    return frozenset(cycle)


def odd_hole_from_path(g: Graph, path: Sequence[int], y: int) -> frozenset[int]:
    """Odd hole inside ``path + y`` when y sees an even number of path edges.

    The path must be induced with an even number (at least 4) of vertices and
    y adjacent to both ends.
    """
    path = list(path)
    _check_induced_path(g, path)
    if len(path) < 4 or len(path) % 2:
        raise PreconditionError("path must have an even number of vertices, at least 4")
    _check_y(g, path, y)
    if seen_edges(g, path, y) % 2:
        raise PreconditionError("y sees an odd number of path edges")

    while True:
        n = len(path)
        if n == 4:
            # Parity forces y to miss both middle vertices.
            return _verified(g, path + [y], 1)
        sees_first = g.has_edge(y, path[1])
        sees_last = g.has_edge(y, path[-2])
        if sees_first and sees_last:
            path = path[1:-1]
            continue
        if sees_last:
            path.reverse()
        # y misses the second-to-last vertex; j is the last neighbour before it.
        j = max(i for i in range(n - 2) if g.has_edge(y, path[i]))
        if j % 2 == 0:
            # 0-based even index: v_j .. v_n plus y has odd length.
            return _verified(g, path[j:] + [y], 1)
        path = path[: j + 1]


def even_hole_from_path(g: Graph, path: Sequence[int], y: int) -> frozenset[int]:
    """Even hole inside ``path + y`` when y sees an even number of path vertices.

    The path must be induced with an odd number (at least 3) of vertices and
    y adjacent to both ends.
    """
    path = list(path)
    _check_induced_path(g, path)
    if len(path) < 3 or len(path) % 2 == 0:
        raise PreconditionError("path must have an odd number of vertices, at least 3")
    _check_y(g, path, y)
    if seen_vertices(g, path, y) % 2:
        raise PreconditionError("y sees an odd number of path vertices")

    while True:
        n = len(path)
        inner = [i for i in range(1, n - 1) if g.has_edge(y, path[i])]
        if not inner:
            return _verified(g, path + [y], 0)
        first, last = inner[0], inner[-1]
        # 0-based even index corresponds to an odd position on the path.
        if first % 2 == 0:
            return _verified(g, path[: first + 1] + [y], 0)
        if last % 2 == 0:
            return _verified(g, path[last:] + [y], 0)
        path = path[first : last + 1]
