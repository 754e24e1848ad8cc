"""Induced wheel detection: a hub whose neighbourhood holds an induced cycle."""

from __future__ import annotations

from typing import Callable, Sequence

from ..graph import Graph, iter_bits
from .holes import find_induced_cycle


def any_wheel(n: int) -> bool:
    return n >= 3


def wheel_not_4(n: int) -> bool:
    return n == 3 or n >= 5


def _triangle(adj: Sequence[int], within: int) -> list[int] | None:
    for a in iter_bits(within):
        later = within & ~((2 << a) - 1)
        for b in iter_bits(adj[a] & later):
            common = adj[a] & adj[b] & within & ~((2 << b) - 1)
            if common:
                return [a, b, (common & -common).bit_length() - 1]
    return None


def has_wheel(
    g: Graph, allowed: Callable[[int], bool] = any_wheel, within: int | None = None
) -> tuple[int, tuple[int, ...]] | None:
    """``(hub, rim)`` of an induced wheel ``W_n`` with ``allowed(n)``, rim in cycle order."""
    if within is None:
        within = g.vertex_mask
    for hub in iter_bits(within):
        nbhd = g.adj[hub] & within
        if bin(nbhd).count("1") < 3:
            continue
        if allowed(3):
            tri = _triangle(g.adj, nbhd)
            if tri:
                return hub, tuple(tri)
        rim = find_induced_cycle(g, lambda n: n >= 4 and allowed(n), nbhd)
        if rim:
            return hub, tuple(rim)
    return None


def is_induced_wheel(g: Graph, hub: int, rim: Sequence[int]) -> bool:
    """Definitional check: ``rim`` is a chordless cycle fully adjacent to ``hub``."""
    n = len(rim)
    if n < 3 or hub in rim or len(set(rim)) != n:
        return False
    if not all(g.has_edge(hub, v) for v in rim):
        return False
    for i in range(n):
        for j in range(i + 1, n):
            consecutive = j == i + 1 or (i == 0 and j == n - 1)
            if g.has_edge(rim[i], rim[j]) != consecutive:
                return False
    return True
