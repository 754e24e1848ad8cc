"""Asteroidal triples and the three asteroidal-witness gadget families."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from itertools import combinations

from ..errors import PreconditionError
from ..graph import Graph, iter_bits


def _components(adj, region: int) -> list[int]:
    """Connected components of ``g[region]`` as masks."""
    comps = []
    todo = region
    while todo:
        start = todo & -todo
        comp = frontier = start
        while frontier:
            grow = 0
            for v in iter_bits(frontier):
                grow |= adj[v]
            frontier = grow & region & ~comp
            comp |= frontier
        comps.append(comp)
        todo &= ~comp
    return comps


def _component_lookup(g: Graph, within: int) -> dict[int, dict[int, int]]:
    """For each vertex t, map every vertex of g - N[t] to its component mask."""
    table = {}
    for t in iter_bits(within):
        region = within & ~g.adj[t] & ~(1 << t)
        lookup = {}
        for comp in _components(g.adj, region):
            for v in iter_bits(comp):
                lookup[v] = comp
        table[t] = lookup
    return table


def has_at(g: Graph, within: int | None = None) -> tuple[int, int, int] | None:
    """First asteroidal triple ``(a, b, c)`` with a < b < c, or None."""
    if within is None:
        within = g.vertex_mask
    verts = list(iter_bits(within))
    if len(verts) < 3:
        return None
    comp = _component_lookup(g, within)
    adj = g.adj
    for i, a in enumerate(verts):
        for j in range(i + 1, len(verts)):
            b = verts[j]
            if (adj[a] >> b) & 1:
                continue
            for c in verts[j + 1:]:
                if (adj[a] >> c) & 1 or (adj[b] >> c) & 1:
                    continue
                if (
                    (comp[c][a] >> b) & 1
                    and (comp[b][a] >> c) & 1
                    and (comp[a][b] >> c) & 1
                ):
                    return a, b, c
    return None


def _shortest_path(g: Graph, src: int, dst: int, region: int) -> list[int] | None:
    prev = {src: src}
    queue = deque([src])
    while queue:
        v = queue.popleft()
        if v == dst:
            path = [v]
            while path[-1] != src:
                path.append(prev[path[-1]])
            return path[::-1]
        for w in iter_bits(g.adj[v] & region):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    return None


def at_witness_set(g: Graph, triple: tuple[int, int, int], within: int | None = None) -> frozenset[int]:
    """The triple plus one avoiding path per pair; it induces a graph with that AT."""
    if within is None:
        within = g.vertex_mask
    out = set(triple)
    for x, y, z in ((triple[0], triple[1], triple[2]),
                    (triple[0], triple[2], triple[1]),
                    (triple[1], triple[2], triple[0])):
        region = within & ~g.adj[z] & ~(1 << z)
        path = _shortest_path(g, x, y, region)
        if path is None:
            raise PreconditionError(f"{triple} is not an asteroidal triple")
        out.update(path)
    return frozenset(out)


def is_asteroidal_triple(g: Graph, triple) -> bool:
    """Definitional check by BFS on plain neighbour sets."""
    a, b, c = triple
    if len({a, b, c}) != 3:
        return False
    if g.has_edge(a, b) or g.has_edge(a, c) or g.has_edge(b, c):
        return False
    for x, y, z in ((a, b, c), (a, c, b), (b, c, a)):
        avoid = set(g.neighbors(z)) | {z}
        seen = {x}
        queue = deque([x])
        while queue:
            v = queue.popleft()
            for w in g.neighbors(v):
                if w not in avoid and w not in seen:
                    seen.add(w)
                    queue.append(w)
        if y not in seen:
            return False
    return True


def has_at_bruteforce_triples(g: Graph) -> list[tuple[int, int, int]]:
    """Every asteroidal triple, by the definitional check."""
    return [t for t in combinations(range(g.n), 3) if is_asteroidal_triple(g, t)]


AW_KINDS = ("dagger", "double_dagger", "diamond")


@dataclass(frozen=True)
class AsteroidalWitness:
    kind: str
    z: int
    t_l: int
    t_r: int
    t: int
    centers: tuple[int, ...]
    path: tuple[int, ...]

    @property
    def terminals(self) -> tuple[int, int, int]:
        return self.t_l, self.t_r, self.t


def make_aw(kind: str, z: int) -> tuple[Graph, AsteroidalWitness]:
    """Build an asteroidal-witness gadget.

    Ids: ``t_l = 0``, path ``b_1..b_z = 1..z``, ``t_r = z + 1``, top ``t = z + 2``,
    then the centre(s).  The two-centre kinds accept ``z = 1`` as defined, but
    that gadget is degenerate: its single spine vertex touches both ends, so
    it contains no asteroidal triple.  From ``z = 2`` on every kind does.
    """
    if kind not in AW_KINDS:
        raise PreconditionError(f"kind must be one of {AW_KINDS}")
    if z < (2 if kind == "dagger" else 1):
        raise PreconditionError(f"{kind} witnesses need z >= {2 if kind == 'dagger' else 1}")
    t_l, t_r, t = 0, z + 1, z + 2
    path = tuple(range(1, z + 1))
    spine = [(i, i + 1) for i in range(z + 1)]
    if kind == "dagger":
        c = z + 3
        centers = (c,)
        edges = [(t, c)] + [(c, b) for b in path] + spine
    else:
        c1, c2 = z + 3, z + 4
        centers = (c1, c2)
        edges = [(t, c1), (t, c2)] + [(cj, b) for b in path for cj in centers] + spine
        if kind == "double_dagger":
            edges.append((c1, c2))
    g = Graph.from_edges(z + 3 + len(centers), edges)
    return g, AsteroidalWitness(kind, z, t_l, t_r, t, centers, path)
