"""Simple undirected graphs on dense ids, stored as adjacency bitsets.

Vertex ``v`` has neighbourhood ``adj[v]``, an int whose bit ``u`` is set iff
``{u, v}`` is an edge.  Graphs are immutable once built.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import ParseError, PreconditionError


def iter_bits(mask: int) -> Iterator[int]:
    """Yield the positions of set bits in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


class Graph:
    __slots__ = ("n", "adj", "_complement")

    def __init__(self, n: int, adj: Sequence[int]):
        if len(adj) != n:
            raise PreconditionError("adjacency length does not match vertex count")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise PreconditionError(f"vertex {v} has a neighbour out of range")
            if (row >> v) & 1:
                raise PreconditionError(f"self-loop at vertex {v}")
            for u in iter_bits(row):
                if not (adj[u] >> v) & 1:
                    raise PreconditionError(f"asymmetric adjacency between {u} and {v}")
        self.n = n
        self.adj = tuple(adj)
        self._complement: Graph | None = None

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise PreconditionError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(n, adj)

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls(n, [0] * n)

    @classmethod
    def complete(cls, n: int) -> "Graph":
        full = (1 << n) - 1
        return cls(n, [full & ~(1 << v) for v in range(n)])

    @classmethod
    def path(cls, n: int) -> "Graph":
        return cls.from_edges(n, [(i, i + 1) for i in range(n - 1)])

    @classmethod
    def cycle(cls, n: int) -> "Graph":
        if n < 3:
            raise PreconditionError("cycles need at least 3 vertices")
        return cls.from_edges(n, [(i, (i + 1) % n) for i in range(n)])

    @classmethod
    def wheel(cls, n: int) -> "Graph":
        """W_n: rim 0..n-1 in cycle order, hub ``n``."""
        if n < 3:
            raise PreconditionError("wheels need a rim of at least 3 vertices")
        edges = [(i, (i + 1) % n) for i in range(n)] + [(i, n) for i in range(n)]
        return cls.from_edges(n + 1, edges)

    def __len__(self) -> int:
        return self.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count()})"

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def degree(self, v: int) -> int:
        return bin(self.adj[v]).count("1")

    def edges(self) -> list[tuple[int, int]]:
        """All edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def edge_count(self) -> int:
        return sum(bin(row).count("1") for row in self.adj) // 2

    def complement(self) -> "Graph":
        if self._complement is None:
            full = self.vertex_mask
            comp = Graph(self.n, [full & ~row & ~(1 << v) for v, row in enumerate(self.adj)])
            comp._complement = self
            self._complement = comp
        return self._complement

    def induced_subgraph(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Return ``G[S]`` with vertices renumbered in ascending old-id order."""
        keep = sorted(set(vertices))
        for v in keep:
            if not 0 <= v < self.n:
                raise PreconditionError(f"vertex {v} out of range")
        id_map = {old: new for new, old in enumerate(keep)}
        adj = []
        for old in keep:
            row = 0
            for u in iter_bits(self.adj[old]):
                new = id_map.get(u)
                if new is not None:
                    row |= 1 << new
            adj.append(row)
        return Graph(len(keep), adj), id_map

    def delete(self, vertices: Iterable[int]) -> tuple["Graph", dict[int, int]]:
        """Return ``G - S`` together with the old-to-new id map."""
        drop = set(vertices)
        return self.induced_subgraph(v for v in range(self.n) if v not in drop)


def complement(g: Graph) -> Graph:
    return g.complement()


def induced_subgraph(g: Graph, vertices: Iterable[int]) -> tuple[Graph, dict[int, int]]:
    return g.induced_subgraph(vertices)


def verify_vertex_cover(g: Graph, cover: Iterable[int]) -> bool:
    x = to_mask(cover)
    return all((x >> v) & 1 or not (g.adj[v] & ~x) for v in range(g.n))


@dataclass(frozen=True)
class VertexCoverCert:
    cover: frozenset[int]

    def __init__(self, cover: Iterable[int]):
        object.__setattr__(self, "cover", frozenset(cover))

    @classmethod
    def checked(cls, g: Graph, cover: Iterable[int]) -> "VertexCoverCert":
        cert = cls(cover)
        if any(not 0 <= v < g.n for v in cert.cover):
            raise PreconditionError("cover contains an out-of-range vertex")
        if not verify_vertex_cover(g, cert.cover):
            raise PreconditionError("given set is not a vertex cover")
        return cert

    def __len__(self) -> int:
        return len(self.cover)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.cover))


def approx_vertex_cover(g: Graph) -> VertexCoverCert:
    """Endpoints of a greedy maximal matching taken in lexicographic edge order."""
    matched = 0
    for u, v in g.edges():
        if not (matched >> u) & 1 and not (matched >> v) & 1:
            matched |= (1 << u) | (1 << v)
    return VertexCoverCert(iter_bits(matched))


@dataclass(frozen=True)
class DeletionInstance:
    graph: Graph
    cover: VertexCoverCert
    budget: int

    def __post_init__(self):
        if not isinstance(self.cover, VertexCoverCert):
            object.__setattr__(self, "cover", VertexCoverCert(self.cover))
        if any(not 0 <= v < self.graph.n for v in self.cover.cover):
            raise PreconditionError("cover contains an out-of-range vertex")
        if not verify_vertex_cover(self.graph, self.cover.cover):
            raise PreconditionError("instance cover is not a vertex cover of its graph")
        if not 0 <= self.budget <= self.graph.n:
            raise PreconditionError(
                f"budget {self.budget} outside [0, {self.graph.n}]"
            )


def random_planted_instance(
    cover_size: int,
    independent_size: int,
    edge_probabilities: float | tuple[float, float],
    budget: int,
    seed: int | None,
) -> DeletionInstance:
    """Random graph whose first ``cover_size`` ids form a planted vertex cover.

    ``edge_probabilities`` is either one probability for every allowed edge
    or a pair ``(inside_cover, cover_to_independent)``.
    """
    if cover_size < 0 or independent_size < 0:
        raise PreconditionError("sizes must be non-negative")
    if isinstance(edge_probabilities, (int, float)):
        p_in = p_cross = float(edge_probabilities)
    else:
        p_in, p_cross = map(float, edge_probabilities)
    if not (0.0 <= p_in <= 1.0 and 0.0 <= p_cross <= 1.0):
        raise PreconditionError("edge probabilities must lie in [0, 1]")
    rng = random.Random(seed)
    n = cover_size + independent_size
    edges = []
    for u in range(cover_size):
        for v in range(u + 1, n):
            p = p_in if v < cover_size else p_cross
            if rng.random() < p:
                edges.append((u, v))
    g = Graph.from_edges(n, edges)
    return DeletionInstance(g, VertexCoverCert(range(cover_size)), budget)


# -- text formats -----------------------------------------------------------


def _lines(text: str | bytes) -> Iterator[tuple[int, list[str]]]:
    if isinstance(text, bytes):
        text = text.decode()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        yield lineno, line.split()


def _int(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno) from None


def _parse(text: str | bytes, allow_instance: bool):
    n = expected_m = None
    edges: set[tuple[int, int]] = set()
    edge_lines = 0
    cover: list[int] | None = None
    budget: int | None = None
    for lineno, tok in _lines(text):
        kind = tok[0]
        if n is None:
            if kind != "p" or len(tok) != 3:
                raise ParseError("expected header 'p <n> <m>'", lineno)
            n, expected_m = _int(tok[1], lineno), _int(tok[2], lineno)
            if n < 0 or expected_m < 0:
                raise ParseError("header values must be non-negative", lineno)
        elif kind == "p":
            raise ParseError("duplicate header", lineno)
        elif kind == "e":
            if cover is not None or budget is not None:
                raise ParseError("edge line after cover/budget lines", lineno)
            if len(tok) != 3:
                raise ParseError("expected 'e <u> <v>'", lineno)
            u, v = _int(tok[1], lineno), _int(tok[2], lineno)
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"vertex id out of range [0, {n})", lineno)
            if u == v:
                raise ParseError(f"self-loop at vertex {u}", lineno)
            edges.add((min(u, v), max(u, v)))
            edge_lines += 1
        elif allow_instance and kind == "x":
            ids = [_int(t, lineno) for t in tok[1:]]
            if any(not 0 <= v < n for v in ids):
                raise ParseError(f"cover vertex out of range [0, {n})", lineno)
            cover = (cover or []) + ids
        elif allow_instance and kind == "k":
            if len(tok) != 2 or budget is not None:
                raise ParseError("expected a single 'k <budget>' line", lineno)
            budget = _int(tok[1], lineno)
        else:
            raise ParseError(f"unexpected line type {kind!r}", lineno)
    if n is None:
        raise ParseError("missing header 'p <n> <m>'")
    if edge_lines != expected_m:
        raise ParseError(f"header announces {expected_m} edges, found {edge_lines}")
    return Graph.from_edges(n, edges), cover, budget


def parse_graph(text: str | bytes) -> Graph:
    """Parse the ``p``/``e`` edge-list format; duplicate edges collapse."""
    return _parse(text, allow_instance=False)[0]


def parse_cover(text: str | bytes) -> VertexCoverCert:
    if isinstance(text, bytes):
        text = text.decode()
    try:
        return VertexCoverCert(int(t) for t in text.split())
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def parse_instance(text: str | bytes) -> DeletionInstance:
    g, cover, budget = _parse(text, allow_instance=True)
    if budget is None:
        raise ParseError("instance is missing a 'k <budget>' line")
    try:
        return DeletionInstance(g, VertexCoverCert(cover or ()), budget)
    except PreconditionError as exc:
        raise ParseError(str(exc)) from None


def format_graph(g: Graph) -> str:
    edges = g.edges()
    lines = [f"p {g.n} {len(edges)}"] + [f"e {u} {v}" for u, v in edges]
    return "\n".join(lines) + "\n"


def format_instance(inst: DeletionInstance) -> str:
    cover = " ".join(str(v) for v in sorted(inst.cover.cover))
    x_line = f"x {cover}" if cover else "x"
    return format_graph(inst.graph) + f"{x_line}\nk {inst.budget}\n"
